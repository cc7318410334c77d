#include "edgemorph/eval.hpp"

#include <algorithm>
#include <cmath>

namespace edgemorph {

namespace {

constexpr double kPredFloor = 1e-3;

void check_depth_inputs(const ScalarMap& pred, const ScalarMap& gt, double cap) {
    if (!pred.same_shape(gt)) throw Error("depth metrics: shapes do not match");
    if (pred.unit() != Unit::depth_m || gt.unit() != Unit::depth_m) {
        throw Error("depth metrics: maps must carry the depth_m unit");
    }
    if (!(cap > 0.0)) throw Error("depth cap must be > 0");
}

bool gt_valid(double g, double cap) { return g > 0.0 && g <= cap; }

}  // namespace

CropRect garg_crop(int width, int height) {
    return CropRect{int(0.03594771 * width), int(0.40810811 * height),
                    int(0.96405229 * width), int(0.99189189 * height)};
}

CropRect crop_rect(Crop crop, int width, int height) {
    if (crop == Crop::garg) return garg_crop(width, height);
    return CropRect{0, 0, width, height};
}

MetricRow depth_metrics(const ScalarMap& pred, const ScalarMap& gt, double cap, Crop crop,
                        const BinaryMask* mask, const std::string& name) {
    check_depth_inputs(pred, gt, cap);
    if (mask && (mask->width() != gt.width() || mask->height() != gt.height())) {
        throw Error("depth metrics: mask shape does not match");
    }

    const CropRect rect = crop_rect(crop, gt.width(), gt.height());
    double abs_rel = 0.0, sq_rel = 0.0, sq_err = 0.0, sq_log_err = 0.0;
    std::size_t n = 0, n1 = 0, n2 = 0, n3 = 0;

    for (int y = rect.y0; y < rect.y1; ++y) {
        for (int x = rect.x0; x < rect.x1; ++x) {
            const double g = gt.at(x, y);
            if (!gt_valid(g, cap)) continue;
            if (mask && !mask->at(x, y)) continue;
            const double p = std::clamp(double(pred.at(x, y)), kPredFloor, cap);

            const double diff = p - g;
            abs_rel += std::abs(diff) / g;
            sq_rel += diff * diff / g;
            sq_err += diff * diff;
            const double log_diff = std::log(p) - std::log(g);
            sq_log_err += log_diff * log_diff;
            const double ratio = std::max(p / g, g / p);
            if (ratio < 1.25) ++n1;
            if (ratio < 1.5625) ++n2;
            if (ratio < 1.953125) ++n3;
            ++n;
        }
    }
    if (n == 0) throw Error("no valid pixels for depth metrics");

    const double dn = double(n);
    MetricRow row;
    row.name = name;
    row.abs_rel = abs_rel / dn;
    row.sq_rel = sq_rel / dn;
    row.rmse = std::sqrt(sq_err / dn);
    row.rmse_log = std::sqrt(sq_log_err / dn);
    row.d1 = double(n1) / dn;
    row.d2 = double(n2) / dn;
    row.d3 = double(n3) / dn;
    return row;
}

RegionMetrics region_split_metrics(const ScalarMap& pred, const ScalarMap& gt,
                                   const EdgeSet& seg_edges, const RegionSplit& split,
                                   double cap, Crop crop) {
    check_depth_inputs(pred, gt, cap);
    if (!(split.near_band_px > 0.0)) throw Error("near band must be > 0");
    if (seg_edges.width() != gt.width() || seg_edges.height() != gt.height()) {
        throw Error("region split: edge set shape does not match");
    }

    RegionMetrics out;
    auto try_row = [&](const BinaryMask* mask, const char* name) -> std::optional<MetricRow> {
        try {
            return depth_metrics(pred, gt, cap, crop, mask, name);
        } catch (const Error&) {
            return std::nullopt;
        }
    };

    out.whole = try_row(nullptr, "W");
    if (seg_edges.empty()) {
        out.off_edge = out.whole;
        if (out.off_edge) out.off_edge->name = "O";
        return out;
    }

    const ScalarMap dist = distance_transform(seg_edges);
    BinaryMask near_mask(gt.width(), gt.height());
    BinaryMask off_mask(gt.width(), gt.height());
    for (int y = 0; y < gt.height(); ++y) {
        for (int x = 0; x < gt.width(); ++x) {
            const bool near = double(dist.at(x, y)) <= split.near_band_px;
            near_mask.set(x, y, near);
            off_mask.set(x, y, !near);
        }
    }
    out.off_edge = try_row(&off_mask, "O");
    out.near_edge = try_row(&near_mask, "N");
    return out;
}

std::vector<DeltaProfileBin> delta_profile(const ScalarMap& pred, const ScalarMap& gt,
                                           const EdgeSet& seg_edges, const BinaryMask& seg,
                                           int min_offset, int max_offset, double cap,
                                           Crop crop) {
    check_depth_inputs(pred, gt, cap);
    if (seg.width() != gt.width() || seg.height() != gt.height()) {
        throw Error("delta profile: segmentation shape does not match");
    }
    if (min_offset > max_offset) throw Error("delta profile: empty offset range");

    const ScalarMap dist = distance_transform(seg_edges);  // throws on empty edge set
    const CropRect rect = crop_rect(crop, gt.width(), gt.height());

    const std::size_t n_bins = std::size_t(max_offset - min_offset) + 1;
    std::vector<std::size_t> count(n_bins, 0);
    std::vector<std::size_t> hits(n_bins, 0);

    for (int y = rect.y0; y < rect.y1; ++y) {
        for (int x = rect.x0; x < rect.x1; ++x) {
            const double g = gt.at(x, y);
            if (!gt_valid(g, cap)) continue;
            const double d = dist.at(x, y);
            const double signed_d = seg.at(x, y) ? d : -d;
            const long bin = std::lround(signed_d);
            if (bin < min_offset || bin > max_offset) continue;
            const std::size_t idx = std::size_t(bin - min_offset);

            const double p = std::clamp(double(pred.at(x, y)), kPredFloor, cap);
            const double ratio = std::max(p / g, g / p);
            ++count[idx];
            if (ratio < 1.25) ++hits[idx];
        }
    }

    std::vector<DeltaProfileBin> out;
    for (std::size_t i = 0; i < n_bins; ++i) {
        if (count[i] == 0) continue;
        out.push_back({min_offset + int(i), count[i], double(hits[i]) / double(count[i])});
    }
    return out;
}

long edge_count(const ScalarMap& disp, double k1) {
    if (!(k1 > 0.0)) throw Error("edge threshold k1 must be > 0");
    const ScalarMap grad = gradient_magnitude(disp);
    long n = 0;
    for (float v : grad.data()) {
        if (double(v) > k1) ++n;
    }
    return n;
}

double median_scale_factor(const ScalarMap& pred, const ScalarMap& gt, double cap, Crop crop) {
    check_depth_inputs(pred, gt, cap);
    const CropRect rect = crop_rect(crop, gt.width(), gt.height());
    std::vector<double> ps, gs;
    for (int y = rect.y0; y < rect.y1; ++y) {
        for (int x = rect.x0; x < rect.x1; ++x) {
            const double g = gt.at(x, y);
            if (!gt_valid(g, cap)) continue;
            gs.push_back(g);
            ps.push_back(pred.at(x, y));
        }
    }
    if (gs.empty()) throw Error("no valid pixels for median scaling");
    auto median = [](std::vector<double>& v) {
        const std::size_t mid = v.size() / 2;
        std::nth_element(v.begin(), v.begin() + long(mid), v.end());
        return v[mid];
    };
    const double mp = median(ps);
    if (mp == 0.0) throw Error("median prediction is zero");
    return median(gs) / mp;
}

ScalarMap scale_map(const ScalarMap& map, double factor) {
    if (!std::isfinite(factor)) throw Error("scale factor must be finite");
    ScalarMap out(map.width(), map.height(), 0.0f, map.unit());
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            out.set(x, y, float(factor * map.at(x, y)));
        }
    }
    return out;
}

}  // namespace edgemorph
