#include "edgemorph/morph.hpp"

#include <algorithm>
#include <cmath>

namespace edgemorph {

namespace {

struct ActivePair {
    Point2 q;
    Point2 p;
};

// Pairs with q == p have an undefined direction and an identity morph;
// they contribute nothing and are excluded from the blend.
std::vector<ActivePair> usable_pairs(const PairSet& pairs) {
    std::vector<ActivePair> out;
    out.reserve(pairs.size());
    for (const auto& pr : pairs.pairs()) {
        if (pr.q == pr.p) continue;
        out.push_back({pr.q.to_point(), pr.p.to_point()});
    }
    return out;
}

Point2 blend(Point2 x, const std::vector<ActivePair>& pairs, const Thresholds& th) {
    if (pairs.empty()) return x;

    double wsum = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    // Two passes keep the normalization independent of accumulation order.
    thread_local std::vector<double> w_buf;
    thread_local std::vector<double> d_buf;
    w_buf.clear();
    d_buf.clear();
    for (const auto& pr : pairs) {
        const double d = segment_distance(x, pr.q, pr.p) / th.distance_scale;
        const double w = weight_w(d, th.m3, th.m4);
        w_buf.push_back(w);
        d_buf.push_back(d);
        wsum += w;
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double h = weight_h(d_buf[i], th.m1, th.m2);
        if (h == 0.0) continue;
        const Point2 phi = point_morph(x, pairs[i].q, pairs[i].p, th.t);
        const double c = (w_buf[i] / wsum) * h;
        dx += c * (phi.x - x.x);
        dy += c * (phi.y - x.y);
    }
    return {x.x + dx, x.y + dy};
}

}  // namespace

Point2 project_onto_pair(Point2 x, Point2 q, Point2 p) {
    const Point2 dir = p - q;
    const double len_sq = dot(dir, dir);
    if (len_sq == 0.0) throw Error("degenerate pair: q == p");
    const double s = dot(x - q, dir) / len_sq;
    return q + s * dir;
}

Point2 point_morph(Point2 x, Point2 q, Point2 p, double t) {
    if (!(t > 0.0)) throw Error("morph parameter t must be > 0");
    const Point2 xp = project_onto_pair(x, q, p);
    const double c = 1.0 / (1.0 + t);
    return x + (p - q) - c * (xp - q);
}

double weight_h(double d, double m1, double m2) {
    // Sigmoid(-m1 * (d - m2)); saturates cleanly at 0 and 1.
    return 1.0 / (1.0 + std::exp(m1 * (d - m2)));
}

double weight_w(double d, double m3, double m4) {
    return std::pow(1.0 / (m3 + d), m4);
}

double segment_distance(Point2 x, Point2 q, Point2 p) {
    const Point2 dir = p - q;
    const double len_sq = dot(dir, dir);
    double s = 0.0;
    if (len_sq > 0.0) s = std::clamp(dot(x - q, dir) / len_sq, 0.0, 1.0);
    const Point2 closest = q + s * dir;
    return norm(x - closest);
}

std::vector<double> blend_weights(Point2 x, const PairSet& pairs, const Thresholds& th) {
    require_valid(th);
    const auto active = usable_pairs(pairs);
    std::vector<double> w(active.size());
    double wsum = 0.0;
    for (std::size_t i = 0; i < active.size(); ++i) {
        const double d = segment_distance(x, active[i].q, active[i].p) / th.distance_scale;
        w[i] = weight_w(d, th.m3, th.m4);
        wsum += w[i];
    }
    for (double& v : w) v /= wsum;
    return w;
}

Point2 blended_morph(Point2 x, const PairSet& pairs, const Thresholds& th) {
    require_valid(th);
    return blend(x, usable_pairs(pairs), th);
}

MorphField::MorphField(int width, int height, std::vector<Point2> sample_at)
    : width_(width), height_(height), sample_at_(std::move(sample_at)) {
    if (width < 1 || height < 1) throw Error("morph field needs positive dimensions");
    if (sample_at_.size() != std::size_t(width) * height) {
        throw Error("morph field payload size does not match dimensions");
    }
    for (const auto& p : sample_at_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error("non-finite morph field coordinate");
        }
    }
}

MorphField MorphField::identity(int width, int height) {
    std::vector<Point2> coords(std::size_t(width) * height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            coords[std::size_t(y) * width + x] = {double(x), double(y)};
        }
    }
    return MorphField(width, height, std::move(coords));
}

MorphField compute_morph_field(int width, int height, const PairSet& pairs,
                               const Thresholds& th) {
    require_valid(th);
    const auto active = usable_pairs(pairs);
    if (active.empty()) return MorphField::identity(width, height);

    std::vector<Point2> coords(std::size_t(width) * height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            coords[std::size_t(y) * width + x] = blend({double(x), double(y)}, active, th);
        }
    }
    return MorphField(width, height, std::move(coords));
}

double bilinear_sample(const ScalarMap& map, double x, double y) {
    const int w = map.width();
    const int h = map.height();
    x = std::clamp(x, 0.0, double(w - 1));
    y = std::clamp(y, 0.0, double(h - 1));
    const int x0 = int(x);
    const int y0 = int(y);
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double top = map.at(x0, y0) + fx * (double(map.at(x1, y0)) - map.at(x0, y0));
    const double bot = map.at(x0, y1) + fx * (double(map.at(x1, y1)) - map.at(x0, y1));
    return top + fy * (bot - top);
}

ScalarMap apply_morph_field(const ScalarMap& src, const MorphField& field) {
    if (src.width() != field.width() || src.height() != field.height()) {
        throw Error("morph field shape does not match map");
    }
    ScalarMap out(src.width(), src.height(), 0.0f, src.unit());
    for (int y = 0; y < src.height(); ++y) {
        for (int x = 0; x < src.width(); ++x) {
            const Point2 s = field.sample_at(x, y);
            out.set(x, y, float(bilinear_sample(src, s.x, s.y)));
        }
    }
    return out;
}

ScalarMap morph_disparity(const ScalarMap& disp, const PairSet& pairs, const Thresholds& th) {
    require_valid(th);
    if (disp.width() != pairs.width() || disp.height() != pairs.height()) {
        throw Error("pair set shape does not match disparity map");
    }
    if (usable_pairs(pairs).empty()) return disp;
    const MorphField field = compute_morph_field(disp.width(), disp.height(), pairs, th);
    return apply_morph_field(disp, field);
}

OptimalityReport check_local_optimality(const ScalarMap& disp, const BinaryMask& seg,
                                        const Thresholds& th) {
    require_valid(th);
    if (disp.width() != seg.width() || disp.height() != seg.height()) {
        throw Error("segmentation shape does not match disparity map");
    }

    const EdgeSet seg_edges = edges_from_mask(seg, th.k1);
    const EdgeSet depth_edges = extract_edges(disp, th.k1);

    OptimalityReport report;
    report.lc_before = consistency(seg_edges, depth_edges, th.k2);

    const PairSet pairs = associate_edges(seg_edges, depth_edges, th.k2);
    report.n_pairs = pairs.size();

    const ScalarMap morphed = morph_disparity(disp, pairs, th);
    const double relaxed_k1 = th.t / (1.0 + th.t) * th.k1;
    const EdgeSet morphed_edges = extract_edges(morphed, relaxed_k1);
    report.lc_after = consistency(seg_edges, morphed_edges, th.k2);

    const ScalarMap grad_orig = gradient_magnitude(disp);
    const ScalarMap grad_morphed = gradient_magnitude(morphed);
    for (const auto& pr : pairs.pairs()) {
        const double go = grad_orig.at(pr.p.x, pr.p.y);
        if (go > 0.0) {
            report.gradient_ratios.push_back(double(grad_morphed.at(pr.q.x, pr.q.y)) / go);
        }
    }
    return report;
}

}  // namespace edgemorph
