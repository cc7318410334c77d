#include "edgemorph/edges.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace edgemorph {

namespace {

void check_shape(int width, int height) {
    if (width < 1 || height < 1) throw Error("edge set needs positive dimensions");
}

std::int64_t squared_distance(PixelCoord a, PixelCoord b) {
    const std::int64_t dx = a.x - b.x;
    const std::int64_t dy = a.y - b.y;
    return dx * dx + dy * dy;
}

}  // namespace

EdgeSet::EdgeSet(int width, int height) : width_(width), height_(height) {
    check_shape(width, height);
}

EdgeSet EdgeSet::from_points(int width, int height, std::vector<PixelCoord> points) {
    check_shape(width, height);
    for (const auto& p : points) {
        if (p.x < 0 || p.y < 0 || p.x >= width || p.y >= height) {
            throw Error("edge point out of bounds");
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    EdgeSet set(width, height);
    set.points_ = std::move(points);
    return set;
}

bool EdgeSet::contains(PixelCoord p) const {
    return std::binary_search(points_.begin(), points_.end(), p);
}

BinaryMask EdgeSet::to_mask() const {
    BinaryMask mask(width_, height_);
    for (const auto& p : points_) mask.set(p.x, p.y, true);
    return mask;
}

EdgeSet EdgeSet::from_mask(const BinaryMask& mask) {
    std::vector<PixelCoord> points;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (mask.at(x, y)) points.push_back({x, y});
        }
    }
    return from_points(mask.width(), mask.height(), std::move(points));
}

PairSet::PairSet(int width, int height, double k2, std::vector<EdgePair> pairs)
    : width_(width), height_(height), k2_(k2), pairs_(std::move(pairs)) {
    check_shape(width, height);
}

ScalarMap gradient_magnitude(const ScalarMap& map) {
    const int w = map.width();
    const int h = map.height();
    if (w < 2 || h < 2) throw Error("gradient needs at least a 2x2 map");

    ScalarMap out(w, h, 0.0f, Unit::unitless);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double gx;
            if (x == 0) {
                gx = double(map.at(1, y)) - map.at(0, y);
            } else if (x == w - 1) {
                gx = double(map.at(w - 1, y)) - map.at(w - 2, y);
            } else {
                gx = (double(map.at(x + 1, y)) - map.at(x - 1, y)) * 0.5;
            }
            double gy;
            if (y == 0) {
                gy = double(map.at(x, 1)) - map.at(x, 0);
            } else if (y == h - 1) {
                gy = double(map.at(x, h - 1)) - map.at(x, h - 2);
            } else {
                gy = (double(map.at(x, y + 1)) - map.at(x, y - 1)) * 0.5;
            }
            out.set(x, y, float(std::hypot(gx, gy)));
        }
    }
    return out;
}

EdgeSet extract_edges(const ScalarMap& map, double k1) {
    if (!(k1 > 0.0)) throw Error("edge threshold k1 must be > 0");
    const ScalarMap grad = gradient_magnitude(map);
    std::vector<PixelCoord> points;
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            if (double(grad.at(x, y)) > k1) points.push_back({x, y});
        }
    }
    return EdgeSet::from_points(map.width(), map.height(), std::move(points));
}

EdgeSet edges_from_mask(const BinaryMask& mask, double k1) {
    return extract_edges(map_from_mask(mask), k1);
}

namespace {

// 1D squared-distance lower envelope (per-row pass of the two-pass exact
// EDT). f holds source costs; d receives min_v (q - v)^2 + f[v].
void edt_1d(const double* f, double* d, int n, std::vector<int>& v, std::vector<double>& z) {
    v.assign(std::size_t(n), 0);
    z.assign(std::size_t(n) + 1, 0.0);
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s = 0.0;
        while (true) {
            const int p = v[std::size_t(k)];
            s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * q - 2.0 * p);
            if (s <= z[std::size_t(k)]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[std::size_t(k)] = q;
        z[std::size_t(k)] = s;
        z[std::size_t(k) + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[std::size_t(k) + 1] < q) ++k;
        const int p = v[std::size_t(k)];
        d[q] = double(q - p) * (q - p) + f[p];
    }
}

}  // namespace

ScalarMap distance_transform(const EdgeSet& edges) {
    if (edges.empty()) throw Error("no edges: distance transform undefined");
    const int w = edges.width();
    const int h = edges.height();

    // Columns with no edge point carry a cost far beyond any in-image
    // squared distance, standing in for infinity without NaN hazards.
    const double kFar = 4.0e15;

    // Vertical pass: squared distance to the nearest edge row per column.
    std::vector<double> colsq(std::size_t(w) * h, kFar);
    const BinaryMask mask = edges.to_mask();
    for (int x = 0; x < w; ++x) {
        double run = kFar;
        for (int y = 0; y < h; ++y) {
            run = mask.at(x, y) ? 0.0 : (run >= kFar ? kFar : run + 1.0);
            colsq[std::size_t(y) * w + x] = run;
        }
        run = kFar;
        for (int y = h - 1; y >= 0; --y) {
            run = mask.at(x, y) ? 0.0 : (run >= kFar ? kFar : run + 1.0);
            colsq[std::size_t(y) * w + x] = std::min(colsq[std::size_t(y) * w + x], run);
        }
    }
    for (double& v : colsq) {
        if (v < kFar) v = v * v;
    }

    ScalarMap out(w, h, 0.0f, Unit::unitless);
    std::vector<double> f(static_cast<std::size_t>(w));
    std::vector<double> d(static_cast<std::size_t>(w));
    std::vector<int> vbuf;
    std::vector<double> zbuf;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) f[std::size_t(x)] = colsq[std::size_t(y) * w + x];
        edt_1d(f.data(), d.data(), w, vbuf, zbuf);
        for (int x = 0; x < w; ++x) out.set(x, y, float(std::sqrt(d[std::size_t(x)])));
    }
    return out;
}

NearestEdge nearest_edge(PixelCoord q, const EdgeSet& edges) {
    if (edges.empty()) throw Error("no edges: nearest edge undefined");
    PixelCoord best = edges.points()[0];
    std::int64_t best_sq = squared_distance(q, best);
    for (const auto& p : edges.points()) {
        const std::int64_t sq = squared_distance(q, p);
        if (sq < best_sq) {
            best_sq = sq;
            best = p;
        }
    }
    return {best, std::sqrt(double(best_sq))};
}

PairSet associate_edges(const EdgeSet& seg_edges, const EdgeSet& depth_edges, double k2) {
    if (!seg_edges.same_shape(depth_edges)) throw Error("edge sets must share one shape");
    if (!(k2 > 0.0)) throw Error("association radius k2 must be > 0");

    std::vector<EdgePair> out;
    if (depth_edges.empty()) {
        return PairSet(seg_edges.width(), seg_edges.height(), k2, std::move(out));
    }

    // Row index over the (y, x)-sorted depth points: only rows within k2 can
    // pass the gate, and scanning them in order preserves the tie-break.
    const auto pts = depth_edges.points();
    const int h = depth_edges.height();
    std::vector<std::size_t> row_begin(std::size_t(h) + 1, pts.size());
    {
        std::size_t i = 0;
        for (int y = 0; y <= h; ++y) {
            while (i < pts.size() && pts[i].y < y) ++i;
            row_begin[std::size_t(y)] = i;
        }
    }
    const std::int64_t gate_num = std::int64_t(std::ceil(k2 * k2));  // cheap row cutoff
    const double k2_sq = k2 * k2;
    const int dy_max = int(std::ceil(k2));

    for (const auto& q : seg_edges.points()) {
        const int y_lo = std::max(0, q.y - dy_max);
        const int y_hi = std::min(h - 1, q.y + dy_max);
        std::int64_t best_sq = std::numeric_limits<std::int64_t>::max();
        PixelCoord best{};
        for (int y = y_lo; y <= y_hi; ++y) {
            const std::int64_t dy = y - q.y;
            if (dy * dy > gate_num) continue;
            for (std::size_t i = row_begin[std::size_t(y)]; i < row_begin[std::size_t(y) + 1];
                 ++i) {
                const std::int64_t sq = squared_distance(q, pts[i]);
                if (sq < best_sq) {
                    best_sq = sq;
                    best = pts[i];
                }
            }
        }
        if (best_sq != std::numeric_limits<std::int64_t>::max() && double(best_sq) < k2_sq) {
            out.push_back({q, best, std::sqrt(double(best_sq))});
        }
    }
    return PairSet(seg_edges.width(), seg_edges.height(), k2, std::move(out));
}

double consistency(const EdgeSet& seg_edges, const EdgeSet& depth_edges, double k2) {
    const PairSet pairs = associate_edges(seg_edges, depth_edges, k2);
    if (pairs.empty()) throw Error("no associated edges: consistency undefined");
    double sum = 0.0;
    for (const auto& pr : pairs.pairs()) sum += pr.distance;
    return sum / double(pairs.size());
}

}  // namespace edgemorph
