#pragma once

#include <vector>

#include "edgemorph/types.hpp"

namespace edgemorph {

/// Set of edge pixel coordinates of one map. Points are kept sorted by
/// (y, x), unique and in-bounds.
class EdgeSet {
public:
    EdgeSet(int width, int height);
    static EdgeSet from_points(int width, int height, std::vector<PixelCoord> points);

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return points_.empty(); }
    std::size_t size() const { return points_.size(); }

    std::span<const PixelCoord> points() const { return points_; }
    bool contains(PixelCoord p) const;

    BinaryMask to_mask() const;
    static EdgeSet from_mask(const BinaryMask& mask);

    bool same_shape(const EdgeSet& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    int width_;
    int height_;
    std::vector<PixelCoord> points_;  // sorted by (y, x)
};

/// One association: segmentation edge point q matched to its nearest depth
/// edge point p, with the Euclidean distance at association time.
struct EdgePair {
    PixelCoord q;
    PixelCoord p;
    double distance = 0.0;
};

/// Ordered list of associations; every q appears at most once and each
/// distance was strictly below the k2 used at construction.
class PairSet {
public:
    PairSet(int width, int height, double k2, std::vector<EdgePair> pairs);

    int width() const { return width_; }
    int height() const { return height_; }
    double k2() const { return k2_; }
    bool empty() const { return pairs_.empty(); }
    std::size_t size() const { return pairs_.size(); }
    std::span<const EdgePair> pairs() const { return pairs_; }

private:
    int width_;
    int height_;
    double k2_;
    std::vector<EdgePair> pairs_;
};

/// Per-pixel L2 norm of the 2D gradient: central differences in the
/// interior, one-sided on the border. Requires both dimensions >= 2.
ScalarMap gradient_magnitude(const ScalarMap& map);

/// Pixels whose gradient magnitude strictly exceeds k1.
EdgeSet extract_edges(const ScalarMap& map, double k1);

/// Edges of a binary mask, via its 0/1 float lift.
EdgeSet edges_from_mask(const BinaryMask& mask, double k1);

/// Exact Euclidean distance to the nearest edge point at every pixel.
/// Matches the brute-force minimum bit-for-bit. Throws on an empty set.
ScalarMap distance_transform(const EdgeSet& edges);

struct NearestEdge {
    PixelCoord p;
    double distance = 0.0;
};

/// Closest edge point to q; ties broken by smallest y, then smallest x.
NearestEdge nearest_edge(PixelCoord q, const EdgeSet& edges);

/// For each q in seg_edges whose nearest depth-edge distance is strictly
/// below k2, emits (q, nearest point). An empty depth set yields an empty
/// pair set, not an error.
PairSet associate_edges(const EdgeSet& seg_edges, const EdgeSet& depth_edges, double k2);

/// Mean associated distance; in [0, k2) whenever defined. Throws
/// "no associated edges" when the gated set is empty. Asymmetric in its
/// arguments by construction.
double consistency(const EdgeSet& seg_edges, const EdgeSet& depth_edges, double k2);

}  // namespace edgemorph
