#pragma once

#include <vector>

#include "edgemorph/edges.hpp"
#include "edgemorph/types.hpp"

namespace edgemorph {

/// Projection of x onto the line through q and p. Throws on q == p.
Point2 project_onto_pair(Point2 x, Point2 q, Point2 p);

/// Single-pair point morph: x* = x + (p - q) - (x' - q) / (1 + t), with x'
/// the projection of x onto the pair line. Maps q to p exactly; t controls
/// how the neighborhood is compressed along the pair direction.
Point2 point_morph(Point2 x, Point2 q, Point2 p, double t);

/// Absolute locality weight: logistic falloff in d, 0.5 at d = m2.
double weight_h(double d, double m1, double m2);

/// Relative pair weight: (1 / (m3 + d))^m4, positive and decreasing.
double weight_w(double d, double m3, double m4);

/// Euclidean distance from x to the closed segment [q, p]; point distance
/// when q == p.
double segment_distance(Point2 x, Point2 q, Point2 p);

/// Normalized relative weights w_i / sum_j w_j of the non-degenerate pairs
/// at x (segment distances divided by th.distance_scale). Empty when no
/// usable pair exists. The weights sum to 1.
std::vector<double> blend_weights(Point2 x, const PairSet& pairs, const Thresholds& th);

/// Distance-weighted blend of all single-pair morphs:
///   g(x) = x + sum_i [w_i / sum_j w_j] * h_i * (phi_i(x) - x).
/// Degenerate pairs (q == p) drop out; with no usable pairs g is the
/// identity. Far from every pair h underflows and g returns x exactly.
Point2 blended_morph(Point2 x, const PairSet& pairs, const Thresholds& th);

/// Per-pixel source coordinates for resampling a map through the blended
/// morph. Identity wherever every pair is beyond the locality horizon.
class MorphField {
public:
    MorphField(int width, int height, std::vector<Point2> sample_at);
    static MorphField identity(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    Point2 sample_at(int x, int y) const { return sample_at_[std::size_t(y) * width_ + x]; }

private:
    int width_;
    int height_;
    std::vector<Point2> sample_at_;
};

MorphField compute_morph_field(int width, int height, const PairSet& pairs,
                               const Thresholds& th);

/// Bilinear sample with border clamp; exact at integer coordinates.
double bilinear_sample(const ScalarMap& map, double x, double y);

/// Resamples src through the field with bilinear interpolation, clamping
/// out-of-bounds source coordinates to the border.
ScalarMap apply_morph_field(const ScalarMap& src, const MorphField& field);

/// Segmentation-augmented disparity: disp resampled through the blended
/// morph of the associated pairs. An empty (or all-degenerate) pair set
/// returns a bit-identical copy.
ScalarMap morph_disparity(const ScalarMap& disp, const PairSet& pairs, const Thresholds& th);

/// Result of one extract/associate/morph round: consistency before, and
/// after against the morphed map's edges at the relaxed threshold
/// t/(1+t) * k1, plus per-pair ratios of the morphed gradient at q to the
/// original gradient at p (the analytic value is t/(1+t)).
struct OptimalityReport {
    double lc_before = 0.0;
    double lc_after = 0.0;
    std::size_t n_pairs = 0;
    std::vector<double> gradient_ratios;
};

OptimalityReport check_local_optimality(const ScalarMap& disp, const BinaryMask& seg,
                                        const Thresholds& th);

}  // namespace edgemorph
