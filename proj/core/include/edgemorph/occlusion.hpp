#pragma once

#include <limits>

#include "edgemorph/types.hpp"

namespace edgemorph {

enum class View { left, right };

/// Parameters of the one-directional occlusion scan. search_width truncates
/// the scan (the image border always does); k3 trades mask thickness
/// against tolerance to disparity noise, in the units of the input map.
struct OcclusionParams {
    int search_width = std::numeric_limits<int>::max();
    double k3 = 0.05;
    View view = View::left;
};

/// Marks pixels whose stereo counterpart is covered by a closer surface:
/// for the left view, (x, y) is masked iff some step i in
/// [1, min(search_width, width-1-x)] satisfies
///   disp(x+i, y) - disp(x, y) - i >= k3.
/// The right view mirrors the scan direction. Pixels with no valid step are
/// unmasked.
BinaryMask occlusion_mask(const ScalarMap& disp, const OcclusionParams& params);

/// Geometric reference: forward-warps every left pixel to x - disp(x) at
/// quarter-pixel quantization and marks a pixel occluded iff a strictly
/// closer pixel to its right lands on or crosses its warped position.
/// Agrees with occlusion_mask at k3 = 0 on quarter-lattice disparities.
BinaryMask brute_force_occlusion(const ScalarMap& disp);

}  // namespace edgemorph
