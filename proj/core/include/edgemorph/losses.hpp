#pragma once

#include "edgemorph/types.hpp"

namespace edgemorph {

/// Map plus per-pixel validity (false where a singularity or out-of-bounds
/// sample forced a fallback value).
struct MapWithValidity {
    ScalarMap map;
    BinaryMask valid;
};

struct ImageWithValidity {
    Image3 image;
    BinaryMask valid;
};

/// depth = focal * baseline / disparity. Requires the disparity_px unit tag;
/// disparities <= 1e-6 yield the sentinel focal*baseline/1e-6 and are
/// flagged invalid.
MapWithValidity disparity_to_depth(const ScalarMap& disp, double focal_px, double baseline_m);

/// Inverse of disparity_to_depth; requires the depth_m tag.
MapWithValidity depth_to_disparity(const ScalarMap& depth, double focal_px, double baseline_m);

enum class WarpDirection {
    right_to_left,  // reconstruct the left view: sample src at x - disp(x, y)
    left_to_right,  // reconstruct the right view: sample src at x + disp(x, y)
};

/// Horizontal rectified warp with linear interpolation; out-of-bounds
/// source positions clamp to the border and are flagged.
MapWithValidity warp_horizontal(const ScalarMap& src, const ScalarMap& disp,
                                WarpDirection direction);
ImageWithValidity warp_horizontal(const Image3& src, const ScalarMap& disp,
                                  WarpDirection direction);

/// Per-pixel SSIM with 3x3 mean pooling (replicated border), stabilizers
/// C1 = 0.01^2 and C2 = 0.03^2, averaged over channels. Output in [-1, 1].
ScalarMap ssim_map(const Image3& a, const Image3& b);

/// alpha * (1 - SSIM)/2 + (1 - alpha) * |I - I_rec| (L1 over channel means).
ScalarMap photometric_loss(const Image3& image, const Image3& reconstructed, double alpha);

/// Population variance over the 3x3 neighborhood and all three channels
/// (27 samples, replicated border).
ScalarMap texture_variance(const Image3& image);

/// Texture-gated logistic penalty toward the morphed disparity:
/// Var(I) * log(1 + |disp_star - disp|) where the morphed reconstruction
/// strictly improves the photometric loss, exactly 0 elsewhere.
ScalarMap morph_loss(const ScalarMap& disp, const ScalarMap& disp_star, const Image3& image,
                     const ScalarMap& lr_orig, const ScalarMap& lr_star);

/// log(1 + |disp_proxy - disp|) where the proxy reconstruction strictly
/// improves the photometric loss, exactly 0 elsewhere.
ScalarMap proxy_loss(const ScalarMap& disp, const ScalarMap& disp_proxy,
                     const ScalarMap& lr_orig, const ScalarMap& lr_proxy);

struct LossMaps {
    ScalarMap l_r;
    ScalarMap l_g;
    ScalarMap l_p;
    ScalarMap joint;
    BinaryMask valid;  // complement of the occlusion mask
};

struct JointLoss {
    LossMaps maps;
    double mean = 0.0;
    std::size_t n_valid = 0;
};

/// joint = l_r + lambda2 * l_g + lambda1 * l_p on unmasked pixels, zero on
/// masked ones; the scalar is the mean over unmasked pixels. Throws when
/// every pixel is masked.
JointLoss joint_loss(const ScalarMap& l_r, const ScalarMap& l_g, const ScalarMap& l_p,
                     const BinaryMask& occlusion, double lambda1, double lambda2);

}  // namespace edgemorph
