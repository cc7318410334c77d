#pragma once

#include <cstdint>
#include <vector>

#include "edgemorph/types.hpp"

namespace edgemorph {

enum class TextureKind { ramp, checker, noise };

struct Texture {
    TextureKind kind = TextureKind::checker;
    int period = 8;           // checker cell size
    double amplitude = 0.5;   // checker contrast / noise amplitude
    std::uint64_t seed = 0;   // noise lattice seed
};

enum class ShapeKind { rect, ellipse };

/// Fronto-parallel object: constant disparity over a rect or inscribed
/// ellipse of the bbox [x0, x1) x [y0, y1).
struct Shape {
    ShapeKind kind = ShapeKind::rect;
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    double disp = 0.0;  // pixel disparity; must exceed the background's
};

struct SceneSpec {
    int width = 0;
    int height = 0;
    double background_disp = 0.0;
    std::vector<Shape> shapes;
    Texture texture;
    std::uint64_t seed = 0;
};

/// Throws listing the first violated constraint.
void validate_scene(const SceneSpec& spec);

struct Fixture {
    Image3 left;
    Image3 right;
    ScalarMap disp_gt;      // disparity_px
    BinaryMask seg_gt;      // union of shapes
    BinaryMask occluded_gt; // geometric occlusion reference of disp_gt
};

/// Renders a rectified stereo pair with exact ground truth. The right view
/// is the z-ordered forward projection (larger disparity wins); pixels with
/// no object cover show background texture. Deterministic in the seed.
Fixture generate(const SceneSpec& spec);

/// Manufactures border misalignment: disparity values of the seg-foreground
/// bleed outward by offset_px (inward for negative offsets), and with
/// bleed_px > 0 the step is replaced by a linear fade over bleed_px columns.
/// The segmentation itself is untouched. offset 0 / bleed 0 is the identity.
ScalarMap perturb_edges(const ScalarMap& disp, const BinaryMask& seg, int offset_px,
                        int bleed_px, std::uint64_t seed);

}  // namespace edgemorph
