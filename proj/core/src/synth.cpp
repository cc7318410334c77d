#include "edgemorph/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "edgemorph/occlusion.hpp"

namespace edgemorph {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double hash01(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    std::uint64_t h = splitmix64(a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    h = splitmix64(h ^ d);
    return double(h >> 11) * 0x1.0p-53;
}

bool covers(const Shape& s, double u, double y) {
    if (s.kind == ShapeKind::rect) {
        return u >= s.x0 && u < s.x1 && y >= s.y0 && y < s.y1;
    }
    const double cx = 0.5 * (s.x0 + s.x1);
    const double cy = 0.5 * (s.y0 + s.y1);
    const double rx = 0.5 * (s.x1 - s.x0);
    const double ry = 0.5 * (s.y1 - s.y0);
    const double nx = (u - cx) / rx;
    const double ny = (y - cy) / ry;
    return nx * nx + ny * ny <= 1.0;
}

class TextureSampler {
public:
    TextureSampler(const SceneSpec& spec) : spec_(spec) {}

    // Continuous in the scene coordinate u; surface -1 is the background.
    double sample(int surface, double u, double y, int channel) const {
        const Texture& tx = spec_.texture;
        double v = 0.5;
        switch (tx.kind) {
            case TextureKind::ramp: {
                const double su = u / std::max(1, spec_.width - 1);
                const double sy = y / std::max(1, spec_.height - 1);
                if (channel == 0) v = 0.25 + 0.5 * su;
                else if (channel == 1) v = 0.25 + 0.5 * sy;
                else v = 0.65 - 0.25 * su;
                break;
            }
            case TextureKind::checker: {
                const long cell = long(std::floor(u / tx.period)) +
                                  long(std::floor(y / tx.period)) + channel;
                const double sign = (cell & 1) ? -1.0 : 1.0;
                v = 0.5 + sign * 0.5 * tx.amplitude;
                break;
            }
            case TextureKind::noise: {
                const double fu = std::floor(u);
                const double f = u - fu;
                const auto iy = std::uint64_t(std::int64_t(y));
                const auto iu = std::uint64_t(std::int64_t(fu));
                const double a = hash01(iu, iy, std::uint64_t(channel), tx.seed);
                const double b = hash01(iu + 1, iy, std::uint64_t(channel), tx.seed);
                v = 0.5 + tx.amplitude * (a + f * (b - a) - 0.5);
                break;
            }
        }
        if (surface >= 0) {
            v += 0.2 * (hash01(std::uint64_t(surface) + 1, 0x5eedull, std::uint64_t(channel),
                               spec_.seed) -
                        0.5);
        }
        return std::clamp(v, 0.0, 1.0);
    }

private:
    const SceneSpec& spec_;
};

// Visible surface at integer left pixel (x, y): index into shapes, or -1.
// Errors when two shapes tie for the top disparity.
int top_surface(const SceneSpec& spec, int x, int y) {
    int owner = -1;
    double best = spec.background_disp;
    int ties = 0;
    for (std::size_t i = 0; i < spec.shapes.size(); ++i) {
        const Shape& s = spec.shapes[i];
        if (!covers(s, double(x), double(y))) continue;
        if (owner < 0 || s.disp > best) {
            owner = int(i);
            best = s.disp;
            ties = 1;
        } else if (s.disp == best) {
            ++ties;
        }
    }
    if (owner >= 0 && ties > 1) {
        std::ostringstream oss;
        oss << "ambiguous z-order: overlapping shapes share disparity " << best << " at ("
            << x << ", " << y << ")";
        throw Error(oss.str());
    }
    return owner;
}

}  // namespace

void validate_scene(const SceneSpec& spec) {
    if (spec.width < 1 || spec.height < 1) throw Error("scene dimensions must be positive");
    if (!std::isfinite(spec.background_disp) || spec.background_disp < 0.0) {
        throw Error("background disparity must be finite and >= 0");
    }
    for (std::size_t i = 0; i < spec.shapes.size(); ++i) {
        const Shape& s = spec.shapes[i];
        std::ostringstream oss;
        oss << "shape " << i << ": ";
        if (!std::isfinite(s.x0) || !std::isfinite(s.y0) || !std::isfinite(s.x1) ||
            !std::isfinite(s.y1) || !std::isfinite(s.disp)) {
            throw Error(oss.str() + "non-finite field");
        }
        if (!(s.x0 < s.x1) || !(s.y0 < s.y1)) throw Error(oss.str() + "empty bbox");
        if (s.x0 < 0.0 || s.y0 < 0.0 || s.x1 > spec.width || s.y1 > spec.height) {
            throw Error(oss.str() + "bbox out of bounds");
        }
        if (!(s.disp > spec.background_disp)) {
            throw Error(oss.str() + "foreground disparity must exceed the background's");
        }
    }
    if (spec.texture.kind == TextureKind::checker && spec.texture.period < 1) {
        throw Error("checker period must be >= 1");
    }
    if (!std::isfinite(spec.texture.amplitude) || spec.texture.amplitude < 0.0 ||
        spec.texture.amplitude > 1.0) {
        throw Error("texture amplitude must lie in [0, 1]");
    }
}

Fixture generate(const SceneSpec& spec) {
    validate_scene(spec);
    const int w = spec.width;
    const int h = spec.height;
    const TextureSampler tex(spec);

    ScalarMap disp(w, h, float(spec.background_disp), Unit::disparity_px);
    BinaryMask seg(w, h);
    Image3 left = constant_image(w, h, 0.0f, 0.0f, 0.0f);
    Image3 right = constant_image(w, h, 0.0f, 0.0f, 0.0f);
    ScalarMap* lch[3] = {&left.r, &left.g, &left.b};
    ScalarMap* rch[3] = {&right.r, &right.g, &right.b};

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int owner = top_surface(spec, x, y);
            if (owner >= 0) {
                disp.set(x, y, float(spec.shapes[std::size_t(owner)].disp));
                seg.set(x, y, true);
            }
            for (int c = 0; c < 3; ++c) {
                lch[c]->set(x, y, float(tex.sample(owner, double(x), double(y), c)));
            }
        }
    }

    // Right view: z-ordered projection; background covers everything, so
    // dis-occluded pixels fall back to background texture.
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int vis = -1;
            double vis_disp = spec.background_disp;
            for (std::size_t i = 0; i < spec.shapes.size(); ++i) {
                const Shape& s = spec.shapes[i];
                if (s.disp > vis_disp && covers(s, double(x) + s.disp, double(y))) {
                    vis = int(i);
                    vis_disp = s.disp;
                }
            }
            for (int c = 0; c < 3; ++c) {
                rch[c]->set(x, y, float(tex.sample(vis, double(x) + vis_disp, double(y), c)));
            }
        }
    }

    BinaryMask occluded = brute_force_occlusion(disp);
    return Fixture{std::move(left), std::move(right), std::move(disp), std::move(seg),
                   std::move(occluded)};
}

ScalarMap perturb_edges(const ScalarMap& disp, const BinaryMask& seg, int offset_px,
                        int bleed_px, [[maybe_unused]] std::uint64_t seed) {
    if (disp.width() != seg.width() || disp.height() != seg.height()) {
        throw Error("perturb: segmentation shape does not match disparity map");
    }
    if (bleed_px < 0) throw Error("bleed must be >= 0");
    if (offset_px == 0 && bleed_px == 0) return disp;

    const int w = disp.width();
    const int h = disp.height();
    const bool inward = offset_px < 0;
    const int mag = std::abs(offset_px);

    // Values flood from the source side across the border into the target
    // side: foreground outward for positive offsets, background inward for
    // negative ones.
    auto on_source_side = [&](int x, int y) { return seg.at(x, y) != inward; };

    std::vector<PixelCoord> boundary;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!on_source_side(x, y)) continue;
            const bool edge = (x > 0 && !on_source_side(x - 1, y)) ||
                              (x + 1 < w && !on_source_side(x + 1, y)) ||
                              (y > 0 && !on_source_side(x, y - 1)) ||
                              (y + 1 < h && !on_source_side(x, y + 1));
            if (edge) boundary.push_back({x, y});
        }
    }
    if (boundary.empty()) return disp;

    if (!inward && mag > 0) {
        for (const auto& b : boundary) {
            if (std::min({b.x, b.y, w - 1 - b.x, h - 1 - b.y}) < mag) {
                throw Error("offset pushes a disparity border out of bounds");
            }
        }
    }

    ScalarMap out = disp;
    const double fade = double(bleed_px);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (on_source_side(x, y)) continue;
            std::int64_t best_sq = std::numeric_limits<std::int64_t>::max();
            PixelCoord best{};
            for (const auto& b : boundary) {
                const std::int64_t dx = x - b.x;
                const std::int64_t dy = y - b.y;
                const std::int64_t sq = dx * dx + dy * dy;
                if (sq < best_sq) {
                    best_sq = sq;
                    best = b;
                }
            }
            const double d = std::sqrt(double(best_sq));
            const double source_val = disp.at(best.x, best.y);
            if (d <= double(mag)) {
                out.set(x, y, float(source_val));
            } else if (fade > 0.0 && d < double(mag) + fade) {
                const double lam = (d - double(mag)) / fade;
                out.set(x, y, float((1.0 - lam) * source_val + lam * disp.at(x, y)));
            }
        }
    }
    return out;
}

}  // namespace edgemorph
