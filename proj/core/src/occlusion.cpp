#include "edgemorph/occlusion.hpp"

#include <algorithm>
#include <cmath>

namespace edgemorph {

BinaryMask occlusion_mask(const ScalarMap& disp, const OcclusionParams& params) {
    if (params.search_width < 1) throw Error("search_width must be >= 1");
    if (!std::isfinite(params.k3)) throw Error("k3 must be finite");

    const int w = disp.width();
    const int h = disp.height();
    const int step = params.view == View::left ? 1 : -1;
    BinaryMask mask(w, h);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int room = params.view == View::left ? w - 1 - x : x;
            const int imax = std::min(params.search_width, room);
            const double base = disp.at(x, y);
            for (int i = 1; i <= imax; ++i) {
                if (double(disp.at(x + step * i, y)) - base - i >= params.k3) {
                    mask.set(x, y, true);
                    break;
                }
            }
        }
    }
    return mask;
}

BinaryMask brute_force_occlusion(const ScalarMap& disp) {
    const int w = disp.width();
    const int h = disp.height();
    BinaryMask mask(w, h);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double d = disp.at(x, y);
            const std::int64_t pos = std::llround(4.0 * (x - d));
            for (int x2 = x + 1; x2 < w; ++x2) {
                const double d2 = disp.at(x2, y);
                if (!(d2 > d)) continue;
                const std::int64_t pos2 = std::llround(4.0 * (x2 - d2));
                if (pos2 <= pos) {
                    mask.set(x, y, true);
                    break;
                }
            }
        }
    }
    return mask;
}

}  // namespace edgemorph
