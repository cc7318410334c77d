#include "edgemorph/types.hpp"

#include <cmath>
#include <sstream>

namespace edgemorph {

namespace {

void check_dimensions(int width, int height) {
    if (width < 1 || height < 1) {
        std::ostringstream oss;
        oss << "zero or negative map dimension: " << width << "x" << height;
        throw Error(oss.str());
    }
}

void check_finite(std::span<const float> data) {
    for (float v : data) {
        if (!std::isfinite(v)) throw Error("non-finite value in map payload");
    }
}

}  // namespace

const char* to_string(Unit unit) {
    switch (unit) {
        case Unit::disparity_px: return "disparity_px";
        case Unit::disparity_normalized: return "disparity_normalized";
        case Unit::depth_m: return "depth_m";
        case Unit::intensity: return "intensity";
        case Unit::unitless: return "unitless";
    }
    return "?";
}

ScalarMap::ScalarMap(int width, int height, float fill, Unit unit)
    : width_(width), height_(height), unit_(unit) {
    check_dimensions(width, height);
    if (!std::isfinite(fill)) throw Error("non-finite fill value");
    data_.assign(std::size_t(width) * height, fill);
}

ScalarMap::ScalarMap(int width, int height, std::vector<float> data, Unit unit)
    : width_(width), height_(height), unit_(unit), data_(std::move(data)) {}

ScalarMap ScalarMap::from_data(int width, int height, std::vector<float> data, Unit unit) {
    check_dimensions(width, height);
    if (data.size() != std::size_t(width) * height) {
        throw Error("map payload size does not match dimensions");
    }
    check_finite(data);
    return ScalarMap(width, height, std::move(data), unit);
}

BinaryMask::BinaryMask(int width, int height, bool fill)
    : width_(width), height_(height) {
    check_dimensions(width, height);
    bits_.assign(std::size_t(width) * height, fill ? 1 : 0);
}

BinaryMask BinaryMask::from_bits(int width, int height, std::vector<std::uint8_t> bits) {
    check_dimensions(width, height);
    if (bits.size() != std::size_t(width) * height) {
        throw Error("mask payload size does not match dimensions");
    }
    BinaryMask mask(width, height);
    for (std::size_t i = 0; i < bits.size(); ++i) mask.bits_[i] = bits[i] ? 1 : 0;
    return mask;
}

std::size_t BinaryMask::count() const {
    std::size_t n = 0;
    for (std::uint8_t b : bits_) n += b;
    return n;
}

double norm(Point2 a) { return std::hypot(a.x, a.y); }

double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

Image3::Image3(ScalarMap r_, ScalarMap g_, ScalarMap b_)
    : r(std::move(r_)), g(std::move(g_)), b(std::move(b_)) {
    if (!r.same_shape(g) || !r.same_shape(b)) {
        throw Error("image channels must share one shape");
    }
}

Image3 constant_image(int width, int height, float red, float green, float blue) {
    return Image3(ScalarMap(width, height, red, Unit::intensity),
                  ScalarMap(width, height, green, Unit::intensity),
                  ScalarMap(width, height, blue, Unit::intensity));
}

std::vector<std::string> validate_thresholds(const Thresholds& th) {
    std::vector<std::string> bad;
    auto finite = [](double v) { return std::isfinite(v); };

    if (!finite(th.t) || th.t <= 0.0) bad.push_back("t: must be finite and > 0");
    if (!finite(th.k1) || th.k1 <= 0.0) bad.push_back("k1: must be finite and > 0");
    if (!finite(th.k2) || th.k2 <= 0.0) bad.push_back("k2: must be finite and > 0");
    if (!finite(th.k3)) bad.push_back("k3: must be finite");
    if (!finite(th.m1)) bad.push_back("m1: must be finite");
    if (!finite(th.m2)) bad.push_back("m2: must be finite");
    if (!finite(th.m3) || th.m3 <= 0.0) bad.push_back("m3: must be finite and > 0");
    if (!finite(th.m4)) bad.push_back("m4: must be finite");
    if (!finite(th.alpha) || th.alpha < 0.0 || th.alpha > 1.0) {
        bad.push_back("alpha: must lie in [0, 1]");
    }
    if (!finite(th.lambda1) || th.lambda1 < 0.0) bad.push_back("lambda1: must be finite and >= 0");
    if (!finite(th.lambda2) || th.lambda2 < 0.0) bad.push_back("lambda2: must be finite and >= 0");
    if (th.search_width < 1) bad.push_back("search_width: must be >= 1");
    if (!finite(th.distance_scale) || th.distance_scale <= 0.0) {
        bad.push_back("distance_scale: must be finite and > 0");
    }
    return bad;
}

void require_valid(const Thresholds& th) {
    const auto bad = validate_thresholds(th);
    if (bad.empty()) return;
    std::ostringstream oss;
    oss << "invalid thresholds:";
    for (const auto& msg : bad) oss << " [" << msg << "]";
    throw Error(oss.str());
}

ScalarMap map_from_mask(const BinaryMask& mask) {
    ScalarMap map(mask.width(), mask.height(), 0.0f, Unit::unitless);
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (mask.at(x, y)) map.set(x, y, 1.0f);
        }
    }
    return map;
}

}  // namespace edgemorph
