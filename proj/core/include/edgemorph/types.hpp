#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgemorph {

/// Error type for all domain failures (bad inputs, bad files, undefined
/// results). The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Advisory unit tag carried by a ScalarMap. No automatic conversion;
/// operations that care (e.g. disparity_to_depth) check the tag and reject
/// mismatches.
enum class Unit {
    disparity_px,
    disparity_normalized,
    depth_m,
    intensity,
    unitless,
};

const char* to_string(Unit unit);

/// Dense row-major H x W grid of single-precision values. All values are
/// guaranteed finite after construction; the unit tag is fixed for the
/// lifetime of the map.
class ScalarMap {
public:
    ScalarMap(int width, int height, float fill, Unit unit);
    static ScalarMap from_data(int width, int height, std::vector<float> data, Unit unit);

    int width() const { return width_; }
    int height() const { return height_; }
    Unit unit() const { return unit_; }
    std::size_t size() const { return data_.size(); }

    float at(int x, int y) const { return data_[std::size_t(y) * width_ + x]; }
    void set(int x, int y, float v) { data_[std::size_t(y) * width_ + x] = v; }

    std::span<const float> data() const { return data_; }
    std::span<float> data() { return data_; }

    bool same_shape(const ScalarMap& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    ScalarMap(int width, int height, std::vector<float> data, Unit unit);

    int width_;
    int height_;
    Unit unit_;
    std::vector<float> data_;
};

/// Dense row-major boolean grid (segmentation foreground, occlusion,
/// validity).
class BinaryMask {
public:
    BinaryMask(int width, int height, bool fill = false);
    static BinaryMask from_bits(int width, int height, std::vector<std::uint8_t> bits);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return bits_.size(); }

    bool at(int x, int y) const { return bits_[std::size_t(y) * width_ + x] != 0; }
    void set(int x, int y, bool v) { bits_[std::size_t(y) * width_ + x] = v ? 1 : 0; }

    std::span<const std::uint8_t> bits() const { return bits_; }

    std::size_t count() const;

    bool same_shape(const BinaryMask& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
};

/// Sub-pixel 2D point. All geometric/morph arithmetic is double precision.
struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

double norm(Point2 a);
double dot(Point2 a, Point2 b);

/// Integer pixel coordinate. Validity against a particular map shape is
/// checked where coordinates enter the system (EdgeSet construction, pair
/// association), not on every access.
struct PixelCoord {
    int x = 0;
    int y = 0;

    Point2 to_point() const { return {double(x), double(y)}; }
};

inline bool operator==(PixelCoord a, PixelCoord b) { return a.x == b.x && a.y == b.y; }

/// Row-major ordering: by y, then x. Sorting edge points this way makes
/// nearest-point tie-breaking (smallest y, then smallest x) fall out of a
/// linear scan.
inline bool operator<(PixelCoord a, PixelCoord b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
}

/// Three-channel image as a triplet of equally shaped scalar maps.
struct Image3 {
    ScalarMap r;
    ScalarMap g;
    ScalarMap b;

    Image3(ScalarMap r_, ScalarMap g_, ScalarMap b_);

    int width() const { return r.width(); }
    int height() const { return r.height(); }

    bool same_shape(const Image3& other) const { return r.same_shape(other.r); }
    bool same_shape(const ScalarMap& other) const { return r.same_shape(other); }
};

Image3 constant_image(int width, int height, float red, float green, float blue);

/// One validated record of every tunable. Defaults follow the reference
/// calibration: t=1, k1=0.11, k2=20, k3=0.05, m1=17, m2=0.7, m3=1.6, m4=1.9,
/// alpha=0.85, lambda1=1, lambda2=5.
///
/// search_width defaults to "unbounded" (the effective scan is always
/// truncated at the image border). distance_scale divides raw pixel
/// distances before the h/w weighting functions are evaluated; 1 keeps
/// distances in raw pixels.
struct Thresholds {
    double t = 1.0;
    double k1 = 0.11;
    double k2 = 20.0;
    double k3 = 0.05;
    double m1 = 17.0;
    double m2 = 0.7;
    double m3 = 1.6;
    double m4 = 1.9;
    double alpha = 0.85;
    double lambda1 = 1.0;
    double lambda2 = 5.0;
    int search_width = std::numeric_limits<int>::max();
    double distance_scale = 1.0;
};

/// Returns one human-readable violation per invalid field; empty means ok.
std::vector<std::string> validate_thresholds(const Thresholds& th);

/// Throws Error listing every violated field.
void require_valid(const Thresholds& th);

/// Mask lifted to a 0/1 float map (unitless); used wherever edges of a
/// binary map are needed.
ScalarMap map_from_mask(const BinaryMask& mask);

}  // namespace edgemorph
