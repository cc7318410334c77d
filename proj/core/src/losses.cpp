#include "edgemorph/losses.hpp"

#include <algorithm>
#include <cmath>

namespace edgemorph {

namespace {

constexpr double kMinDisparity = 1e-6;
constexpr double kSsimC1 = 0.01 * 0.01;
constexpr double kSsimC2 = 0.03 * 0.03;

MapWithValidity invert_metric(const ScalarMap& in, double focal_px, double baseline_m,
                              Unit want, Unit produce) {
    if (in.unit() != want) {
        throw Error(std::string("expected unit ") + to_string(want) + ", got " +
                    to_string(in.unit()));
    }
    if (!(focal_px > 0.0) || !(baseline_m > 0.0)) {
        throw Error("focal length and baseline must be > 0");
    }
    const double fb = focal_px * baseline_m;
    ScalarMap out(in.width(), in.height(), 0.0f, produce);
    BinaryMask valid(in.width(), in.height(), true);
    for (int y = 0; y < in.height(); ++y) {
        for (int x = 0; x < in.width(); ++x) {
            const double v = in.at(x, y);
            if (v <= kMinDisparity) {
                out.set(x, y, float(fb / kMinDisparity));
                valid.set(x, y, false);
            } else {
                out.set(x, y, float(fb / v));
            }
        }
    }
    return {std::move(out), std::move(valid)};
}

void check_same_shape(const ScalarMap& a, const ScalarMap& b, const char* what) {
    if (!a.same_shape(b)) throw Error(std::string(what) + ": shapes do not match");
}

float sample_replicated(const ScalarMap& m, int x, int y) {
    x = std::clamp(x, 0, m.width() - 1);
    y = std::clamp(y, 0, m.height() - 1);
    return m.at(x, y);
}

double lerp_row(const ScalarMap& m, double sx, int y) {
    const int x0 = int(sx);
    const int x1 = std::min(x0 + 1, m.width() - 1);
    const double f = sx - x0;
    const double a = m.at(x0, y);
    return a + f * (double(m.at(x1, y)) - a);
}

}  // namespace

MapWithValidity disparity_to_depth(const ScalarMap& disp, double focal_px, double baseline_m) {
    return invert_metric(disp, focal_px, baseline_m, Unit::disparity_px, Unit::depth_m);
}

MapWithValidity depth_to_disparity(const ScalarMap& depth, double focal_px, double baseline_m) {
    return invert_metric(depth, focal_px, baseline_m, Unit::depth_m, Unit::disparity_px);
}

MapWithValidity warp_horizontal(const ScalarMap& src, const ScalarMap& disp,
                                WarpDirection direction) {
    check_same_shape(src, disp, "warp");
    const int w = src.width();
    const int h = src.height();
    const double sign = direction == WarpDirection::right_to_left ? 1.0 : -1.0;

    ScalarMap out(w, h, 0.0f, src.unit());
    BinaryMask valid(w, h, true);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double sx = x - sign * disp.at(x, y);
            if (sx < 0.0 || sx > double(w - 1)) {
                valid.set(x, y, false);
                sx = std::clamp(sx, 0.0, double(w - 1));
            }
            out.set(x, y, float(lerp_row(src, sx, y)));
        }
    }
    return {std::move(out), std::move(valid)};
}

ImageWithValidity warp_horizontal(const Image3& src, const ScalarMap& disp,
                                  WarpDirection direction) {
    auto r = warp_horizontal(src.r, disp, direction);
    auto g = warp_horizontal(src.g, disp, direction);
    auto b = warp_horizontal(src.b, disp, direction);
    return {Image3(std::move(r.map), std::move(g.map), std::move(b.map)), std::move(r.valid)};
}

ScalarMap ssim_map(const Image3& a, const Image3& b) {
    if (!a.same_shape(b)) throw Error("ssim: shapes do not match");
    const int w = a.width();
    const int h = a.height();
    const ScalarMap* ca[3] = {&a.r, &a.g, &a.b};
    const ScalarMap* cb[3] = {&b.r, &b.g, &b.b};

    ScalarMap out(w, h, 0.0f, Unit::unitless);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int c = 0; c < 3; ++c) {
                double sum_a = 0.0, sum_b = 0.0, sum_aa = 0.0, sum_bb = 0.0, sum_ab = 0.0;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const double va = sample_replicated(*ca[c], x + dx, y + dy);
                        const double vb = sample_replicated(*cb[c], x + dx, y + dy);
                        sum_a += va;
                        sum_b += vb;
                        sum_aa += va * va;
                        sum_bb += vb * vb;
                        sum_ab += va * vb;
                    }
                }
                const double mu_a = sum_a / 9.0;
                const double mu_b = sum_b / 9.0;
                const double var_a = sum_aa / 9.0 - mu_a * mu_a;
                const double var_b = sum_bb / 9.0 - mu_b * mu_b;
                const double cov = sum_ab / 9.0 - mu_a * mu_b;
                const double num = (2.0 * mu_a * mu_b + kSsimC1) * (2.0 * cov + kSsimC2);
                const double den =
                    (mu_a * mu_a + mu_b * mu_b + kSsimC1) * (var_a + var_b + kSsimC2);
                acc += num / den;
            }
            out.set(x, y, float(std::clamp(acc / 3.0, -1.0, 1.0)));
        }
    }
    return out;
}

ScalarMap photometric_loss(const Image3& image, const Image3& reconstructed, double alpha) {
    if (!image.same_shape(reconstructed)) throw Error("photometric loss: shapes do not match");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("alpha must lie in [0, 1]");

    const ScalarMap ssim = ssim_map(image, reconstructed);
    ScalarMap out(image.width(), image.height(), 0.0f, Unit::unitless);
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            const double l1 = (std::abs(double(image.r.at(x, y)) - reconstructed.r.at(x, y)) +
                               std::abs(double(image.g.at(x, y)) - reconstructed.g.at(x, y)) +
                               std::abs(double(image.b.at(x, y)) - reconstructed.b.at(x, y))) /
                              3.0;
            const double v = alpha * (1.0 - ssim.at(x, y)) / 2.0 + (1.0 - alpha) * l1;
            out.set(x, y, float(v));
        }
    }
    return out;
}

ScalarMap texture_variance(const Image3& image) {
    const int w = image.width();
    const int h = image.height();
    const ScalarMap* ch[3] = {&image.r, &image.g, &image.b};

    ScalarMap out(w, h, 0.0f, Unit::unitless);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double sum = 0.0;
            double sum_sq = 0.0;
            for (int c = 0; c < 3; ++c) {
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const double v = sample_replicated(*ch[c], x + dx, y + dy);
                        sum += v;
                        sum_sq += v * v;
                    }
                }
            }
            const double mu = sum / 27.0;
            out.set(x, y, float(sum_sq / 27.0 - mu * mu));
        }
    }
    return out;
}

ScalarMap morph_loss(const ScalarMap& disp, const ScalarMap& disp_star, const Image3& image,
                     const ScalarMap& lr_orig, const ScalarMap& lr_star) {
    check_same_shape(disp, disp_star, "morph loss");
    check_same_shape(disp, lr_orig, "morph loss");
    check_same_shape(disp, lr_star, "morph loss");
    if (!image.same_shape(disp)) throw Error("morph loss: image shape does not match");

    const ScalarMap var = texture_variance(image);
    ScalarMap out(disp.width(), disp.height(), 0.0f, Unit::unitless);
    for (int y = 0; y < disp.height(); ++y) {
        for (int x = 0; x < disp.width(); ++x) {
            if (lr_star.at(x, y) < lr_orig.at(x, y)) {
                const double diff = std::abs(double(disp_star.at(x, y)) - disp.at(x, y));
                out.set(x, y, float(double(var.at(x, y)) * std::log1p(diff)));
            }
        }
    }
    return out;
}

ScalarMap proxy_loss(const ScalarMap& disp, const ScalarMap& disp_proxy,
                     const ScalarMap& lr_orig, const ScalarMap& lr_proxy) {
    check_same_shape(disp, disp_proxy, "proxy loss");
    check_same_shape(disp, lr_orig, "proxy loss");
    check_same_shape(disp, lr_proxy, "proxy loss");

    ScalarMap out(disp.width(), disp.height(), 0.0f, Unit::unitless);
    for (int y = 0; y < disp.height(); ++y) {
        for (int x = 0; x < disp.width(); ++x) {
            if (lr_proxy.at(x, y) < lr_orig.at(x, y)) {
                const double diff = std::abs(double(disp_proxy.at(x, y)) - disp.at(x, y));
                out.set(x, y, float(std::log1p(diff)));
            }
        }
    }
    return out;
}

JointLoss joint_loss(const ScalarMap& l_r, const ScalarMap& l_g, const ScalarMap& l_p,
                     const BinaryMask& occlusion, double lambda1, double lambda2) {
    check_same_shape(l_r, l_g, "joint loss");
    check_same_shape(l_r, l_p, "joint loss");
    if (l_r.width() != occlusion.width() || l_r.height() != occlusion.height()) {
        throw Error("joint loss: mask shape does not match");
    }
    if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) throw Error("lambda weights must be >= 0");

    ScalarMap joint(l_r.width(), l_r.height(), 0.0f, Unit::unitless);
    BinaryMask valid(l_r.width(), l_r.height());
    double sum = 0.0;
    double comp = 0.0;  // Kahan compensation
    std::size_t n = 0;
    for (int y = 0; y < l_r.height(); ++y) {
        for (int x = 0; x < l_r.width(); ++x) {
            if (occlusion.at(x, y)) continue;
            const double v =
                double(l_r.at(x, y)) + lambda2 * l_g.at(x, y) + lambda1 * l_p.at(x, y);
            joint.set(x, y, float(v));
            valid.set(x, y, true);
            const double t = v - comp;
            const double s = sum + t;
            comp = (s - sum) - t;
            sum = s;
            ++n;
        }
    }
    if (n == 0) throw Error("empty valid set: every pixel is masked");

    JointLoss result{LossMaps{l_r, l_g, l_p, std::move(joint), std::move(valid)},
                     sum / double(n), n};
    return result;
}

}  // namespace edgemorph
