#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dehaze/errors.hpp"

namespace dehaze {

inline double clamp01(double v) {
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

// Single-channel floating map, row-major. Value range is documented by the
// producing operation; samples are expected to stay finite.
class ScalarMap {
public:
    ScalarMap() = default;
    ScalarMap(int width, int height, double fill = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return values_.size(); }

    double at(int x, int y) const { return values_[idx(x, y)]; }
    void set(int x, int y, double v) { values_[idx(x, y)] = v; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    const double* row(int y) const { return values_.data() + static_cast<std::size_t>(y) * width_; }
    double* row(int y) { return values_.data() + static_cast<std::size_t>(y) * width_; }

    double min_value() const;
    double max_value() const;
    double mean() const;

private:
    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

// Planar 3-channel image, values in [0,1], row-major storage per plane.
// Channel order is r, g, b. Public pipeline operations clamp on write so the
// range invariant holds after every public step.
class RgbImage {
public:
    static constexpr int kChannels = 3;

    RgbImage() = default;
    RgbImage(int width, int height, double fill = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    double at(int c, int x, int y) const { return planes_[c][idx(x, y)]; }
    void set(int c, int x, int y, double v) { planes_[c][idx(x, y)] = clamp01(v); }
    void set_pixel(int x, int y, double r, double g, double b) {
        std::size_t i = idx(x, y);
        planes_[0][i] = clamp01(r);
        planes_[1][i] = clamp01(g);
        planes_[2][i] = clamp01(b);
    }

    std::span<const double> plane(int c) const { return planes_[c]; }
    std::span<double> plane(int c) { return planes_[c]; }
    const double* plane_row(int c, int y) const {
        return planes_[c].data() + static_cast<std::size_t>(y) * width_;
    }
    double* plane_row(int c, int y) {
        return planes_[c].data() + static_cast<std::size_t>(y) * width_;
    }

    void clamp_all();

private:
    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> planes_[kChannels];
};

void require_same_size(const RgbImage& a, const RgbImage& b, const char* where);
void require_same_size(const ScalarMap& a, const ScalarMap& b, const char* where);
void require_same_size(const RgbImage& a, const ScalarMap& b, const char* where);

// Per-pixel 0.299 r + 0.587 g + 0.114 b.
ScalarMap to_gray(const RgbImage& img);

// Gray-world white balance: every channel is scaled so its mean matches the
// global mean sample value, then clamped to [0,1].
RgbImage white_balance(const RgbImage& img);

}  // namespace dehaze
