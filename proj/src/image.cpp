#include "dehaze/image.hpp"

#include <algorithm>
#include <string>

#include "dehaze/parallel.hpp"

namespace dehaze {

ScalarMap::ScalarMap(int width, int height, double fill)
    : width_(width), height_(height),
      values_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
    if (width < 1 || height < 1) {
        throw ContractError("ScalarMap dimensions must be at least 1x1");
    }
}

double ScalarMap::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double ScalarMap::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

double ScalarMap::mean() const {
    double total = reduce_rows(height_, [this](int y) {
        const double* r = row(y);
        double s = 0.0;
        for (int x = 0; x < width_; ++x) s += r[x];
        return s;
    });
    return total / static_cast<double>(size());
}

RgbImage::RgbImage(int width, int height, double fill) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw ContractError("RgbImage dimensions must be at least 1x1");
    }
    double v = clamp01(fill);
    for (auto& p : planes_) {
        p.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), v);
    }
}

void RgbImage::clamp_all() {
    for (auto& p : planes_) {
        for (double& v : p) v = clamp01(v);
    }
}

void require_same_size(const RgbImage& a, const RgbImage& b, const char* where) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw ContractError(std::string(where) + ": dimension mismatch (" +
                            std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                            std::to_string(b.width()) + "x" + std::to_string(b.height()) + ")");
    }
}

void require_same_size(const ScalarMap& a, const ScalarMap& b, const char* where) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw ContractError(std::string(where) + ": dimension mismatch (" +
                            std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                            std::to_string(b.width()) + "x" + std::to_string(b.height()) + ")");
    }
}

void require_same_size(const RgbImage& a, const ScalarMap& b, const char* where) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw ContractError(std::string(where) + ": dimension mismatch (" +
                            std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                            std::to_string(b.width()) + "x" + std::to_string(b.height()) + ")");
    }
}

ScalarMap to_gray(const RgbImage& img) {
    ScalarMap out(img.width(), img.height());
    parallel_rows(img.height(), [&](int y) {
        const double* r = img.plane_row(0, y);
        const double* g = img.plane_row(1, y);
        const double* b = img.plane_row(2, y);
        double* o = out.row(y);
        for (int x = 0; x < img.width(); ++x) {
            o[x] = 0.299 * r[x] + 0.587 * g[x] + 0.114 * b[x];
        }
    });
    return out;
}

RgbImage white_balance(const RgbImage& img) {
    const int w = img.width();
    const int h = img.height();
    const double n = static_cast<double>(img.pixel_count());

    double channel_mean[3];
    for (int c = 0; c < 3; ++c) {
        double total = reduce_rows(h, [&, c](int y) {
            const double* row = img.plane_row(c, y);
            double s = 0.0;
            for (int x = 0; x < w; ++x) s += row[x];
            return s;
        });
        channel_mean[c] = total / n;
    }

    static const char* names[3] = {"r", "g", "b"};
    for (int c = 0; c < 3; ++c) {
        if (channel_mean[c] <= 0.0) {
            throw DegenerateInputError(std::string("white_balance: channel ") + names[c] +
                                       " has zero mean");
        }
    }

    const double global_mean = (channel_mean[0] + channel_mean[1] + channel_mean[2]) / 3.0;
    const double scale[3] = {global_mean / channel_mean[0], global_mean / channel_mean[1],
                             global_mean / channel_mean[2]};

    RgbImage out(w, h);
    for (int c = 0; c < 3; ++c) {
        parallel_rows(h, [&, c](int y) {
            const double* src = img.plane_row(c, y);
            double* dst = out.plane_row(c, y);
            for (int x = 0; x < w; ++x) {
                dst[x] = clamp01(src[x] * scale[c]);
            }
        });
    }
    return out;
}

}  // namespace dehaze
