#include "dehaze/boxfilter.hpp"

#include <algorithm>
#include <cmath>

#include "dehaze/errors.hpp"
#include "dehaze/parallel.hpp"

namespace dehaze {

namespace {

void require_radius(int radius, const char* where) {
    if (radius < 0) {
        throw ContractError(std::string(where) + ": radius must be >= 0");
    }
}

// Horizontal running sum of one row into out[0..n).
void row_box_sum(const double* in, double* out, int n, int r) {
    double acc = 0;
    int hi = std::min(n - 1, r);
    for (int x = 0; x <= hi; ++x) acc += in[x];
    out[0] = acc;
    for (int x = 1; x < n; ++x) {
        int add = x + r;
        int drop = x - r - 1;
        if (add < n) acc += in[add];
        if (drop >= 0) acc -= in[drop];
        out[x] = acc;
    }
}

}  // namespace

ScalarMap box_sum(const ScalarMap& in, int radius) {
    require_radius(radius, "box_sum");
    const int w = in.width();
    const int h = in.height();

    ScalarMap rows(w, h);
    parallel_rows(h, [&](int y) {
        row_box_sum(in.row(y), rows.row(y), w, radius);
    });

    if (h == 1) return rows;

    // Column pass: transpose so each column becomes a contiguous row, reuse
    // the horizontal running sum, transpose back.
    ScalarMap out(w, h);
    ScalarMap rows_t(h, w);
    parallel_rows(h, [&](int y) {
        const auto src = rows.row(y);
        for (int x = 0; x < w; ++x) rows_t.set(y, x, src[x]);
    });
    ScalarMap out_t(h, w);
    parallel_rows(w, [&](int x) {
        row_box_sum(rows_t.row(x), out_t.row(x), h, radius);
    });
    parallel_rows(h, [&](int y) {
        auto dst = out.row(y);
        for (int x = 0; x < w; ++x) dst[x] = out_t.at(y, x);
    });
    return out;
}

ScalarMap box_count(int width, int height, int radius) {
    require_radius(radius, "box_count");
    if (width < 1 || height < 1) {
        throw ContractError("box_count: dimensions must be at least 1x1");
    }
    auto span = [&](int i, int n) {
        int lo = std::max(0, i - radius);
        int hi = std::min(n - 1, i + radius);
        return double(hi - lo + 1);
    };
    ScalarMap out(width, height);
    parallel_rows(height, [&](int y) {
        double cy = span(y, height);
        auto dst = out.row(y);
        for (int x = 0; x < width; ++x) dst[x] = cy * span(x, width);
    });
    return out;
}

ScalarMap box_mean(const ScalarMap& in, int radius) {
    ScalarMap sum = box_sum(in, radius);
    ScalarMap count = box_count(in.width(), in.height(), radius);
    ScalarMap out(in.width(), in.height());
    parallel_rows(in.height(), [&](int y) {
        auto s = sum.row(y);
        auto c = count.row(y);
        auto dst = out.row(y);
        for (int x = 0; x < in.width(); ++x) dst[x] = s[x] / c[x];
    });
    return out;
}

IntegralImage::IntegralImage(const ScalarMap& map)
    : width_(map.width()), height_(map.height()) {
    const int sw = width_ + 1;
    s1_.assign(std::size_t(sw) * (height_ + 1), 0.0);
    s2_.assign(std::size_t(sw) * (height_ + 1), 0.0);
    for (int y = 0; y < height_; ++y) {
        const auto src = map.row(y);
        double run1 = 0, run2 = 0;
        const std::size_t above = std::size_t(y) * sw;
        const std::size_t here = std::size_t(y + 1) * sw;
        for (int x = 0; x < width_; ++x) {
            double v = src[x];
            run1 += v;
            run2 += v * v;
            s1_[here + x + 1] = s1_[above + x + 1] + run1;
            s2_[here + x + 1] = s2_[above + x + 1] + run2;
        }
    }
}

double IntegralImage::rect(const std::vector<double>& s, int x0, int y0, int w,
                           int h) const {
    if (w < 1 || h < 1 || x0 < 0 || y0 < 0 || x0 + w > width_ ||
        y0 + h > height_) {
        throw ContractError("IntegralImage: rectangle out of bounds");
    }
    const int sw = width_ + 1;
    const std::size_t top = std::size_t(y0) * sw;
    const std::size_t bot = std::size_t(y0 + h) * sw;
    return s[bot + x0 + w] - s[bot + x0] - s[top + x0 + w] + s[top + x0];
}

double IntegralImage::sum(int x0, int y0, int w, int h) const {
    return rect(s1_, x0, y0, w, h);
}

double IntegralImage::sum_sq(int x0, int y0, int w, int h) const {
    return rect(s2_, x0, y0, w, h);
}

double IntegralImage::mean(int x0, int y0, int w, int h) const {
    return sum(x0, y0, w, h) / (double(w) * h);
}

double IntegralImage::stddev(int x0, int y0, int w, int h) const {
    const double n = double(w) * h;
    const double m = sum(x0, y0, w, h) / n;
    double var = sum_sq(x0, y0, w, h) / n - m * m;
    if (var < 0) var = 0;
    return std::sqrt(var);
}

}  // namespace dehaze
