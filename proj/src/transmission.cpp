#include "dehaze/transmission.hpp"

#include <algorithm>
#include <vector>

#include "dehaze/errors.hpp"
#include "dehaze/parallel.hpp"

namespace dehaze {

void TransmissionConfig::validate() const {
    if (patch_radius < 0) {
        throw ConfigError("patch_radius must be >= 0");
    }
    if (!(kappa > 0.0 && kappa <= 1.0)) {
        throw ConfigError("kappa must be in (0, 1]");
    }
    if (!(t_min > 0.0 && t_min < 1.0)) {
        throw ConfigError("t_min must be in (0, 1)");
    }
}

namespace {

// One van Herk/Gil-Werman pass. Every window [i-r, i+r] (clipped to the
// array) spans at most two length-w blocks; prefix mins g and suffix mins h
// per block answer it in O(1). Clipping only happens at the array ends, so a
// window inside a single block always touches one of that block's ends.
void row_erode(const double* in, double* out, int n, int r,
               std::vector<double>& g, std::vector<double>& h) {
    const int w = 2 * r + 1;
    g.resize(n);
    h.resize(n);
    for (int start = 0; start < n; start += w) {
        const int end = std::min(start + w, n);
        g[start] = in[start];
        for (int i = start + 1; i < end; ++i) g[i] = std::min(g[i - 1], in[i]);
        h[end - 1] = in[end - 1];
        for (int i = end - 2; i >= start; --i) h[i] = std::min(h[i + 1], in[i]);
    }
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - r);
        const int hi = std::min(n - 1, i + r);
        if (lo / w == hi / w) {
            out[i] = (lo % w == 0) ? g[hi] : h[lo];
        } else {
            out[i] = std::min(h[lo], g[hi]);
        }
    }
}

}  // namespace

ScalarMap erode_min(const ScalarMap& in, int radius) {
    if (radius < 0) throw ContractError("erode_min: radius must be >= 0");
    if (radius == 0) return in;
    const int w = in.width();
    const int h = in.height();

    ScalarMap rows(w, h);
    parallel_rows(h, [&](int y) {
        std::vector<double> g, hh;
        row_erode(in.row(y), rows.row(y), w, radius, g, hh);
    });
    if (h == 1) return rows;

    ScalarMap rows_t(h, w);
    parallel_rows(h, [&](int y) {
        const double* src = rows.row(y);
        for (int x = 0; x < w; ++x) rows_t.set(y, x, src[x]);
    });
    ScalarMap out_t(h, w);
    parallel_rows(w, [&](int x) {
        std::vector<double> g, hh;
        row_erode(rows_t.row(x), out_t.row(x), h, radius, g, hh);
    });
    ScalarMap out(w, h);
    parallel_rows(h, [&](int y) {
        double* dst = out.row(y);
        for (int x = 0; x < w; ++x) dst[x] = out_t.at(y, x);
    });
    return out;
}

ScalarMap dark_channel(const RgbImage& img, const TransmissionConfig& cfg) {
    cfg.validate();
    ScalarMap cmin(img.width(), img.height());
    parallel_rows(img.height(), [&](int y) {
        const double* r = img.plane_row(0, y);
        const double* g = img.plane_row(1, y);
        const double* b = img.plane_row(2, y);
        double* dst = cmin.row(y);
        for (int x = 0; x < img.width(); ++x) {
            dst[x] = std::min(r[x], std::min(g[x], b[x]));
        }
    });
    return erode_min(cmin, cfg.patch_radius);
}

ScalarMap rough_transmission(const ScalarMap& dark, const TransmissionConfig& cfg) {
    cfg.validate();
    ScalarMap out(dark.width(), dark.height());
    parallel_rows(dark.height(), [&](int y) {
        const double* src = dark.row(y);
        double* dst = out.row(y);
        for (int x = 0; x < dark.width(); ++x) {
            dst[x] = std::max(cfg.t_min, 1.0 - cfg.kappa * src[x]);
        }
    });
    return out;
}

}  // namespace dehaze
