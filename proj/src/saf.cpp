#include "dehaze/saf.hpp"

#include <algorithm>

#include "dehaze/boxfilter.hpp"
#include "dehaze/errors.hpp"
#include "dehaze/parallel.hpp"

namespace dehaze {

void SafConfig::validate() const {
    if (window_radius < 1) {
        throw ConfigError("window_radius must be >= 1");
    }
    if (!(epsilon_saf > 0.0)) {
        throw ConfigError("epsilon_saf must be > 0");
    }
}

ScalarMap saf_filter(const ScalarMap& rough, const ScalarMap& guide,
                     const SafConfig& cfg) {
    cfg.validate();
    require_same_size(rough, guide, "saf_filter");
    const int w = rough.width();
    const int h = rough.height();
    const int r = cfg.window_radius;

    // Per-window linear fit rough ~ a*guide + b. Expanding the kernel sum
    // over shared windows gives out_p = (g_p*S[a/N] + S[b/N]) / S[1/N] with
    // S a box sum and N the per-window pixel count.
    const ScalarMap count = box_count(w, h, r);
    ScalarMap gg(w, h), gr(w, h);
    parallel_rows(h, [&](int y) {
        const double* g = guide.row(y);
        const double* t = rough.row(y);
        double* dgg = gg.row(y);
        double* dgr = gr.row(y);
        for (int x = 0; x < w; ++x) {
            dgg[x] = g[x] * g[x];
            dgr[x] = g[x] * t[x];
        }
    });
    const ScalarMap sum_g = box_sum(guide, r);
    const ScalarMap sum_t = box_sum(rough, r);
    const ScalarMap sum_gg = box_sum(gg, r);
    const ScalarMap sum_gt = box_sum(gr, r);

    ScalarMap a_over_n(w, h), b_over_n(w, h), inv_n(w, h);
    parallel_rows(h, [&](int y) {
        const double* n = count.row(y);
        const double* sg = sum_g.row(y);
        const double* st = sum_t.row(y);
        const double* sgg = sum_gg.row(y);
        const double* sgt = sum_gt.row(y);
        double* da = a_over_n.row(y);
        double* db = b_over_n.row(y);
        double* dn = inv_n.row(y);
        for (int x = 0; x < w; ++x) {
            const double mu = sg[x] / n[x];
            const double tbar = st[x] / n[x];
            double var = sgg[x] / n[x] - mu * mu;
            if (var < 0) var = 0;
            const double cov = sgt[x] / n[x] - mu * tbar;
            const double a = cov / (var + cfg.epsilon_saf);
            const double b = tbar - a * mu;
            da[x] = a / n[x];
            db[x] = b / n[x];
            dn[x] = 1.0 / n[x];
        }
    });
    const ScalarMap num_a = box_sum(a_over_n, r);
    const ScalarMap num_b = box_sum(b_over_n, r);
    const ScalarMap den = box_sum(inv_n, r);

    const double lo = std::min(rough.min_value(), 1.0);
    ScalarMap out(w, h);
    parallel_rows(h, [&](int y) {
        const double* g = guide.row(y);
        const double* na = num_a.row(y);
        const double* nb = num_b.row(y);
        const double* dn = den.row(y);
        double* dst = out.row(y);
        for (int x = 0; x < w; ++x) {
            dst[x] = std::clamp((g[x] * na[x] + nb[x]) / dn[x], lo, 1.0);
        }
    });
    return out;
}

ScalarMap refine_transmission(const ScalarMap& rough, const RgbImage& wb_img,
                              const SafConfig& cfg) {
    require_same_size(wb_img, rough, "refine_transmission");
    return saf_filter(rough, to_gray(wb_img), cfg);
}

}  // namespace dehaze
