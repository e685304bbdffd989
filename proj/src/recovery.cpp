#include "dehaze/recovery.hpp"

#include <algorithm>

#include "dehaze/errors.hpp"
#include "dehaze/parallel.hpp"

namespace dehaze {

void RecoveryConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ConfigError("epsilon must be in (0, 1)");
    }
}

std::array<ScalarMap, 3> recover_planes(const RgbImage& img, const ScalarMap& t,
                                        const AtmosphericLight& a,
                                        const RecoveryConfig& cfg) {
    cfg.validate();
    a.validate();
    require_same_size(img, t, "recover");
    const int w = img.width();
    const int h = img.height();
    const double ac[3] = {a.r, a.g, a.b};
    std::array<ScalarMap, 3> out{ScalarMap(w, h), ScalarMap(w, h), ScalarMap(w, h)};
    for (int c = 0; c < RgbImage::kChannels; ++c) {
        parallel_rows(h, [&, c](int y) {
            const double* src = img.plane_row(c, y);
            const double* tt = t.row(y);
            double* dst = out[c].row(y);
            for (int x = 0; x < w; ++x) {
                dst[x] = (src[x] - ac[c]) / std::max(tt[x], cfg.epsilon) + ac[c];
            }
        });
    }
    return out;
}

RgbImage recover(const RgbImage& img, const ScalarMap& t,
                 const AtmosphericLight& a, const RecoveryConfig& cfg) {
    const std::array<ScalarMap, 3> planes = recover_planes(img, t, a, cfg);
    RgbImage out(img.width(), img.height());
    for (int c = 0; c < RgbImage::kChannels; ++c) {
        parallel_rows(img.height(), [&, c](int y) {
            const double* src = planes[c].row(y);
            double* dst = out.plane_row(c, y);
            for (int x = 0; x < img.width(); ++x) dst[x] = clamp01(src[x]);
        });
    }
    return out;
}

}  // namespace dehaze
