#include "dehaze/highlight.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dehaze/errors.hpp"
#include "dehaze/fft.hpp"
#include "dehaze/parallel.hpp"

namespace dehaze {

void HighlightConfig::validate() const {
    if (median_radius < 1) {
        throw ConfigError("median_radius must be >= 1");
    }
    if (!(butterworth_cutoff > 0.0 && butterworth_cutoff < 1.0)) {
        throw ConfigError("butterworth_cutoff must be in (0, 1)");
    }
    if (butterworth_order < 1) {
        throw ConfigError("butterworth_order must be >= 1");
    }
    if (!(log_floor > 0.0)) {
        throw ConfigError("log_floor must be > 0");
    }
}

ScalarMap median_filter(const ScalarMap& in, int radius) {
    if (radius < 0) throw ContractError("median_filter: radius must be >= 0");
    const int w = in.width();
    const int h = in.height();
    ScalarMap out(w, h);
    parallel_rows(h, [&](int y) {
        std::vector<double> buf;
        buf.reserve(std::size_t(2 * radius + 1) * (2 * radius + 1));
        const int y0 = std::max(0, y - radius);
        const int y1 = std::min(h - 1, y + radius);
        auto dst = out.row(y);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - radius);
            const int x1 = std::min(w - 1, x + radius);
            buf.clear();
            for (int yy = y0; yy <= y1; ++yy) {
                const auto src = in.row(yy);
                for (int xx = x0; xx <= x1; ++xx) buf.push_back(src[xx]);
            }
            const std::size_t mid = (buf.size() - 1) / 2;
            std::nth_element(buf.begin(), buf.begin() + mid, buf.end());
            dst[x] = buf[mid];
        }
    });
    return out;
}

ChannelTriple log_radiance(const RgbImage& img, const HighlightConfig& cfg) {
    cfg.validate();
    ChannelTriple logs{ScalarMap(img.width(), img.height()),
                       ScalarMap(img.width(), img.height()),
                       ScalarMap(img.width(), img.height())};
    for (int c = 0; c < RgbImage::kChannels; ++c) {
        parallel_rows(img.height(), [&, c](int y) {
            const auto src = img.plane_row(c, y);
            auto dst = logs[c].row(y);
            for (int x = 0; x < img.width(); ++x) {
                dst[x] = std::log(std::max(src[x], cfg.log_floor));
            }
        });
    }
    return logs;
}

ScalarMap median_log(const ChannelTriple& logs, const HighlightConfig& cfg) {
    cfg.validate();
    require_same_size(logs[0], logs[1], "median_log");
    require_same_size(logs[0], logs[2], "median_log");
    const int w = logs[0].width();
    const int h = logs[0].height();
    ScalarMap mid(w, h);
    parallel_rows(h, [&](int y) {
        const auto r0 = logs[0].row(y);
        const auto r1 = logs[1].row(y);
        const auto r2 = logs[2].row(y);
        auto dst = mid.row(y);
        for (int x = 0; x < w; ++x) {
            const double a = r0[x], b = r1[x], c = r2[x];
            dst[x] = std::max(std::min(a, b), std::min(std::max(a, b), c));
        }
    });
    return median_filter(mid, cfg.median_radius);
}

ChannelTriple illumination_residue(const ChannelTriple& logs,
                                   const ScalarMap& med,
                                   const HighlightConfig& cfg) {
    cfg.validate();
    require_same_size(logs[0], med, "illumination_residue");
    const int w = med.width();
    const int h = med.height();
    ChannelTriple out{ScalarMap(w, h), ScalarMap(w, h), ScalarMap(w, h)};
    for (int c = 0; c < RgbImage::kChannels; ++c) {
        require_same_size(logs[c], med, "illumination_residue");
        ScalarMap diff(w, h);
        parallel_rows(h, [&](int y) {
            const auto lg = logs[c].row(y);
            const auto md = med.row(y);
            auto dst = diff.row(y);
            for (int x = 0; x < w; ++x) dst[x] = lg[x] - md[x];
        });
        out[c] = butterworth_lowpass(diff, cfg.butterworth_cutoff,
                                     cfg.butterworth_order);
    }
    return out;
}

RgbImage correct_highlights(const RgbImage& img, const HighlightConfig& cfg) {
    cfg.validate();
    const ChannelTriple logs = log_radiance(img, cfg);
    const ScalarMap med = median_log(logs, cfg);
    const ChannelTriple res = illumination_residue(logs, med, cfg);
    RgbImage out(img.width(), img.height());
    for (int c = 0; c < RgbImage::kChannels; ++c) {
        parallel_rows(img.height(), [&, c](int y) {
            const auto src = img.plane_row(c, y);
            const auto rs = res[c].row(y);
            auto dst = out.plane_row(c, y);
            for (int x = 0; x < img.width(); ++x) {
                dst[x] = clamp01(src[x] / std::exp(rs[x]));
            }
        });
    }
    return out;
}

}  // namespace dehaze
