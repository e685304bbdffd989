#include "dehaze/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dehaze/boxfilter.hpp"
#include "dehaze/errors.hpp"
#include "dehaze/parallel.hpp"

namespace dehaze {

void MetricsConfig::validate() const {
    if (ssim_window < 1) throw ConfigError("ssim_window must be >= 1");
    if (!(ssim_k1 > 0.0)) throw ConfigError("ssim_k1 must be > 0");
    if (!(ssim_k2 > 0.0)) throw ConfigError("ssim_k2 must be > 0");
    if (!(edge_threshold > 0.0)) throw ConfigError("edge_threshold must be > 0");
    if (cnr_block < 1) throw ConfigError("cnr_block must be >= 1");
}

double ssim(const RgbImage& ref, const RgbImage& test, const MetricsConfig& cfg) {
    cfg.validate();
    require_same_size(ref, test, "ssim");
    const ScalarMap gx = to_gray(ref);
    const ScalarMap gy = to_gray(test);
    const int w = gx.width();
    const int h = gx.height();
    const int ww = std::min(cfg.ssim_window, w);
    const int wh = std::min(cfg.ssim_window, h);

    ScalarMap prod(w, h);
    parallel_rows(h, [&](int y) {
        const double* a = gx.row(y);
        const double* b = gy.row(y);
        double* dst = prod.row(y);
        for (int x = 0; x < w; ++x) dst[x] = a[x] * b[x];
    });
    const IntegralImage ix(gx);
    const IntegralImage iy(gy);
    const IntegralImage ixy(prod);

    const double c1 = cfg.ssim_k1 * cfg.ssim_k1;
    const double c2 = cfg.ssim_k2 * cfg.ssim_k2;
    const double n = double(ww) * wh;
    const int rows = h - wh + 1;
    const int cols = w - ww + 1;
    const double total = reduce_rows(rows, [&](int y0) {
        double acc = 0;
        for (int x0 = 0; x0 < cols; ++x0) {
            const double mx = ix.sum(x0, y0, ww, wh) / n;
            const double my = iy.sum(x0, y0, ww, wh) / n;
            double vx = ix.sum_sq(x0, y0, ww, wh) / n - mx * mx;
            double vy = iy.sum_sq(x0, y0, ww, wh) / n - my * my;
            if (vx < 0) vx = 0;
            if (vy < 0) vy = 0;
            const double cxy = ixy.sum(x0, y0, ww, wh) / n - mx * my;
            acc += ((2 * mx * my + c1) * (2 * cxy + c2)) /
                   ((mx * mx + my * my + c1) * (vx + vy + c2));
        }
        return acc;
    });
    return total / (double(rows) * cols);
}

double psnr(const RgbImage& ref, const RgbImage& test) {
    require_same_size(ref, test, "psnr");
    const int h = ref.height();
    double se = 0;
    for (int c = 0; c < RgbImage::kChannels; ++c) {
        se += reduce_rows(h, [&, c](int y) {
            const double* a = ref.plane_row(c, y);
            const double* b = test.plane_row(c, y);
            double acc = 0;
            for (int x = 0; x < ref.width(); ++x) {
                const double d = a[x] - b[x];
                acc += d * d;
            }
            return acc;
        });
    }
    const double mse = se / (3.0 * double(ref.pixel_count()));
    if (mse <= 0) return 99.0;
    return std::min(99.0, 10.0 * std::log10(1.0 / mse));
}

double cnr(const RgbImage& test, const MetricsConfig& cfg) {
    cfg.validate();
    const ScalarMap gray = to_gray(test);
    const int w = gray.width();
    const int h = gray.height();

    const ScalarMap smooth = box_mean(gray, 1);
    const double noise_var = reduce_rows(h, [&](int y) {
        const double* a = gray.row(y);
        const double* b = smooth.row(y);
        double acc = 0;
        for (int x = 0; x < w; ++x) {
            const double d = a[x] - b[x];
            acc += d * d;
        }
        return acc;
    }) / double(gray.size());
    const double sigma_n = std::sqrt(noise_var);

    const double global_mean = gray.mean();
    const IntegralImage integral(gray);
    const int bs = cfg.cnr_block;
    double contrast_sum = 0;
    int blocks = 0;
    for (int y0 = 0; y0 < h; y0 += bs) {
        for (int x0 = 0; x0 < w; x0 += bs) {
            const int bw = std::min(bs, w - x0);
            const int bh = std::min(bs, h - y0);
            contrast_sum += std::abs(integral.mean(x0, y0, bw, bh) - global_mean);
            ++blocks;
        }
    }
    const double raw = (contrast_sum / blocks) / std::max(sigma_n, 1e-6);
    return 100.0 * raw / (raw + 1.0);
}

int visible_edge_count(const RgbImage& img, const MetricsConfig& cfg) {
    cfg.validate();
    const ScalarMap gray = to_gray(img);
    const int w = gray.width();
    const int h = gray.height();
    if (w < 3 || h < 3) return 0;
    const double count = reduce_rows(h - 2, [&](int yi) {
        const int y = yi + 1;
        const double* up = gray.row(y - 1);
        const double* mid = gray.row(y);
        const double* dn = gray.row(y + 1);
        double acc = 0;
        for (int x = 1; x < w - 1; ++x) {
            const double sx = (up[x + 1] + 2 * mid[x + 1] + dn[x + 1]) -
                              (up[x - 1] + 2 * mid[x - 1] + dn[x - 1]);
            const double sy = (dn[x - 1] + 2 * dn[x] + dn[x + 1]) -
                              (up[x - 1] + 2 * up[x] + up[x + 1]);
            if (std::sqrt(sx * sx + sy * sy) / 8.0 > cfg.edge_threshold) {
                acc += 1.0;
            }
        }
        return acc;
    });
    return int(count + 0.5);
}

double new_edge_rate(const RgbImage& hazy, const RgbImage& restored,
                     const MetricsConfig& cfg) {
    require_same_size(hazy, restored, "new_edge_rate");
    const int nh = visible_edge_count(hazy, cfg);
    const int nr = visible_edge_count(restored, cfg);
    return 100.0 * double(nr - nh) / double(std::max(nh, 1));
}

MetricsReport report(const RgbImage* reference, const RgbImage& hazy,
                     const RgbImage& restored, const MetricsConfig& cfg) {
    require_same_size(hazy, restored, "report");
    MetricsReport rep;
    rep.cnr = cnr(restored, cfg);
    rep.new_edge_rate = new_edge_rate(hazy, restored, cfg);
    if (reference != nullptr) {
        require_same_size(*reference, restored, "report");
        rep.ssim = ssim(*reference, restored, cfg);
        rep.psnr = psnr(*reference, restored);
    }
    return rep;
}

std::string serialize(const MetricsReport& rep) {
    std::string out;
    char line[64];
    auto add = [&](const char* name, double value) {
        std::snprintf(line, sizeof(line), "metric %s %.4f\n", name, value);
        out += line;
    };
    add("cnr", rep.cnr);
    if (rep.ssim) add("ssim", *rep.ssim);
    if (rep.psnr) add("psnr", *rep.psnr);
    add("new_edge_rate", rep.new_edge_rate);
    return out;
}

}  // namespace dehaze
