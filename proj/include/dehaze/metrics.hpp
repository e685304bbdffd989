#pragma once

#include <optional>
#include <string>

#include "dehaze/image.hpp"

namespace dehaze {

struct MetricsConfig {
    int ssim_window = 8;
    double ssim_k1 = 0.01;
    double ssim_k2 = 0.03;
    double edge_threshold = 0.05;
    int cnr_block = 16;

    void validate() const;
};

struct MetricsReport {
    double cnr = 0.0;                 // [0, 100]
    std::optional<double> ssim;       // needs a reference image
    std::optional<double> psnr;       // decibels, capped at 99
    double new_edge_rate = 0.0;       // percent, may be negative or > 100
};

// Mean structural similarity over gray projections, uniform square windows
// sliding with stride 1 (one truncated window when the image is smaller than
// the window).
double ssim(const RgbImage& ref, const RgbImage& test, const MetricsConfig& cfg);

// 10*log10(1/MSE) over all three channels, capped at 99 dB.
double psnr(const RgbImage& ref, const RgbImage& test);

// Block contrast against the global mean, divided by the high-pass noise
// estimate (residual after a 3x3 box mean), squashed into [0, 100].
double cnr(const RgbImage& test, const MetricsConfig& cfg);

// Number of interior pixels whose Sobel gradient magnitude (scaled by 1/8)
// exceeds edge_threshold on the gray projection.
int visible_edge_count(const RgbImage& img, const MetricsConfig& cfg);

// 100 * (edges(restored) - edges(hazy)) / max(edges(hazy), 1).
double new_edge_rate(const RgbImage& hazy, const RgbImage& restored,
                     const MetricsConfig& cfg);

// SSIM/PSNR restored-vs-reference when a reference exists, CNR on restored,
// edge rate hazy-vs-restored.
MetricsReport report(const RgbImage* reference, const RgbImage& hazy,
                     const RgbImage& restored, const MetricsConfig& cfg);

// One line per present metric: "metric <name> <value>" with 4 decimals.
std::string serialize(const MetricsReport& rep);

}  // namespace dehaze
