#pragma once

#include "dehaze/image.hpp"
#include "dehaze/metrics.hpp"

// Deliberately naive, serial evaluations of the definitions, written as
// direct transcriptions with no shared code or algorithmic tricks. The test
// suite holds the fast implementations to these.
namespace dehaze::reference {

ScalarMap erode_min_naive(const ScalarMap& in, int radius);

// Min over channels of the windowed per-channel minimum, double loop.
ScalarMap dark_channel_naive(const RgbImage& img, int radius);

ScalarMap box_sum_naive(const ScalarMap& in, int radius);

ScalarMap median_filter_naive(const ScalarMap& in, int radius);

// Direct kernel evaluation: out_p = sum_q W_pq rough_q / sum_q W_pq with
// W_pq = sum over windows w_k containing p and q of
// (1/|w_k|^2)(1 + (g_p-mu_k)(g_q-mu_k)/(var_k+eps)), truncated windows, true
// counts. No output clamp: callers compare against the pre-clamp identity.
ScalarMap saf_kernel_direct(const ScalarMap& rough, const ScalarMap& guide,
                            int radius, double eps);

// Same kernel with the guidance term removed entirely: W_pq = sum over
// shared windows of 1/|w_k|^2. The constant-guidance limit of the above.
ScalarMap saf_uniform_kernel_direct(const ScalarMap& rough, int radius);

// Per-window direct-formula structural similarity, matching the fast
// version's stride-1 uniform-window convention.
double ssim_direct(const RgbImage& ref, const RgbImage& test,
                   const MetricsConfig& cfg);

double cnr_direct(const RgbImage& test, const MetricsConfig& cfg);

// O(N^2) discrete Fourier transform route for the frequency-domain low pass,
// same mirror extension and gain curve as the fast path. Small inputs only.
ScalarMap butterworth_direct(const ScalarMap& in, double cutoff, int order);

}  // namespace dehaze::reference
