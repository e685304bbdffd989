#pragma once

#include <complex>
#include <vector>

#include "dehaze/image.hpp"

namespace dehaze {

// Smallest power of two >= n (n >= 1).
int next_pow2(int n);

// In-place iterative radix-2 transform. Size must be a power of two. The
// inverse pass does not divide by n; callers scale once at the end.
void fft(std::vector<std::complex<double>>& a, bool inverse);

// Frequency-domain Butterworth low pass, H = 1 / (1 + (D/D0)^(2*order)) with
// D0 = cutoff * 0.5 (cutoff is a fraction of the per-axis Nyquist). The map
// is mirror extended (edge samples not repeated) to the next power of two per
// side before the transform, then cropped back, so borders do not ring.
// Values pass through unclamped.
ScalarMap butterworth_lowpass(const ScalarMap& in, double cutoff, int order);

}  // namespace dehaze
