#include "dehaze/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "dehaze/errors.hpp"
#include "dehaze/parallel.hpp"

namespace dehaze {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Unit roots exp(-2*pi*i*k/n) for k < n/2, shared read-only by all rows.
std::vector<std::complex<double>> twiddles(int n) {
    std::vector<std::complex<double>> tw(std::size_t(std::max(1, n / 2)));
    for (int k = 0; k < n / 2; ++k) {
        tw[k] = std::polar(1.0, -2.0 * std::numbers::pi * k / n);
    }
    return tw;
}

void transform(std::complex<double>* a, int n,
               const std::vector<std::complex<double>>& tw, bool inverse) {
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const int half = len / 2;
        const int step = n / len;
        for (int i = 0; i < n; i += len) {
            for (int k = 0; k < half; ++k) {
                std::complex<double> w = tw[std::size_t(k) * step];
                if (inverse) w = std::conj(w);
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + half] * w;
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

// Mirror index without repeating the edge sample (period 2n-2).
int mirror(int i, int n) {
    if (n == 1) return 0;
    int m = i % (2 * n - 2);
    return m < n ? m : 2 * n - 2 - m;
}

}  // namespace

int next_pow2(int n) {
    if (n < 1) throw ContractError("next_pow2: n must be >= 1");
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft(std::vector<std::complex<double>>& a, bool inverse) {
    const int n = int(a.size());
    if (!is_pow2(n)) throw ContractError("fft: size must be a power of two");
    transform(a.data(), n, twiddles(n), inverse);
}

ScalarMap butterworth_lowpass(const ScalarMap& in, double cutoff, int order) {
    if (!(cutoff > 0.0 && cutoff < 1.0)) {
        throw ContractError("butterworth_lowpass: cutoff must be in (0, 1)");
    }
    if (order < 1) {
        throw ContractError("butterworth_lowpass: order must be >= 1");
    }
    const int w = in.width();
    const int h = in.height();
    const int pw = next_pow2(w);
    const int ph = next_pow2(h);

    std::vector<std::complex<double>> grid(std::size_t(pw) * ph);
    parallel_rows(ph, [&](int y) {
        const auto src = in.row(mirror(y, h));
        std::complex<double>* dst = grid.data() + std::size_t(y) * pw;
        for (int x = 0; x < pw; ++x) dst[x] = src[mirror(x, w)];
    });

    const auto tw_row = twiddles(pw);
    const auto tw_col = twiddles(ph);

    parallel_rows(ph, [&](int y) {
        transform(grid.data() + std::size_t(y) * pw, pw, tw_row, false);
    });

    // Transposed layout: tgrid[u * ph + v] holds frequency (u, v).
    std::vector<std::complex<double>> tgrid(std::size_t(pw) * ph);
    parallel_rows(ph, [&](int y) {
        for (int x = 0; x < pw; ++x) {
            tgrid[std::size_t(x) * ph + y] = grid[std::size_t(y) * pw + x];
        }
    });
    const double d0 = 0.5 * cutoff;
    parallel_rows(pw, [&](int u) {
        std::complex<double>* col = tgrid.data() + std::size_t(u) * ph;
        transform(col, ph, tw_col, false);
        const int fu = u <= pw / 2 ? u : pw - u;
        const double nu = double(fu) / pw;
        for (int v = 0; v < ph; ++v) {
            const int fv = v <= ph / 2 ? v : ph - v;
            const double nv = double(fv) / ph;
            const double d = std::sqrt(nu * nu + nv * nv);
            const double gain =
                1.0 / (1.0 + std::pow(d / d0, 2.0 * order));
            col[v] *= gain;
        }
        transform(col, ph, tw_col, true);
    });

    const double scale = 1.0 / (double(pw) * double(ph));
    parallel_rows(ph, [&](int y) {
        std::complex<double>* dst = grid.data() + std::size_t(y) * pw;
        for (int x = 0; x < pw; ++x) {
            dst[x] = tgrid[std::size_t(x) * ph + y];
        }
        transform(dst, pw, tw_row, true);
        for (int x = 0; x < pw; ++x) dst[x] *= scale;
    });

    ScalarMap out(w, h);
    parallel_rows(h, [&](int y) {
        const std::complex<double>* src = grid.data() + std::size_t(y) * pw;
        auto dst = out.row(y);
        for (int x = 0; x < w; ++x) dst[x] = src[x].real();
    });
    return out;
}

}  // namespace dehaze
