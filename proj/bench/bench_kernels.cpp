// Paired timings of the parallel kernels against the serial reference
// transcriptions the test suite checks them with. Pairs run on identical
// inputs; sizes shrink where the reference side is quadratic.

#include <benchmark/benchmark.h>

#include <random>

#include "dehaze/boxfilter.hpp"
#include "dehaze/fft.hpp"
#include "dehaze/highlight.hpp"
#include "dehaze/metrics.hpp"
#include "dehaze/reference.hpp"
#include "dehaze/saf.hpp"
#include "dehaze/transmission.hpp"
#include "fixtures.hpp"

namespace {

using dehaze::RgbImage;
using dehaze::ScalarMap;

ScalarMap random_map(int w, int h, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    ScalarMap map(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            map.set(x, y, uni(rng));
        }
    }
    return map;
}

void bm_dark_channel(benchmark::State& state) {
    const RgbImage img = fixtures::procedural_clear(600, 400, 1);
    const dehaze::TransmissionConfig cfg;
    for (auto _ : state) {
        ScalarMap out = dehaze::dark_channel(img, cfg);
        benchmark::DoNotOptimize(out);
    }
}

void bm_dark_channel_naive(benchmark::State& state) {
    const RgbImage img = fixtures::procedural_clear(600, 400, 1);
    const dehaze::TransmissionConfig cfg;
    for (auto _ : state) {
        ScalarMap out = dehaze::reference::dark_channel_naive(img, cfg.patch_radius);
        benchmark::DoNotOptimize(out);
    }
}

void bm_erode_min(benchmark::State& state) {
    const ScalarMap in = random_map(600, 400, 2);
    for (auto _ : state) {
        ScalarMap out = dehaze::erode_min(in, 7);
        benchmark::DoNotOptimize(out);
    }
}

void bm_erode_min_naive(benchmark::State& state) {
    const ScalarMap in = random_map(600, 400, 2);
    for (auto _ : state) {
        ScalarMap out = dehaze::reference::erode_min_naive(in, 7);
        benchmark::DoNotOptimize(out);
    }
}

void bm_box_sum(benchmark::State& state) {
    const ScalarMap in = random_map(600, 400, 3);
    for (auto _ : state) {
        ScalarMap out = dehaze::box_sum(in, 20);
        benchmark::DoNotOptimize(out);
    }
}

void bm_box_sum_naive(benchmark::State& state) {
    const ScalarMap in = random_map(600, 400, 3);
    for (auto _ : state) {
        ScalarMap out = dehaze::reference::box_sum_naive(in, 20);
        benchmark::DoNotOptimize(out);
    }
}

void bm_median_filter(benchmark::State& state) {
    const ScalarMap in = random_map(300, 200, 4);
    for (auto _ : state) {
        ScalarMap out = dehaze::median_filter(in, 7);
        benchmark::DoNotOptimize(out);
    }
}

void bm_median_filter_naive(benchmark::State& state) {
    const ScalarMap in = random_map(300, 200, 4);
    for (auto _ : state) {
        ScalarMap out = dehaze::reference::median_filter_naive(in, 7);
        benchmark::DoNotOptimize(out);
    }
}

void bm_saf_filter_small(benchmark::State& state) {
    const ScalarMap rough = random_map(48, 48, 5);
    const ScalarMap guide = random_map(48, 48, 6);
    dehaze::SafConfig cfg;
    cfg.window_radius = 3;
    for (auto _ : state) {
        ScalarMap out = dehaze::saf_filter(rough, guide, cfg);
        benchmark::DoNotOptimize(out);
    }
}

void bm_saf_kernel_direct_small(benchmark::State& state) {
    const ScalarMap rough = random_map(48, 48, 5);
    const ScalarMap guide = random_map(48, 48, 6);
    for (auto _ : state) {
        ScalarMap out = dehaze::reference::saf_kernel_direct(rough, guide, 3, 1e-3);
        benchmark::DoNotOptimize(out);
    }
}

void bm_saf_filter_full(benchmark::State& state) {
    const ScalarMap rough = random_map(600, 400, 7);
    const ScalarMap guide = random_map(600, 400, 8);
    const dehaze::SafConfig cfg;
    for (auto _ : state) {
        ScalarMap out = dehaze::saf_filter(rough, guide, cfg);
        benchmark::DoNotOptimize(out);
    }
}

void bm_ssim(benchmark::State& state) {
    const RgbImage a = fixtures::procedural_clear(300, 200, 1);
    const RgbImage b = fixtures::procedural_clear(300, 200, 2);
    const dehaze::MetricsConfig cfg;
    for (auto _ : state) {
        double v = dehaze::ssim(a, b, cfg);
        benchmark::DoNotOptimize(v);
    }
}

void bm_ssim_direct(benchmark::State& state) {
    const RgbImage a = fixtures::procedural_clear(300, 200, 1);
    const RgbImage b = fixtures::procedural_clear(300, 200, 2);
    const dehaze::MetricsConfig cfg;
    for (auto _ : state) {
        double v = dehaze::reference::ssim_direct(a, b, cfg);
        benchmark::DoNotOptimize(v);
    }
}

void bm_cnr(benchmark::State& state) {
    const RgbImage img = fixtures::procedural_clear(600, 400, 3);
    const dehaze::MetricsConfig cfg;
    for (auto _ : state) {
        double v = dehaze::cnr(img, cfg);
        benchmark::DoNotOptimize(v);
    }
}

void bm_cnr_direct(benchmark::State& state) {
    const RgbImage img = fixtures::procedural_clear(600, 400, 3);
    const dehaze::MetricsConfig cfg;
    for (auto _ : state) {
        double v = dehaze::reference::cnr_direct(img, cfg);
        benchmark::DoNotOptimize(v);
    }
}

void bm_butterworth_small(benchmark::State& state) {
    const ScalarMap in = random_map(32, 32, 9);
    for (auto _ : state) {
        ScalarMap out = dehaze::butterworth_lowpass(in, 0.08, 2);
        benchmark::DoNotOptimize(out);
    }
}

void bm_butterworth_direct_small(benchmark::State& state) {
    const ScalarMap in = random_map(32, 32, 9);
    for (auto _ : state) {
        ScalarMap out = dehaze::reference::butterworth_direct(in, 0.08, 2);
        benchmark::DoNotOptimize(out);
    }
}

void bm_butterworth_full(benchmark::State& state) {
    const ScalarMap in = random_map(600, 400, 10);
    for (auto _ : state) {
        ScalarMap out = dehaze::butterworth_lowpass(in, 0.08, 2);
        benchmark::DoNotOptimize(out);
    }
}

}  // namespace

BENCHMARK(bm_dark_channel)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_dark_channel_naive)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_erode_min)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_erode_min_naive)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_box_sum)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_box_sum_naive)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_median_filter)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_median_filter_naive)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_saf_filter_small)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_saf_kernel_direct_small)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_saf_filter_full)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_ssim)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_ssim_direct)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_cnr)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_cnr_direct)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_butterworth_small)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_butterworth_direct_small)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_butterworth_full)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
