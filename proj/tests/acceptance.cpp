// End-to-end release gates for the library and the CLI binary. Each gate
// prints a single [PASS]/[FAIL] line; the process exits nonzero if any gate
// fails. CLI output is appended to acceptance_work/cli.log for debugging.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dehaze/boxfilter.hpp"
#include "dehaze/image.hpp"
#include "dehaze/image_io.hpp"
#include "dehaze/metrics.hpp"
#include "dehaze/pipeline.hpp"
#include "dehaze/recovery.hpp"
#include "dehaze/reference.hpp"
#include "dehaze/saf.hpp"
#include "dehaze/synth.hpp"
#include "dehaze/transmission.hpp"
#include "fixtures.hpp"

using namespace dehaze;
namespace fs = std::filesystem;

namespace {

constexpr double kRoundTripTol = 1e-6;
constexpr double kRoundTripSecondsPerImage = 1.0;
constexpr double kClosedLoopMinPsnr = 25.0;
constexpr double kClosedLoopMinSsim = 0.85;
constexpr double kClosedLoopSecondsPerImage = 5.0;
constexpr double kLightMaxAngleDeg = 5.0;
constexpr double kSafOracleTol = 1e-6;
constexpr double kSsimSelfTol = 1e-9;

fs::path g_work;
std::vector<std::map<std::string, double>> g_closed_loop_reports;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

bool run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + DEHAZE_CLI_PATH + "\" " + args +
                            " >> \"" + (g_work / "cli.log").string() +
                            "\" 2>&1";
    return std::system(cmd.c_str()) == 0;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool same_bytes(const fs::path& a, const fs::path& b) {
    const std::string sa = slurp(a);
    return !sa.empty() && sa == slurp(b);
}

std::map<std::string, double> parse_report(const fs::path& path) {
    std::map<std::string, double> out;
    std::ifstream in(path);
    std::string word, name;
    double value = 0;
    while (in >> word >> name >> value)
        if (word == "metric") out[name] = value;
    return out;
}

double rgb_max_abs_diff(const std::array<ScalarMap, 3>& planes,
                        const RgbImage& img) {
    double m = 0;
    for (int c = 0; c < RgbImage::kChannels; ++c)
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x)
                m = std::max(m, std::abs(planes[c].at(x, y) - img.at(c, x, y)));
    return m;
}

bool gate_round_trip() {
    const AtmosphericLight a{0.82, 0.86, 0.9};
    double worst_err = 0;
    double slowest = 0;
    for (unsigned idx = 0; idx < 10; ++idx) {
        const RgbImage clear = fixtures::procedural_clear(600, 400, idx);
        for (double t0 : {0.3, 0.6, 0.9}) {
            const auto start = std::chrono::steady_clock::now();
            HazeSynthesisParams p;
            p.airlight = a;
            p.t0 = t0;
            const RgbImage hazy = synthesize(clear, p);
            const auto planes = recover_planes(
                hazy, ScalarMap(600, 400, t0), a, RecoveryConfig{});
            slowest = std::max(slowest, elapsed_seconds(start));
            worst_err = std::max(worst_err, rgb_max_abs_diff(planes, clear));
        }
    }
    std::printf("       round trip: max error %.3g, slowest cycle %.3f s\n",
                worst_err, slowest);
    return worst_err <= kRoundTripTol && slowest < kRoundTripSecondsPerImage;
}

bool gate_closed_loop() {
    bool ok = true;
    for (unsigned seed : {1u, 2u}) {
        const fs::path clear_png = g_work / ("loop_clear_" + std::to_string(seed) + ".png");
        const fs::path hazy_png = g_work / ("loop_hazy_" + std::to_string(seed) + ".png");
        const fs::path restored_png = g_work / ("loop_restored_" + std::to_string(seed) + ".png");
        const fs::path report_txt = g_work / ("loop_report_" + std::to_string(seed) + ".txt");

        save_image(fixtures::dotted_patch_card(600, 400, seed), clear_png.string());
        // Transmission ramps from 1 down to exp(-ln 4) = 0.25 at the right edge.
        if (!run_cli("synth \"" + clear_png.string() + "\" -o \"" +
                     hazy_png.string() +
                     "\" --airlight 0.8,0.8,0.8 --beta 0.13862943611198906 "
                     "--depth-max 10")) {
            std::printf("       synth failed for seed %u\n", seed);
            return false;
        }

        const auto start = std::chrono::steady_clock::now();
        if (!run_cli("run \"" + hazy_png.string() + "\" -o \"" +
                     restored_png.string() + "\" --reference \"" +
                     clear_png.string() + "\" --report-out \"" +
                     report_txt.string() + "\"")) {
            std::printf("       run failed for seed %u\n", seed);
            return false;
        }
        const double took = elapsed_seconds(start);

        const auto rep = parse_report(report_txt);
        if (!rep.count("psnr") || !rep.count("ssim") ||
            !rep.count("new_edge_rate")) {
            std::printf("       report %s is missing metrics\n",
                        report_txt.string().c_str());
            return false;
        }
        const RgbImage clear = load_image(clear_png.string());
        const RgbImage hazy = load_image(hazy_png.string());
        const double hazy_psnr = psnr(clear, hazy);
        const double hazy_ssim = ssim(clear, hazy, MetricsConfig{});

        std::printf(
            "       seed %u: restored psnr %.2f ssim %.4f (hazy %.2f / %.4f), "
            "%.2f s\n",
            seed, rep.at("psnr"), rep.at("ssim"), hazy_psnr, hazy_ssim, took);
        ok = ok && rep.at("psnr") >= kClosedLoopMinPsnr &&
             rep.at("ssim") >= kClosedLoopMinSsim &&
             rep.at("psnr") > hazy_psnr && rep.at("ssim") > hazy_ssim &&
             took < kClosedLoopSecondsPerImage;
        g_closed_loop_reports.push_back(rep);
    }
    return ok;
}

bool gate_light_robustness() {
    HighlightConfig hl;
    hl.median_radius = 24;
    AirlightConfig al;
    al.quadtree_min_side = 16;
    const Vec3 truth = normalized(Vec3{1.0, 1.0, 1.0});

    const RgbImage clean = fixtures::streetlight_scene(false);
    const RgbImage lit = fixtures::streetlight_scene(true);

    const double err_clean =
        fixtures::angle_degrees(estimate_airlight(clean, hl, al).direction(), truth);
    const double err_lit =
        fixtures::angle_degrees(estimate_airlight(lit, hl, al).direction(), truth);
    const double err_raw = fixtures::angle_degrees(
        estimate_airlight_from_corrected(lit, al).direction(), truth);

    std::printf(
        "       light angles: clean %.2f, lit %.2f, lit w/o correction %.2f deg\n",
        err_clean, err_lit, err_raw);
    return err_clean <= kLightMaxAngleDeg && err_lit <= kLightMaxAngleDeg &&
           err_lit <= err_raw;
}

bool gate_defaults() {
    const fs::path cfg_file = g_work / "empty.cfg";
    std::ofstream(cfg_file) << "# intentionally empty\n";
    PipelineConfig cfg;
    apply_overrides(cfg, parse_config_file(cfg_file.string()));
    return cfg.transmission.kappa == 0.95 && cfg.recovery.epsilon == 1e-4;
}

bool gate_filter_oracles() {
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    auto random_map = [&](int w, int h) {
        ScalarMap m(w, h);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) m.set(x, y, dist(rng));
        return m;
    };

    int checked = 0;
    double worst = 0;
    const std::pair<int, int> shapes[] = {{12, 12}, {9, 7},  {12, 1},
                                          {1, 12},  {8, 8},  {11, 10},
                                          {5, 12},  {12, 5}};
    for (int radius : {1, 2, 3}) {
        for (auto [w, h] : shapes) {
            const ScalarMap rough = random_map(w, h);
            const ScalarMap guide = random_map(w, h);
            SafConfig cfg;
            cfg.window_radius = radius;
            const ScalarMap fast = saf_filter(rough, guide, cfg);
            const ScalarMap raw = reference::saf_kernel_direct(
                rough, guide, radius, cfg.epsilon_saf);
            const double lo = std::min(rough.min_value(), 1.0);
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const double want = std::clamp(raw.at(x, y), lo, 1.0);
                    worst = std::max(worst, std::abs(fast.at(x, y) - want));
                }
            ++checked;
        }
    }

    // With the stock radius the window swallows a 12x12 map entirely, so a
    // constant guidance collapses the kernel onto the plain box mean.
    const ScalarMap rough = random_map(12, 12);
    const SafConfig stock;
    const ScalarMap flat_guided =
        saf_filter(rough, ScalarMap(12, 12, 0.6), stock);
    const ScalarMap boxed = box_mean(rough, stock.window_radius);
    double box_err = 0;
    for (int y = 0; y < 12; ++y)
        for (int x = 0; x < 12; ++x)
            box_err = std::max(box_err,
                               std::abs(flat_guided.at(x, y) - boxed.at(x, y)));

    bool dark_exact = true;
    for (unsigned seed : {7u, 8u, 9u, 10u}) {
        RgbImage img(12, 12);
        std::mt19937 r2(seed);
        for (int c = 0; c < 3; ++c)
            for (int y = 0; y < 12; ++y)
                for (int x = 0; x < 12; ++x) img.set(c, x, y, dist(r2));
        const TransmissionConfig tcfg;
        const ScalarMap fast = dark_channel(img, tcfg);
        const ScalarMap naive =
            reference::dark_channel_naive(img, tcfg.patch_radius);
        for (int y = 0; y < 12; ++y)
            for (int x = 0; x < 12; ++x)
                dark_exact = dark_exact && fast.at(x, y) == naive.at(x, y);
    }

    std::printf(
        "       filter oracles: %d kernels, worst %.3g; box-mean gap %.3g; "
        "dark channel %s\n",
        checked, worst, box_err, dark_exact ? "exact" : "MISMATCH");
    return checked >= 20 && worst <= kSafOracleTol &&
           box_err <= kSafOracleTol && dark_exact;
}

bool gate_metric_sanity() {
    bool ok = true;
    const MetricsConfig cfg;
    for (unsigned idx : {0u, 3u}) {
        const RgbImage img = fixtures::procedural_clear(64, 48, idx);
        ok = ok && std::abs(ssim(img, img, cfg) - 1.0) <= kSsimSelfTol;
        ok = ok && psnr(img, img) == 99.0;
        ok = ok && new_edge_rate(img, img, cfg) == 0.0;
    }
    const RgbImage zeros = fixtures::constant(16, 16, 0, 0, 0);
    const RgbImage ones = fixtures::constant(16, 16, 1, 1, 1);
    ok = ok && std::abs(psnr(zeros, ones)) <= 1e-12;
    const RgbImage half = fixtures::constant(16, 16, 0.5, 0.5, 0.5);
    const RgbImage quarter_off = fixtures::constant(16, 16, 0.75, 0.75, 0.75);
    ok = ok &&
         std::abs(psnr(half, quarter_off) - 10.0 * std::log10(16.0)) <= 1e-9;

    // Dehazing the closed-loop fixtures has to reveal edges, not erase them.
    bool positive_rate = !g_closed_loop_reports.empty();
    for (const auto& rep : g_closed_loop_reports) {
        positive_rate =
            positive_rate && rep.count("new_edge_rate") &&
            rep.at("new_edge_rate") > 0.0;
    }
    if (!g_closed_loop_reports.empty())
        std::printf("       edge rates:");
    for (const auto& rep : g_closed_loop_reports)
        std::printf(" %+.1f%%", rep.at("new_edge_rate"));
    if (!g_closed_loop_reports.empty()) std::printf("\n");
    return ok && positive_rate;
}

bool gate_determinism() {
    const fs::path clear_png = g_work / "det_clear.png";
    save_image(fixtures::dotted_patch_card(128, 96, 9), clear_png.string());

    const fs::path hazy1 = g_work / "det_hazy_1.png";
    const fs::path hazy2 = g_work / "det_hazy_2.png";
    const fs::path side1 = g_work / "det_side_1.txt";
    const fs::path side2 = g_work / "det_side_2.txt";
    for (int i = 1; i <= 2; ++i) {
        if (!run_cli("synth \"" + clear_png.string() + "\" -o \"" +
                     (g_work / ("det_hazy_" + std::to_string(i) + ".png")).string() +
                     "\" --airlight 0.85,0.8,0.75 --t0 0.45 --sidecar \"" +
                     (g_work / ("det_side_" + std::to_string(i) + ".txt")).string() +
                     "\""))
            return false;
    }

    for (int i = 1; i <= 2; ++i) {
        if (!run_cli("run \"" + hazy1.string() + "\" -o \"" +
                     (g_work / ("det_out_" + std::to_string(i) + ".png")).string() +
                     "\" --dump-airlight \"" +
                     (g_work / ("det_air_" + std::to_string(i) + ".txt")).string() +
                     "\" --report-out \"" +
                     (g_work / ("det_run_rep_" + std::to_string(i) + ".txt")).string() +
                     "\""))
            return false;
    }

    for (int i = 1; i <= 2; ++i) {
        if (!run_cli("metrics --hazy \"" + hazy1.string() + "\" --restored \"" +
                     (g_work / "det_out_1.png").string() + "\" --reference \"" +
                     clear_png.string() + "\" --report-out \"" +
                     (g_work / ("det_met_" + std::to_string(i) + ".txt")).string() +
                     "\""))
            return false;
    }

    const bool ok =
        same_bytes(hazy1, hazy2) && same_bytes(side1, side2) &&
        same_bytes(g_work / "det_out_1.png", g_work / "det_out_2.png") &&
        same_bytes(g_work / "det_air_1.txt", g_work / "det_air_2.txt") &&
        same_bytes(g_work / "det_run_rep_1.txt", g_work / "det_run_rep_2.txt") &&
        same_bytes(g_work / "det_met_1.txt", g_work / "det_met_2.txt");
    if (!ok) std::printf("       repeated CLI runs differ\n");
    return ok;
}

int g_failures = 0;

void gate(int idx, const char* label, const std::function<bool()>& fn) {
    bool ok = false;
    try {
        ok = fn();
    } catch (const std::exception& e) {
        std::printf("       exception: %s\n", e.what());
    }
    std::printf("[%s] %d. %s\n", ok ? "PASS" : "FAIL", idx, label);
    if (!ok) ++g_failures;
}

}  // namespace

int main() {
    g_work = fs::absolute("acceptance_work");
    fs::remove_all(g_work);
    fs::create_directories(g_work);

    gate(1, "synthesis and recovery invert each other", gate_round_trip);
    gate(2, "full CLI loop beats the hazy baseline", gate_closed_loop);
    gate(3, "highlight correction keeps the light estimate on axis",
         gate_light_robustness);
    gate(4, "shipped defaults: kappa 0.95, recovery epsilon 1e-4",
         gate_defaults);
    gate(5, "fast filters match their direct oracles", gate_filter_oracles);
    gate(6, "metric sanity and edge gain on restored fixtures",
         gate_metric_sanity);
    gate(7, "repeated CLI runs are byte identical", gate_determinism);

    if (g_failures > 0) {
        std::printf("%d gate(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all gates passed\n");
    return 0;
}
