#pragma once

// Procedural scenes shared by the unit and acceptance suites. Everything is
// seeded and closed-form so goldens stay stable across platforms.

#include <algorithm>
#include <cmath>
#include <random>

#include "dehaze/airlight.hpp"
#include "dehaze/image.hpp"
#include "dehaze/synth.hpp"

namespace fixtures {

inline dehaze::RgbImage constant(int w, int h, double r, double g, double b) {
    dehaze::RgbImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.set_pixel(x, y, r, g, b);
    return img;
}

// Two-color patch card whose per-patch RGB lines sit nearly orthogonal to the
// gray axis once hazed with A = (0.8, 0.8, 0.8): the mirror-pair colors keep
// the offset vote centered on the true airlight direction.
inline constexpr double kAirlightGray = 0.8;
inline constexpr double kLineColorA[3] = {0.9, 0.7, 0.77};
inline constexpr double kLineColorB[3] = {0.7, 0.9, 0.77};

// Hazy scene with per-8x8-patch constant surface color and transmission that
// varies inside every patch, so each patch traces a clean RGB line through
// the airlight. Ideal input for the orientation vote.
inline dehaze::RgbImage color_line_scene(int w = 64, int h = 64) {
    dehaze::RgbImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const bool alt = ((x / 8) + (y / 8)) % 2 == 0;
            const double* j = alt ? kLineColorA : kLineColorB;
            const double t = 0.35 + 0.5 * ((x % 8) + (y % 8)) / 14.0;
            img.set_pixel(x, y,
                          j[0] * t + (1 - t) * kAirlightGray,
                          j[1] * t + (1 - t) * kAirlightGray,
                          j[2] * t + (1 - t) * kAirlightGray);
        }
    return img;
}

struct StreetlightScene {
    static constexpr int kWidth = 600;
    static constexpr int kHeight = 400;
    // Haze thickens toward this point; it sits at the center of the quadrant
    // cell the candidate search settles on, so the walk is stable at every
    // level. The lamp color is gray-projection neutral against the local fog:
    // the brightness-driven search cannot dodge it, yet its chroma drags the
    // region mean hard unless the lamp is flattened first.
    static constexpr int kBumpX = 506;
    static constexpr int kBumpY = 137;
    static constexpr int kLightSize = 30;
    static constexpr double kLight[3] = {1.0, 0.62, 0.3};
    static constexpr double kSurfaceA[3] = {0.45, 0.25, 0.32};
    static constexpr double kSurfaceB[3] = {0.25, 0.45, 0.32};
};

// Smoothly hazed two-color scene; with_light stamps a saturated warm square
// over the haze maximum.
inline dehaze::RgbImage streetlight_scene(bool with_light) {
    const int w = StreetlightScene::kWidth, h = StreetlightScene::kHeight;
    dehaze::RgbImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const bool alt = ((x / 8) + (y / 8)) % 2 == 0;
            const double* j = alt ? StreetlightScene::kSurfaceA
                                  : StreetlightScene::kSurfaceB;
            const double dx = x - StreetlightScene::kBumpX;
            const double dy = y - StreetlightScene::kBumpY;
            const double d2 = dx * dx + dy * dy;
            const double t = 0.60 - 0.04 * x / (w - 1.0) -
                             0.25 * std::exp(-d2 / (2.0 * 70.0 * 70.0)) -
                             0.12 * std::exp(-d2 / (2.0 * 25.0 * 25.0));
            img.set_pixel(x, y,
                          j[0] * t + (1 - t) * kAirlightGray,
                          j[1] * t + (1 - t) * kAirlightGray,
                          j[2] * t + (1 - t) * kAirlightGray);
        }
    if (with_light) {
        const int half = StreetlightScene::kLightSize / 2;
        for (int y = StreetlightScene::kBumpY - half;
             y < StreetlightScene::kBumpY + half; ++y)
            for (int x = StreetlightScene::kBumpX - half;
                 x < StreetlightScene::kBumpX + half; ++x)
                img.set_pixel(x, y, StreetlightScene::kLight[0],
                              StreetlightScene::kLight[1],
                              StreetlightScene::kLight[2]);
    }
    return img;
}

// Bright-toned patch card seeded per call, with a near-black dot inside every
// 8x8 cell so each 15x15 window holds one: the windowed channel minimum stays
// pinned near zero, the regime the transmission estimate assumes.
inline dehaze::RgbImage dotted_patch_card(int w, int h, unsigned seed,
                                          double lo = 0.55, double hi = 0.85) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> color(lo, hi);
    std::uniform_int_distribution<int> jitter(2, 5);
    dehaze::RgbImage img(w, h);
    const int cells_x = (w + 7) / 8, cells_y = (h + 7) / 8;
    std::vector<double> pr(cells_x * cells_y), pg(pr.size()), pb(pr.size());
    for (auto& v : pr) v = color(rng);
    for (auto& v : pg) v = color(rng);
    for (auto& v : pb) v = color(rng);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int c = (y / 8) * cells_x + (x / 8);
            img.set_pixel(x, y, pr[c], pg[c], pb[c]);
        }
    for (int cy = 0; cy < cells_y; ++cy)
        for (int cx = 0; cx < cells_x; ++cx) {
            const int dx = std::min(w - 1, cx * 8 + jitter(rng));
            const int dy = std::min(h - 1, cy * 8 + jitter(rng));
            img.set_pixel(dx, dy, 0.02, 0.02, 0.02);
        }
    return img;
}

// Assorted procedural clear images for round-trip checks: gradient cards,
// checkerboards, smooth waves, noise fields.
inline dehaze::RgbImage procedural_clear(int w, int h, unsigned index) {
    dehaze::RgbImage img(w, h);
    switch (index % 4) {
        case 0:  // diagonal gradient card
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    img.set_pixel(x, y, 0.1 + 0.8 * x / (w - 1.0),
                                  0.1 + 0.8 * y / (h - 1.0),
                                  0.9 - 0.8 * x / (w - 1.0));
            break;
        case 1: {  // checkerboard with index-dependent cell size
            const int cell = 4 + 3 * int(index % 5);
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const bool a = ((x / cell) + (y / cell)) % 2 == 0;
                    img.set_pixel(x, y, a ? 0.85 : 0.15, a ? 0.2 : 0.7,
                                  a ? 0.55 : 0.35);
                }
            break;
        }
        case 2:  // smooth color waves
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    img.set_pixel(
                        x, y,
                        0.5 + 0.4 * std::sin(2 * M_PI * (x + 3.0 * index) / 37.0),
                        0.5 + 0.4 * std::cos(2 * M_PI * y / 23.0),
                        0.5 + 0.4 * std::sin(2 * M_PI * (x + y) / 53.0));
            break;
        default: {  // uniform noise
            std::mt19937 rng(1234 + index);
            std::uniform_real_distribution<double> dist(0.0, 1.0);
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    img.set_pixel(x, y, dist(rng), dist(rng), dist(rng));
            break;
        }
    }
    return img;
}

inline double angle_degrees(const dehaze::Vec3& a, const dehaze::Vec3& b) {
    const double c = std::clamp(dehaze::dot(dehaze::normalized(a),
                                            dehaze::normalized(b)),
                                -1.0, 1.0);
    return std::acos(c) * 180.0 / M_PI;
}

}  // namespace fixtures
