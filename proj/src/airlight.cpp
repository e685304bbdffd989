#include "dehaze/airlight.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dehaze/boxfilter.hpp"
#include "dehaze/errors.hpp"

namespace dehaze {

namespace {

constexpr double kDegenerateEigen = 1e-12;
constexpr double kTinyOffset = 1e-6;
// A vote passes when more than half of its contributors lie within 45
// degrees of the elected direction.
const double kAgreementCos = std::cos(std::numbers::pi / 4.0);
constexpr double kComponentFloor = 0.05;

}  // namespace

void AtmosphericLight::validate() const {
    for (double v : {r, g, b}) {
        if (!(v > 0.0 && v <= 1.0)) {
            throw ContractError("AtmosphericLight: components must be in (0, 1]");
        }
    }
}

void AirlightConfig::validate() const {
    if (quadtree_min_side < 2) {
        throw ConfigError("quadtree_min_side must be >= 2");
    }
    if (patch_size < 4) {
        throw ConfigError("patch_size must be >= 4");
    }
    if (min_line_points < 3) {
        throw ConfigError("min_line_points must be >= 3");
    }
    if (!(vote_angle_tolerance > 0.0 && vote_angle_tolerance < 90.0)) {
        throw ConfigError("vote_angle_tolerance must be in (0, 90)");
    }
    if (!(max_component > 0.0 && max_component <= 1.0)) {
        throw ConfigError("max_component must be in (0, 1]");
    }
}

Region quadtree_candidate(const RgbImage& img, const AirlightConfig& cfg) {
    cfg.validate();
    const ScalarMap gray = to_gray(img);
    const IntegralImage integral(gray);

    Region cur{0, 0, img.width(), img.height()};
    while (cur.w / 2 >= cfg.quadtree_min_side && cur.h / 2 >= cfg.quadtree_min_side) {
        const int w0 = cur.w / 2;
        const int h0 = cur.h / 2;
        const Region quads[4] = {
            {cur.x, cur.y, w0, h0},
            {cur.x + w0, cur.y, cur.w - w0, h0},
            {cur.x, cur.y + h0, w0, cur.h - h0},
            {cur.x + w0, cur.y + h0, cur.w - w0, cur.h - h0},
        };
        int best = 0;
        double best_score = -1e300;
        for (int i = 0; i < 4; ++i) {
            const Region& q = quads[i];
            const double score = integral.mean(q.x, q.y, q.w, q.h) -
                                 integral.stddev(q.x, q.y, q.w, q.h);
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        cur = quads[best];
    }
    return cur;
}

Vec3 color_line_orientation(const RgbImage& img, const AirlightConfig& cfg) {
    cfg.validate();
    const int ps = cfg.patch_size;
    const int nx = img.width() / ps;
    const int ny = img.height() / ps;
    if (nx * ny < 16) {
        throw InsufficientStructureError(
            "color_line_orientation: image tiles fewer than 16 patches");
    }

    std::vector<Vec3> offsets;
    offsets.reserve(std::size_t(nx) * ny);
    for (int ty = 0; ty < ny; ++ty) {
        for (int tx = 0; tx < nx; ++tx) {
            // Gather the patch's non-saturated pixels.
            Vec3 mean{};
            int n = 0;
            Mat3 cov{};
            std::vector<Vec3> pts;
            pts.reserve(std::size_t(ps) * ps);
            for (int y = ty * ps; y < (ty + 1) * ps; ++y) {
                for (int x = tx * ps; x < (tx + 1) * ps; ++x) {
                    Vec3 p{img.at(0, x, y), img.at(1, x, y), img.at(2, x, y)};
                    if (std::max(p.x, std::max(p.y, p.z)) > cfg.max_component) {
                        continue;
                    }
                    pts.push_back(p);
                    mean = mean + p;
                    ++n;
                }
            }
            if (n < cfg.min_line_points) continue;
            mean = mean * (1.0 / n);
            for (const Vec3& p : pts) {
                const Vec3 d = p - mean;
                for (int i = 0; i < 3; ++i) {
                    for (int j = 0; j < 3; ++j) cov[i][j] += d[i] * d[j];
                }
            }
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) cov[i][j] /= n;
            }
            const Eigen3 eig = eigen_symmetric(cov);
            if (eig.values[0] <= kDegenerateEigen) continue;
            const Vec3 dir = eig.vectors[0];
            offsets.push_back(mean - dir * dot(mean, dir));
        }
    }
    if (int(offsets.size()) < 16) {
        throw InsufficientStructureError(
            "color_line_orientation: fewer than 16 valid patches");
    }

    Mat3 m{};
    for (const Vec3& u : offsets) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += u[i] * u[j];
        }
    }
    const Eigen3 eig = eigen_symmetric(m);
    if (eig.values[0] <= kDegenerateEigen) {
        throw InsufficientStructureError(
            "color_line_orientation: offsets carry no direction");
    }
    Vec3 v = eig.vectors[0];
    if (v.x + v.y + v.z < 0) v = v * -1.0;

    int contributors = 0;
    int agreeing = 0;
    for (const Vec3& u : offsets) {
        const double len = norm(u);
        if (len < kTinyOffset) continue;
        ++contributors;
        if (std::abs(dot(u, v)) / len >= kAgreementCos) ++agreeing;
    }
    if (contributors == 0 || agreeing * 2 <= contributors) {
        throw InsufficientStructureError(
            "color_line_orientation: vote agreement too low");
    }
    return v;
}

namespace {

double angle_deg(Vec3 a, Vec3 b) {
    const double c = std::clamp(dot(normalized(a), normalized(b)), -1.0, 1.0);
    return std::acos(c) * 180.0 / std::numbers::pi;
}

}  // namespace

AirlightEstimate estimate_airlight_detailed(const RgbImage& corrected,
                                            const AirlightConfig& cfg) {
    cfg.validate();
    const Region region = quadtree_candidate(corrected, cfg);

    Vec3 mean{};
    for (int y = region.y; y < region.y + region.h; ++y) {
        for (int x = region.x; x < region.x + region.w; ++x) {
            mean.x += corrected.at(0, x, y);
            mean.y += corrected.at(1, x, y);
            mean.z += corrected.at(2, x, y);
        }
    }
    mean = mean * (1.0 / (double(region.w) * region.h));
    const double magnitude = 0.299 * mean.x + 0.587 * mean.y + 0.114 * mean.z;

    const Vec3 gray_axis = normalized({1, 1, 1});
    Vec3 region_dir = norm(mean) > 0 ? normalized(mean) : gray_axis;

    Vec3 dir = region_dir;
    try {
        const Vec3 voted = color_line_orientation(corrected, cfg);
        if (angle_deg(voted, region_dir) <= cfg.vote_angle_tolerance) {
            dir = voted;
        }
    } catch (const InsufficientStructureError&) {
        // Keep the region direction.
    }

    const double dmax = std::max(dir.x, std::max(dir.y, dir.z));
    AtmosphericLight a;
    auto component = [&](double dc) {
        const double v = dmax > 0 ? magnitude * dc / dmax : magnitude;
        return std::clamp(v, kComponentFloor, cfg.max_component);
    };
    a.r = component(dir.x);
    a.g = component(dir.y);
    a.b = component(dir.z);
    a.validate();
    return {a, region};
}

AtmosphericLight estimate_airlight_from_corrected(const RgbImage& corrected,
                                                  const AirlightConfig& cfg) {
    return estimate_airlight_detailed(corrected, cfg).light;
}

AtmosphericLight estimate_airlight(const RgbImage& img,
                                   const HighlightConfig& hl_cfg,
                                   const AirlightConfig& cfg) {
    return estimate_airlight_from_corrected(correct_highlights(img, hl_cfg), cfg);
}

}  // namespace dehaze
