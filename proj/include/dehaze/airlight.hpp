#pragma once

#include "dehaze/highlight.hpp"
#include "dehaze/image.hpp"
#include "dehaze/linalg3.hpp"

namespace dehaze {

struct AtmosphericLight {
    double r = 0.8;
    double g = 0.8;
    double b = 0.8;

    Vec3 direction() const { return normalized({r, g, b}); }
    double max_component() const { return std::max(r, std::max(g, b)); }
    void validate() const;
};

struct AirlightConfig {
    int quadtree_min_side = 32;
    int patch_size = 8;
    int min_line_points = 32;
    double vote_angle_tolerance = 10.0;  // degrees
    double max_component = 0.98;

    void validate() const;
};

struct Region {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
};

// Repeatedly splits the current region into four quadrants and descends into
// the one with the highest mean-minus-stddev of the gray projection (a bright
// AND smooth region; ties break in scan order). Stops before quadrant sides
// would drop under quadtree_min_side. Images smaller than one split return
// whole.
Region quadtree_candidate(const RgbImage& img, const AirlightConfig& cfg);

// Ambient-light direction voted from small non-overlapping patches: each
// sufficiently populated, non-degenerate patch contributes the component of
// its mean color orthogonal to its principal RGB-space axis; the leading
// eigenvector of the accumulated outer products is returned, sign-fixed to a
// nonnegative component sum. Throws InsufficientStructureError when fewer
// than 16 patches qualify or the vote has no consensus.
Vec3 color_line_orientation(const RgbImage& img, const AirlightConfig& cfg);

struct AirlightEstimate {
    AtmosphericLight light;
    Region region;
};

// Candidate region magnitude + direction fusion on an image whose light
// sources were already flattened (or deliberately not, for ablation runs).
AirlightEstimate estimate_airlight_detailed(const RgbImage& corrected,
                                            const AirlightConfig& cfg);

AtmosphericLight estimate_airlight_from_corrected(const RgbImage& corrected,
                                                  const AirlightConfig& cfg);

// Full estimator: highlight correction first, then the fusion above.
AtmosphericLight estimate_airlight(const RgbImage& img,
                                   const HighlightConfig& hl_cfg,
                                   const AirlightConfig& cfg);

}  // namespace dehaze
