#pragma once

#include <array>

#include "dehaze/image.hpp"

namespace dehaze {

struct HighlightConfig {
    int median_radius = 7;
    double butterworth_cutoff = 0.08;
    int butterworth_order = 2;
    double log_floor = 1e-4;

    void validate() const;
};

using ChannelTriple = std::array<ScalarMap, 3>;

// Spatial median over the (2*radius+1)^2 window, truncated at borders. Even
// window counts take the lower middle order statistic.
ScalarMap median_filter(const ScalarMap& in, int radius);

// Per-channel log intensity, floored so black pixels stay finite.
ChannelTriple log_radiance(const RgbImage& img, const HighlightConfig& cfg);

// Per-pixel middle of the three channel logs, then spatially median filtered.
ScalarMap median_log(const ChannelTriple& logs, const HighlightConfig& cfg);

// Low-pass filtered difference between each log channel and the median
// surface: the slowly varying extra illumination attributed to light sources.
ChannelTriple illumination_residue(const ChannelTriple& logs,
                                   const ScalarMap& med,
                                   const HighlightConfig& cfg);

// Divides out exp(residue) per channel, flattening bright lamps and flash
// spots while leaving evenly lit regions nearly untouched.
RgbImage correct_highlights(const RgbImage& img, const HighlightConfig& cfg);

}  // namespace dehaze
