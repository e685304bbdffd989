#pragma once

#include <optional>

#include "dehaze/airlight.hpp"
#include "dehaze/image.hpp"

namespace dehaze {

struct HazeSynthesisParams {
    AtmosphericLight airlight;
    // Exactly one of the two must be set.
    std::optional<double> t0;
    std::optional<ScalarMap> t_map;

    void validate() const;
};

// Forward haze model: per channel J*T + (1-T)*A. A convex combination of
// in-range values, so the result needs no clamping.
RgbImage synthesize(const RgbImage& clear, const HazeSynthesisParams& params);

// T(x) = exp(-beta * depth_max * x / (W-1)): depth grows linearly left to
// right. Width 1 gives T = 1.
ScalarMap depth_ramp_transmission(int width, int height, double beta,
                                  double depth_max);

}  // namespace dehaze
