#pragma once

#include <array>

#include "dehaze/airlight.hpp"
#include "dehaze/image.hpp"

namespace dehaze {

struct RecoveryConfig {
    double epsilon = 1e-4;

    void validate() const;
};

// Per channel (I - A) / max(T, epsilon) + A without clamping; overshoot past
// [0,1] is expected at low transmission and the round-trip tests assert on
// these raw values.
std::array<ScalarMap, 3> recover_planes(const RgbImage& img, const ScalarMap& t,
                                        const AtmosphericLight& a,
                                        const RecoveryConfig& cfg);

// recover_planes clamped into a displayable image.
RgbImage recover(const RgbImage& img, const ScalarMap& t,
                 const AtmosphericLight& a, const RecoveryConfig& cfg);

}  // namespace dehaze
