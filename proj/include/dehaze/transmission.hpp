#pragma once

#include "dehaze/image.hpp"

namespace dehaze {

struct TransmissionConfig {
    int patch_radius = 7;
    double kappa = 0.95;
    double t_min = 0.05;

    void validate() const;
};

// Sliding-window minimum over the (2*radius+1)^2 neighborhood, truncated at
// borders. Two-pass van Herk/Gil-Werman, O(1) per pixel, exact.
ScalarMap erode_min(const ScalarMap& in, int radius);

// Per pixel: min over channels of the windowed channel minimum. Channel min
// and window min commute, so this erodes the pixelwise channel minimum.
ScalarMap dark_channel(const RgbImage& img, const TransmissionConfig& cfg);

// 1 - kappa * dark, floored at t_min.
ScalarMap rough_transmission(const ScalarMap& dark, const TransmissionConfig& cfg);

}  // namespace dehaze
