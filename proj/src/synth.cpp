#include "dehaze/synth.hpp"

#include <cmath>

#include "dehaze/errors.hpp"
#include "dehaze/parallel.hpp"

namespace dehaze {

void HazeSynthesisParams::validate() const {
    airlight.validate();
    if (t0.has_value() == t_map.has_value()) {
        throw ContractError(
            "HazeSynthesisParams: exactly one of t0 / t_map must be set");
    }
    if (t0) {
        if (!(*t0 > 0.0 && *t0 <= 1.0)) {
            throw ContractError("HazeSynthesisParams: t0 must be in (0, 1]");
        }
    } else {
        for (double v : t_map->values()) {
            if (!(v > 0.0 && v <= 1.0)) {
                throw ContractError(
                    "HazeSynthesisParams: t_map values must be in (0, 1]");
            }
        }
    }
}

RgbImage synthesize(const RgbImage& clear, const HazeSynthesisParams& params) {
    params.validate();
    if (params.t_map) {
        require_same_size(clear, *params.t_map, "synthesize");
    }
    const int w = clear.width();
    const int h = clear.height();
    const double ac[3] = {params.airlight.r, params.airlight.g, params.airlight.b};
    RgbImage out(w, h);
    for (int c = 0; c < RgbImage::kChannels; ++c) {
        parallel_rows(h, [&, c](int y) {
            const double* src = clear.plane_row(c, y);
            const double* tr = params.t_map ? params.t_map->row(y) : nullptr;
            double* dst = out.plane_row(c, y);
            for (int x = 0; x < w; ++x) {
                const double t = tr ? tr[x] : *params.t0;
                dst[x] = src[x] * t + (1.0 - t) * ac[c];
            }
        });
    }
    return out;
}

ScalarMap depth_ramp_transmission(int width, int height, double beta,
                                  double depth_max) {
    if (beta < 0) {
        throw ContractError("depth_ramp_transmission: beta must be >= 0");
    }
    if (!(depth_max > 0)) {
        throw ContractError("depth_ramp_transmission: depth_max must be > 0");
    }
    ScalarMap t(width, height);
    parallel_rows(height, [&](int y) {
        double* dst = t.row(y);
        for (int x = 0; x < width; ++x) {
            const double d = width > 1 ? depth_max * x / (width - 1) : 0.0;
            dst[x] = std::exp(-beta * d);
        }
    });
    return t;
}

}  // namespace dehaze
