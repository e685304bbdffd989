#pragma once

#include "dehaze/image.hpp"

namespace dehaze {

struct SafConfig {
    int window_radius = 20;
    double epsilon_saf = 1e-3;

    void validate() const;
};

// Edge-aware weighted average of `rough` steered by local mean/variance of
// `guide`. Weights follow the window-summed form W_pq = sum over windows w_k
// containing both p and q of (1/|w_k|^2) * (1 + (g_p-mu_k)(g_q-mu_k)/(var_k+eps)),
// explicitly normalized per pixel; windows truncate at borders with true
// counts. Evaluated via the O(n) per-window linear-fit identity, which the
// test suite checks against a direct kernel evaluation. Output is clamped to
// [min(rough), 1].
ScalarMap saf_filter(const ScalarMap& rough, const ScalarMap& guide,
                     const SafConfig& cfg);

// Gray-projects the white-balanced image and runs saf_filter with it as the
// guidance.
ScalarMap refine_transmission(const ScalarMap& rough, const RgbImage& wb_img,
                              const SafConfig& cfg);

}  // namespace dehaze
