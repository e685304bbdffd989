#pragma once

#include <optional>
#include <string>

#include "dehaze/airlight.hpp"
#include "dehaze/highlight.hpp"
#include "dehaze/image.hpp"
#include "dehaze/metrics.hpp"
#include "dehaze/recovery.hpp"
#include "dehaze/saf.hpp"
#include "dehaze/transmission.hpp"

namespace dehaze {

struct PipelineConfig {
    HighlightConfig highlight;
    AirlightConfig airlight;
    TransmissionConfig transmission;
    SafConfig saf;
    RecoveryConfig recovery;
    MetricsConfig metrics;

    std::optional<AtmosphericLight> airlight_override;
    bool highlight_correction = true;
    std::optional<std::string> dump_dir;

    void validate() const;
};

struct PipelineResult {
    RgbImage output;
    RgbImage white_balanced;
    RgbImage highlight_corrected;  // equals white_balanced when correction is off
    ScalarMap dark;                // empty when a transmission map was supplied
    ScalarMap t_rough;             // likewise
    ScalarMap t_refined;
    AtmosphericLight airlight;
    Region airlight_region;        // zero-sized when the airlight was supplied
    bool airlight_estimated = false;
};

// Stage order: white balance, highlight correction (feeding airlight
// estimation only), airlight, dark channel on the original input, rough
// transmission, refinement guided by the white-balanced image, recovery on
// the original input. A non-null transmission_override replaces the three
// transmission stages. Stage failures rethrow as PipelineStageError carrying
// the stage name.
PipelineResult run_pipeline(const RgbImage& input, const PipelineConfig& cfg,
                            const ScalarMap* transmission_override = nullptr);

// Every knob settable from a config file or a CLI flag; unset fields keep
// the previous layer's value.
struct ConfigOverrides {
    std::optional<int> median_radius;
    std::optional<double> butterworth_cutoff;
    std::optional<int> butterworth_order;
    std::optional<double> log_floor;

    std::optional<int> quadtree_min_side;
    std::optional<int> patch_size;
    std::optional<int> min_line_points;
    std::optional<double> vote_angle_tolerance;
    std::optional<double> max_component;

    std::optional<int> patch_radius;
    std::optional<double> kappa;
    std::optional<double> t_min;

    std::optional<int> window_radius;
    std::optional<double> epsilon_saf;

    std::optional<double> epsilon;

    std::optional<int> ssim_window;
    std::optional<double> ssim_k1;
    std::optional<double> ssim_k2;
    std::optional<double> edge_threshold;
    std::optional<int> cnr_block;
};

// Flat key=value file, one pair per line, # starts a comment. Unknown keys
// and malformed values raise ConfigError with the offending line numbers.
ConfigOverrides parse_config_file(const std::string& path);

void apply_overrides(PipelineConfig& cfg, const ConfigOverrides& ov);

}  // namespace dehaze
