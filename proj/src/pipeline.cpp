#include "dehaze/pipeline.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include "dehaze/errors.hpp"

namespace dehaze {

void PipelineConfig::validate() const {
    highlight.validate();
    airlight.validate();
    transmission.validate();
    saf.validate();
    recovery.validate();
    metrics.validate();
    if (airlight_override) airlight_override->validate();
}

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const PipelineStageError&) {
        throw;
    } catch (const std::exception& e) {
        throw PipelineStageError(name, e.what());
    }
}

}  // namespace

PipelineResult run_pipeline(const RgbImage& input, const PipelineConfig& cfg,
                            const ScalarMap* transmission_override) {
    cfg.validate();
    PipelineResult res;

    res.white_balanced = stage("white_balance", [&] { return white_balance(input); });

    if (cfg.highlight_correction) {
        res.highlight_corrected = stage("highlight_correction", [&] {
            return correct_highlights(res.white_balanced, cfg.highlight);
        });
    } else {
        res.highlight_corrected = res.white_balanced;
    }

    if (cfg.airlight_override) {
        res.airlight = *cfg.airlight_override;
        res.airlight_estimated = false;
        res.airlight_region = Region{0, 0, 0, 0};
    } else {
        const AirlightEstimate est = stage("airlight_estimation", [&] {
            return estimate_airlight_detailed(res.highlight_corrected, cfg.airlight);
        });
        res.airlight = est.light;
        res.airlight_region = est.region;
        res.airlight_estimated = true;
    }

    if (transmission_override != nullptr) {
        stage("transmission_map", [&] {
            require_same_size(input, *transmission_override, "transmission map");
            return 0;
        });
        res.t_refined = *transmission_override;
    } else {
        res.dark = stage("dark_channel", [&] {
            return dark_channel(input, cfg.transmission);
        });
        res.t_rough = stage("rough_transmission", [&] {
            return rough_transmission(res.dark, cfg.transmission);
        });
        res.t_refined = stage("refine_transmission", [&] {
            return refine_transmission(res.t_rough, res.white_balanced, cfg.saf);
        });
    }

    res.output = stage("recovery", [&] {
        return recover(input, res.t_refined, res.airlight, cfg.recovery);
    });
    return res;
}

namespace {

struct Setter {
    std::function<void(ConfigOverrides&, const std::string&, int)> assign;
};

int parse_int(const std::string& value, int line) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) +
                          ": expected an integer, got '" + value + "'");
    }
}

double parse_double(const std::string& value, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) +
                          ": expected a number, got '" + value + "'");
    }
}

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return "";
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

const std::map<std::string, Setter>& key_table() {
    auto int_field = [](std::optional<int> ConfigOverrides::* field) {
        return Setter{[field](ConfigOverrides& ov, const std::string& v, int line) {
            ov.*field = parse_int(v, line);
        }};
    };
    auto double_field = [](std::optional<double> ConfigOverrides::* field) {
        return Setter{[field](ConfigOverrides& ov, const std::string& v, int line) {
            ov.*field = parse_double(v, line);
        }};
    };
    static const std::map<std::string, Setter> table = {
        {"median_radius", int_field(&ConfigOverrides::median_radius)},
        {"butterworth_cutoff", double_field(&ConfigOverrides::butterworth_cutoff)},
        {"butterworth_order", int_field(&ConfigOverrides::butterworth_order)},
        {"log_floor", double_field(&ConfigOverrides::log_floor)},
        {"quadtree_min_side", int_field(&ConfigOverrides::quadtree_min_side)},
        {"patch_size", int_field(&ConfigOverrides::patch_size)},
        {"min_line_points", int_field(&ConfigOverrides::min_line_points)},
        {"vote_angle_tolerance", double_field(&ConfigOverrides::vote_angle_tolerance)},
        {"max_component", double_field(&ConfigOverrides::max_component)},
        {"patch_radius", int_field(&ConfigOverrides::patch_radius)},
        {"kappa", double_field(&ConfigOverrides::kappa)},
        {"t_min", double_field(&ConfigOverrides::t_min)},
        {"window_radius", int_field(&ConfigOverrides::window_radius)},
        {"epsilon_saf", double_field(&ConfigOverrides::epsilon_saf)},
        {"epsilon", double_field(&ConfigOverrides::epsilon)},
        {"ssim_window", int_field(&ConfigOverrides::ssim_window)},
        {"ssim_k1", double_field(&ConfigOverrides::ssim_k1)},
        {"ssim_k2", double_field(&ConfigOverrides::ssim_k2)},
        {"edge_threshold", double_field(&ConfigOverrides::edge_threshold)},
        {"cnr_block", int_field(&ConfigOverrides::cnr_block)},
    };
    return table;
}

}  // namespace

ConfigOverrides parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);

    ConfigOverrides ov;
    std::string unknown;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = key_table().find(key);
        if (it == key_table().end()) {
            if (!unknown.empty()) unknown += ", ";
            unknown += key + " (line " + std::to_string(lineno) + ")";
            continue;
        }
        it->second.assign(ov, value, lineno);
    }
    if (!unknown.empty()) {
        throw ConfigError("unknown config keys: " + unknown);
    }
    return ov;
}

void apply_overrides(PipelineConfig& cfg, const ConfigOverrides& ov) {
    if (ov.median_radius) cfg.highlight.median_radius = *ov.median_radius;
    if (ov.butterworth_cutoff) cfg.highlight.butterworth_cutoff = *ov.butterworth_cutoff;
    if (ov.butterworth_order) cfg.highlight.butterworth_order = *ov.butterworth_order;
    if (ov.log_floor) cfg.highlight.log_floor = *ov.log_floor;
    if (ov.quadtree_min_side) cfg.airlight.quadtree_min_side = *ov.quadtree_min_side;
    if (ov.patch_size) cfg.airlight.patch_size = *ov.patch_size;
    if (ov.min_line_points) cfg.airlight.min_line_points = *ov.min_line_points;
    if (ov.vote_angle_tolerance) cfg.airlight.vote_angle_tolerance = *ov.vote_angle_tolerance;
    if (ov.max_component) cfg.airlight.max_component = *ov.max_component;
    if (ov.patch_radius) cfg.transmission.patch_radius = *ov.patch_radius;
    if (ov.kappa) cfg.transmission.kappa = *ov.kappa;
    if (ov.t_min) cfg.transmission.t_min = *ov.t_min;
    if (ov.window_radius) cfg.saf.window_radius = *ov.window_radius;
    if (ov.epsilon_saf) cfg.saf.epsilon_saf = *ov.epsilon_saf;
    if (ov.epsilon) cfg.recovery.epsilon = *ov.epsilon;
    if (ov.ssim_window) cfg.metrics.ssim_window = *ov.ssim_window;
    if (ov.ssim_k1) cfg.metrics.ssim_k1 = *ov.ssim_k1;
    if (ov.ssim_k2) cfg.metrics.ssim_k2 = *ov.ssim_k2;
    if (ov.edge_threshold) cfg.metrics.edge_threshold = *ov.edge_threshold;
    if (ov.cnr_block) cfg.metrics.cnr_block = *ov.cnr_block;
}

}  // namespace dehaze
