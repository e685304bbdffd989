#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dehaze/errors.hpp"
#include "dehaze/image_io.hpp"
#include "dehaze/metrics.hpp"
#include "dehaze/pipeline.hpp"
#include "dehaze/synth.hpp"

namespace {

using namespace dehaze;

AtmosphericLight parse_airlight(const std::string& text) {
    AtmosphericLight a;
    char comma1 = 0, comma2 = 0;
    std::istringstream in(text);
    if (!(in >> a.r >> comma1 >> a.g >> comma2 >> a.b) || comma1 != ',' ||
        comma2 != ',' || !(in >> std::ws).eof()) {
        throw ConfigError("airlight must be 'r,g,b', got '" + text + "'");
    }
    a.validate();
    return a;
}

// Reads a transmission map from a grayscale-as-RGB image file.
ScalarMap load_transmission_map(const std::string& path) {
    const RgbImage img = load_image(path);
    ScalarMap t(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            t.set(x, y, img.at(0, x, y));
        }
    }
    return t;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

std::string airlight_text(const AtmosphericLight& a, const Region& r) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "A %.6f %.6f %.6f\nregion %d %d %d %d\n",
                  a.r, a.g, a.b, r.x, r.y, r.w, r.h);
    return buf;
}

struct KnobFlags {
    ConfigOverrides values;

    void attach(CLI::App* cmd) {
        auto opt_i = [cmd](const char* flag, std::optional<int>& slot, const char* desc) {
            cmd->add_option_function<int>(flag, [&slot](int v) { slot = v; }, desc);
        };
        auto opt_d = [cmd](const char* flag, std::optional<double>& slot, const char* desc) {
            cmd->add_option_function<double>(flag, [&slot](double v) { slot = v; }, desc);
        };
        opt_i("--median-radius", values.median_radius, "highlight median window radius");
        opt_d("--lpf-cutoff", values.butterworth_cutoff, "low-pass cutoff, fraction of Nyquist");
        opt_i("--lpf-order", values.butterworth_order, "low-pass filter order");
        opt_d("--log-floor", values.log_floor, "intensity floor before the log");
        opt_i("--quadtree-min-side", values.quadtree_min_side, "smallest quad-tree region side");
        opt_i("--patch-size", values.patch_size, "color-line patch side");
        opt_i("--min-line-points", values.min_line_points, "pixels required per color-line patch");
        opt_d("--vote-angle-tolerance", values.vote_angle_tolerance, "degrees allowed between vote and region direction");
        opt_d("--max-component", values.max_component, "airlight component cap");
        opt_i("--patch-radius", values.patch_radius, "dark channel window radius");
        opt_d("--kappa", values.kappa, "haze retention factor");
        opt_d("--t-min", values.t_min, "rough transmission floor");
        opt_i("--saf-radius", values.window_radius, "refinement window radius");
        opt_d("--saf-eps", values.epsilon_saf, "refinement variance regularizer");
        opt_d("--epsilon", values.epsilon, "recovery transmission floor");
        opt_i("--ssim-window", values.ssim_window, "ssim window side");
        opt_d("--edge-threshold", values.edge_threshold, "visible-edge gradient threshold");
        opt_i("--cnr-block", values.cnr_block, "cnr block side");
    }
};

int run_command(const std::string& input_path, const std::string& output_path,
                const std::optional<std::string>& config_path,
                const std::optional<std::string>& airlight_text_opt,
                const std::optional<std::string>& tmap_path,
                const std::optional<std::string>& dump_dir,
                const std::optional<std::string>& dump_airlight,
                const std::optional<std::string>& dump_transmission,
                const std::optional<std::string>& report_path,
                const std::optional<std::string>& reference_path,
                bool no_highlight_correction, const KnobFlags& knobs,
                bool print_report) {
    PipelineConfig cfg;
    if (config_path) apply_overrides(cfg, parse_config_file(*config_path));
    apply_overrides(cfg, knobs.values);
    if (airlight_text_opt) cfg.airlight_override = parse_airlight(*airlight_text_opt);
    cfg.highlight_correction = !no_highlight_correction;
    cfg.dump_dir = dump_dir;
    cfg.validate();

    const RgbImage input = load_image(input_path);
    std::optional<ScalarMap> tmap;
    if (tmap_path) tmap = load_transmission_map(*tmap_path);

    const PipelineResult res =
        run_pipeline(input, cfg, tmap ? &*tmap : nullptr);
    save_image(res.output, output_path);

    if (dump_dir) {
        const std::filesystem::path dir(*dump_dir);
        std::filesystem::create_directories(dir);
        save_image(res.white_balanced, (dir / "wb.png").string());
        save_image(res.highlight_corrected, (dir / "highlight_corrected.png").string());
        if (res.dark.size() > 0) {
            save_gray_image(res.dark, (dir / "dark_channel.png").string());
            save_gray_image(res.t_rough, (dir / "t_rough.png").string());
        }
        save_gray_image(res.t_refined, (dir / "t_refined.png").string());
        write_text_file((dir / "airlight.txt").string(),
                        airlight_text(res.airlight, res.airlight_region));
    }
    if (dump_airlight) {
        write_text_file(*dump_airlight,
                        airlight_text(res.airlight, res.airlight_region));
    }
    if (dump_transmission) {
        const std::filesystem::path dir(*dump_transmission);
        std::filesystem::create_directories(dir);
        if (res.t_rough.size() > 0) {
            save_gray_image(res.t_rough, (dir / "t_rough.png").string());
        }
        save_gray_image(res.t_refined, (dir / "t_refined.png").string());
    }

    if (report_path || print_report || reference_path) {
        std::optional<RgbImage> reference;
        if (reference_path) reference = load_image(*reference_path);
        const MetricsReport rep = report(reference ? &*reference : nullptr,
                                         input, res.output, cfg.metrics);
        const std::string text = serialize(rep);
        if (report_path) {
            write_text_file(*report_path, text);
        } else {
            std::cout << text;
        }
    }
    return 0;
}

int synth_command(const std::string& clear_path, const std::string& output_path,
                  const std::string& airlight_arg, std::optional<double> t0,
                  std::optional<double> beta, std::optional<double> depth_max,
                  const std::optional<std::string>& sidecar_path) {
    HazeSynthesisParams params;
    params.airlight = parse_airlight(airlight_arg);

    const RgbImage clear = load_image(clear_path);
    std::string t_desc;
    if (t0) {
        if (beta || depth_max) {
            throw ConfigError("give either --t0 or --beta with --depth-max, not both");
        }
        params.t0 = *t0;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "t0 %.6f\n", *t0);
        t_desc = buf;
    } else {
        if (!beta || !depth_max) {
            throw ConfigError("need --t0, or --beta together with --depth-max");
        }
        params.t_map = depth_ramp_transmission(clear.width(), clear.height(),
                                               *beta, *depth_max);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "beta %.6f depth_max %.6f\n", *beta,
                      *depth_max);
        t_desc = buf;
    }
    const RgbImage hazy = synthesize(clear, params);
    save_image(hazy, output_path);

    if (sidecar_path) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "A %.6f %.6f %.6f\n", params.airlight.r,
                      params.airlight.g, params.airlight.b);
        write_text_file(*sidecar_path, std::string(buf) + t_desc);
    }
    return 0;
}

int metrics_command(const std::string& hazy_path, const std::string& restored_path,
                    const std::optional<std::string>& reference_path,
                    const std::optional<std::string>& report_path,
                    const KnobFlags& knobs) {
    PipelineConfig cfg;
    apply_overrides(cfg, knobs.values);
    cfg.metrics.validate();

    const RgbImage hazy = load_image(hazy_path);
    const RgbImage restored = load_image(restored_path);
    std::optional<RgbImage> reference;
    if (reference_path) reference = load_image(*reference_path);

    const MetricsReport rep = report(reference ? &*reference : nullptr, hazy,
                                     restored, cfg.metrics);
    const std::string text = serialize(rep);
    if (report_path) {
        write_text_file(*report_path, text);
    } else {
        std::cout << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-image dehazing pipeline"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "dehaze one image");
    std::string run_in, run_out;
    std::optional<std::string> run_config, run_airlight, run_tmap, run_dump,
        run_dump_airlight, run_dump_transmission, run_report, run_reference;
    bool run_no_hl = false;
    bool run_print_report = false;
    KnobFlags run_knobs;
    run->add_option("input", run_in, "hazy input image")->required();
    run->add_option("-o,--output", run_out, "dehazed output image")->required();
    run->add_option("--config", run_config, "key=value config file");
    run->add_option("--airlight", run_airlight, "fixed airlight r,g,b (skips estimation)");
    run->add_option("--transmission-map", run_tmap, "fixed transmission map image (skips estimation)");
    run->add_option("--dump", run_dump, "directory for intermediate images");
    run->add_option("--dump-airlight", run_dump_airlight, "text file for the airlight estimate");
    run->add_option("--dump-transmission", run_dump_transmission, "directory for the transmission maps");
    run->add_option("--report-out", run_report, "metrics report file");
    run->add_option("--reference", run_reference, "clear reference for ssim/psnr");
    run->add_flag("--no-highlight-correction", run_no_hl, "estimate airlight without flattening light sources");
    run->add_flag("--print-report", run_print_report, "print the metrics report to stdout");
    run_knobs.attach(run);

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize a hazy image");
    std::string synth_in, synth_out, synth_airlight;
    std::optional<double> synth_t0, synth_beta, synth_depth;
    std::optional<std::string> synth_sidecar;
    synth->add_option("clear", synth_in, "clear input image")->required();
    synth->add_option("-o,--output", synth_out, "hazy output image")->required();
    synth->add_option("--airlight", synth_airlight, "airlight r,g,b")->required();
    synth->add_option("--t0", synth_t0, "constant transmission in (0,1]");
    synth->add_option("--beta", synth_beta, "extinction coefficient for the depth ramp");
    synth->add_option("--depth-max", synth_depth, "depth at the right image edge");
    synth->add_option("--sidecar", synth_sidecar, "text file recording the parameters");

    // metrics
    auto* met = app.add_subcommand("metrics", "score a hazy/restored pair");
    std::string met_hazy, met_restored;
    std::optional<std::string> met_reference, met_report;
    KnobFlags met_knobs;
    met->add_option("--hazy", met_hazy, "hazy image")->required();
    met->add_option("--restored", met_restored, "restored image")->required();
    met->add_option("--reference", met_reference, "clear reference for ssim/psnr");
    met->add_option("--report-out", met_report, "metrics report file");
    met_knobs.attach(met);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_command(run_in, run_out, run_config, run_airlight,
                               run_tmap, run_dump, run_dump_airlight,
                               run_dump_transmission, run_report, run_reference,
                               run_no_hl, run_knobs, run_print_report);
        }
        if (synth->parsed()) {
            return synth_command(synth_in, synth_out, synth_airlight, synth_t0,
                                 synth_beta, synth_depth, synth_sidecar);
        }
        if (met->parsed()) {
            return metrics_command(met_hazy, met_restored, met_reference,
                                   met_report, met_knobs);
        }
    } catch (const PipelineStageError& e) {
        std::cerr << "error in stage " << e.stage_name << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
