#include <clocale>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "rbsim/config.hpp"
#include "rbsim/csvio.hpp"
#include "rbsim/fielddump.hpp"
#include "rbsim/svgplot.hpp"
#include "rbsim/version.hpp"

namespace fs = std::filesystem;
using namespace rbsim;

namespace {

struct Common {
    std::string config_path;
    std::string out_dir;
    int threads = 0;
    bool plot = true;
};

ExperimentConfig load_or_default(const Common& c) {
    ExperimentConfig cfg;
    if (!c.config_path.empty())
        cfg = load_config(c.config_path);
    if (!c.out_dir.empty())
        cfg.output.directory = c.out_dir;
    else if (const char* env = std::getenv("RBSIM_OUT_DIR"); env && *env && c.out_dir.empty()
             && cfg.output.directory == "out")
        cfg.output.directory = env;
    return cfg;
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0)
        omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

fs::path ensure_out_dir(const ExperimentConfig& cfg) {
    fs::path dir(cfg.output.directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw io_error("cannot create output directory: " + dir.string());
    return dir;
}

int cmd_mode(const Common& common, const std::string& format) {
    ExperimentConfig cfg = load_or_default(common);
    apply_threads(common.threads);
    const fs::path dir = ensure_out_dir(cfg);

    const ModeSolution sol = solve_mode(cfg.geometry, cfg.grid, cfg.foxli);
    std::printf("eta_t       %.10g\n", sol.eta_t);
    std::printf("gamma       %.10g\n", sol.gamma_magnitude);
    std::printf("iterations  %d\n", sol.iterations_used);
    std::printf("converged   %s\n", sol.converged ? "yes" : "no");
    if (sol.collapsed) {
        std::printf("collapsed   yes\n");
    } else {
        const ModeRadii r = mode_radius(sol);
        std::printf("rms_radius_m        %.10g\n", r.rms_m);
        std::printf("enclosed_865_radius_m %.10g\n", r.enclosed_865_m);
    }
    if (format == "csv" || format == "both")
        dump_field_csv(sol.mode, (dir / "mode_field.csv").string());
    if (format == "bin" || format == "both")
        dump_field_binary(sol.mode, (dir / "mode_field.bin").string());
    std::printf("field dump written to %s\n", dir.string().c_str());
    return 0;
}

int cmd_sweep(const Common& common, const std::string& axis, double start, double stop,
              int steps, bool have_range) {
    ExperimentConfig cfg = load_or_default(common);
    if (!axis.empty())
        cfg.sweep.axis = axis[0];
    if (have_range) {
        cfg.sweep.start_m = start;
        cfg.sweep.stop_m = stop;
        cfg.sweep.steps = steps;
    }
    cfg.sweep.validate();
    apply_threads(common.threads);
    const fs::path dir = ensure_out_dir(cfg);

    const SweepResult result = run_sweep(cfg);
    const std::string stem = std::string("sweep_") + cfg.sweep.axis;
    const fs::path csv = dir / (stem + ".csv");
    emit_csv(result, csv.string());
    std::printf("wrote %s (%zu points)\n", csv.string().c_str(), result.points.size());
    if (common.plot && cfg.output.emit_plots) {
        emit_plot(result, PlotKind::power, (dir / (stem + "_power.svg")).string());
        emit_plot(result, PlotKind::efficiency, (dir / (stem + "_eta.svg")).string());
        std::printf("wrote %s and %s\n", (dir / (stem + "_power.svg")).string().c_str(),
                    (dir / (stem + "_eta.svg")).string().c_str());
    }
    return 0;
}

int cmd_safety(const Common& common, SafetyParams s, bool have_area,
               const std::string& csv_path) {
    if (!common.config_path.empty()) {
        const ExperimentConfig cfg = load_config(common.config_path);
        s.reflectivity = cfg.geometry.rx_reflectivity;
        s.cavity_length_m = cfg.geometry.distance_m();
        if (!have_area)
            s.beam_area_m2 = M_PI * cfg.geometry.rx.aperture_m * cfg.geometry.rx.aperture_m;
    }
    const ExposureResult r = radiant_exposure(s);
    std::printf("cavity length L          %.10g m\n", s.cavity_length_m);
    std::printf("light speed c            %.10g m/s\n", s.light_speed_m_s);
    std::printf("storage time t_s         %.10g s\n", r.t_s_s);
    std::printf("output beam power P_o    %.10g W\n", s.p_o_w);
    std::printf("intra-cavity power P_s   %.10g W\n", r.p_s_w);
    std::printf("beam cross-section A_r   %.10g m^2\n", s.beam_area_m2);
    std::printf("radiant exposure E_r     %.10g J/m^2\n", r.e_r_j_m2);
    std::printf("max permissible exposure %.10g J/m^2\n", s.mpe_j_m2);
    std::printf("verdict: %s\n", r.compliant ? "compliant" : "NOT compliant");
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out)
            throw io_error("cannot open for writing: " + csv_path);
        out << "p_o_w,reflectivity,cavity_length_m,light_speed_m_s,beam_area_m2,"
               "p_s_w,t_s_s,e_r_j_m2,compliant\n";
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", s.p_o_w,
                      s.reflectivity, s.cavity_length_m, s.light_speed_m_s, s.beam_area_m2,
                      r.p_s_w, r.t_s_s, r.e_r_j_m2, r.compliant ? 1 : 0);
        out << buf;
    }
    return r.compliant ? 0 : 2;
}

int cmd_stability(const Common& common, std::vector<double> distances) {
    const ExperimentConfig cfg = load_or_default(common);
    if (distances.empty())
        distances = {1.0, 2.0, 3.0, 3.5};
    std::printf("f_rr = %.10g m, boundary 4*f_rr = %.10g m\n",
                retro_focal_length(cfg.geometry.tx),
                4.0 * retro_focal_length(cfg.geometry.tx));
    std::printf("%12s  %-10s %s\n", "distance_m", "verdict", "margin_m");
    for (const double d : distances) {
        const StabilityResult r = cavity_stability(cfg.geometry.tx, cfg.geometry.rx, d);
        std::printf("%12g  %-10s %g\n", d, to_string(r.verdict), r.margin_m);
    }
    return 0;
}

int cmd_raytrace(const Common& common, int per_axis, double max_x, double max_theta,
                 int bounces) {
    const ExperimentConfig cfg = load_or_default(common);
    const double d = cfg.geometry.distance_m();

    RetroGeometry focusing = cfg.geometry.tx;
    RetroGeometry plain = focusing;
    plain.spacing_m = plain.focal_m;  // non-focusing reference device

    const auto fan_captured = [&](const RetroGeometry& g) {
        const auto path = cavity_trace_path(g, d);
        int captured = 0;
        for (int i = 0; i < per_axis; ++i) {
            for (int j = 0; j < per_axis; ++j) {
                RayState ray;
                ray.x_m = -max_x + 2.0 * max_x * i / (per_axis - 1);
                ray.theta_rad = -max_theta + 2.0 * max_theta * j / (per_axis - 1);
                if (trace_ray(ray, path, bounces).captured)
                    ++captured;
            }
        }
        return captured;
    };

    const int total = per_axis * per_axis;
    const int cap_focusing = fan_captured(focusing);
    const int cap_plain = fan_captured(plain);
    std::printf("fan: %d rays, |x| <= %g m, |theta| <= %g rad, %d bounces, d = %g m\n",
                total, max_x, max_theta, bounces, d);
    std::printf("focusing retroreflector (l > f): %d / %d captured\n", cap_focusing, total);
    std::printf("plain retroreflector   (l = f): %d / %d captured\n", cap_plain, total);
    return 0;
}

int cmd_calibrate(const Common& common, double target) {
    const ExperimentConfig cfg = load_or_default(common);
    PowerModelParams p = cfg.resolved_power();
    const double g = calibrate_gain(p, target);
    std::printf("g0_lg = %.10g for %.10g W beam power at eta_t = 1\n", g, target);
    p.g0_lg = g;
    std::printf("check: forward beam power = %.10g W\n", output_beam_power(1.0, p));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");
    CLI::App app{"resonant-beam wireless power transfer simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Common common;
    app.add_option("--config", common.config_path, "experiment config file");
    app.add_option("--out", common.out_dir, "output directory (default: RBSIM_OUT_DIR or ./out)");
    app.add_option("--threads", common.threads, "worker thread count (0 = all cores)");
    app.add_flag("--plot,!--no-plot", common.plot, "emit SVG plots");

    auto* mode = app.add_subcommand("mode", "solve the self-reproducing mode and dump the field");
    std::string format = "csv";
    mode->add_option("--format", format, "field dump format: csv, bin or both")
        ->check(CLI::IsMember({"csv", "bin", "both"}));

    auto* sweep = app.add_subcommand("sweep", "displacement sweep with CSV/plot output");
    std::string axis;
    double start = 0.0, stop = 0.0;
    int steps = 0;
    auto* oaxis = sweep->add_option("--axis", axis, "sweep axis: x, y or z")
                      ->check(CLI::IsMember({"x", "y", "z"}));
    auto* ostart = sweep->add_option("--start", start, "first displacement, meters");
    auto* ostop = sweep->add_option("--stop", stop, "last displacement, meters");
    auto* osteps = sweep->add_option("--steps", steps, "number of points");
    (void)oaxis;

    auto* safety = app.add_subcommand("safety", "radiant-exposure safety report");
    SafetyParams sp;
    safety->add_option("--power", sp.p_o_w, "output beam power, W");
    safety->add_option("--reflectivity", sp.reflectivity, "output mirror reflectivity");
    safety->add_option("--length", sp.cavity_length_m, "cavity length, m");
    safety->add_option("--light-speed", sp.light_speed_m_s, "light speed, m/s");
    auto* oarea = safety->add_option("--area", sp.beam_area_m2, "beam cross-section, m^2");
    safety->add_option("--mpe", sp.mpe_j_m2, "maximum permissible exposure, J/m^2");
    std::string safety_csv;
    safety->add_option("--csv", safety_csv, "also write the report as CSV");

    auto* stability = app.add_subcommand("stability", "cavity stability verdicts over distances");
    std::vector<double> distances;
    stability->add_option("--at", distances, "distances to check, meters");

    auto* raytrace = app.add_subcommand("raytrace", "ray-capture comparison of l>f vs l=f");
    int per_axis = 10, bounces = 500;
    double max_x = 2e-3, max_theta = 5e-3;
    raytrace->add_option("--per-axis", per_axis, "fan resolution per axis");
    raytrace->add_option("--max-x", max_x, "fan half-width, m");
    raytrace->add_option("--max-theta", max_theta, "fan half-angle, rad");
    raytrace->add_option("--bounces", bounces, "round trips that count as captured");

    auto* calibrate = app.add_subcommand("calibrate", "solve g0_lg for a target beam power");
    double target = 5.0;
    calibrate->add_option("--target-beam-w", target, "beam power at eta_t = 1, W");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mode->parsed())
            return cmd_mode(common, format);
        if (sweep->parsed()) {
            const bool have_range = *ostart || *ostop || *osteps;
            if (have_range && !(*ostart && *ostop && *osteps))
                throw config_error("--start, --stop and --steps must be given together");
            return cmd_sweep(common, axis, start, stop, steps, have_range);
        }
        if (safety->parsed())
            return cmd_safety(common, sp, static_cast<bool>(*oarea), safety_csv);
        if (stability->parsed())
            return cmd_stability(common, distances);
        if (raytrace->parsed())
            return cmd_raytrace(common, per_axis, max_x, max_theta, bounces);
        if (calibrate->parsed())
            return cmd_calibrate(common, target);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
