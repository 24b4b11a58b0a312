#include "rbsim/sweep.hpp"

#include "rbsim/version.hpp"

namespace rbsim {

SweepPoint solve_sweep_point(const ExperimentConfig& cfg, double displacement_m) {
    SweepPoint pt;
    pt.displacement_m = displacement_m;
    CavityGeometry geom = cfg.geometry;
    switch (cfg.sweep.axis) {
        case 'x': geom.move_x_m = displacement_m; break;
        case 'y': geom.move_y_m = displacement_m; break;
        case 'z': geom.move_z_m = displacement_m; break;
        default: throw config_error("sweep axis must be x, y or z");
    }
    const ModeSolution sol = solve_mode(geom, cfg.grid, cfg.foxli);
    pt.eta_t = sol.eta_t;
    pt.iterations = sol.iterations_used;
    pt.converged = sol.converged && !sol.collapsed;
    const PowerModelParams power = cfg.resolved_power();
    pt.beam_power_w = output_beam_power(sol.eta_t, power);
    pt.electrical_power_w = output_electrical_power(sol.eta_t, power);
    if (!sol.collapsed && sol.eta_t > 0.0)
        pt.mode_radius_m = mode_radius(sol).enclosed_865_m;
    return pt;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
    cfg.geometry.validate();
    cfg.grid.validate();
    cfg.foxli.validate();
    const SweepSpec& sw = cfg.sweep;
    if (sw.steps < 1)
        throw config_error("sweep steps must be >= 1");

    SweepResult result;
    result.axis = sw.axis;
    result.config_hash = config_hash(cfg);
    result.version = kVersion;
    result.points.resize(static_cast<std::size_t>(sw.steps));

    std::vector<double> disp(static_cast<std::size_t>(sw.steps));
    for (int i = 0; i < sw.steps; ++i)
        disp[static_cast<std::size_t>(i)] =
            (sw.steps == 1) ? sw.start_m
                            : sw.start_m + (sw.stop_m - sw.start_m) *
                                               static_cast<double>(i) /
                                               static_cast<double>(sw.steps - 1);

#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(sw.steps); ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            result.points[k] = solve_sweep_point(cfg, disp[k]);
        } catch (const error&) {
            SweepPoint failed;
            failed.displacement_m = disp[k];
            failed.converged = false;
            result.points[k] = failed;
        }
    }
    return result;
}

} // namespace rbsim
