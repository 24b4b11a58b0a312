#ifndef RBSIM_SWEEP_HPP
#define RBSIM_SWEEP_HPP

#include <cstdint>
#include <vector>

#include "rbsim/config.hpp"

namespace rbsim {

struct SweepPoint {
    double displacement_m = 0.0;
    double eta_t = 0.0;
    double beam_power_w = 0.0;
    double electrical_power_w = 0.0;
    int iterations = 0;
    bool converged = false;
    double mode_radius_m = 0.0;  // enclosed-86.5%-power radius; 0 when collapsed
};

struct SweepResult {
    char axis = 'x';
    std::vector<SweepPoint> points;       // ordered by displacement
    std::uint64_t config_hash = 0;
    std::string version;
};

// Solve every sweep point (independent; OpenMP across points, results ordered
// by displacement regardless of completion order). A solver fault at one
// point is recorded in its row with converged = false and does not abort the
// sweep.
SweepResult run_sweep(const ExperimentConfig& cfg);

// One displacement -> one point, same path run_sweep takes per point.
SweepPoint solve_sweep_point(const ExperimentConfig& cfg, double displacement_m);

} // namespace rbsim

#endif
