#ifndef RBSIM_FOXLI_HPP
#define RBSIM_FOXLI_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "rbsim/optics.hpp"

namespace rbsim {

struct FoxLiConfig {
    int max_iterations = 2000;
    double tolerance = 1e-4;      // relative eta spread over the window
    int stability_window = 10;

    enum class Seed { plane_wave, plane_wave_perturbed };
    Seed seed = Seed::plane_wave;
    std::uint64_t perturb_rng_seed = 0x5eedful;
    double perturb_amplitude = 1e-3;

    // Ritz extraction of the reported mode. A plane-wave seed spreads power
    // evenly over the low-loss transverse family, whose members differ in
    // round-trip loss by ~1e-6; power iteration alone cannot separate them
    // in any practical number of trips. After the efficiency estimate
    // settles, the solver probes the iterate's phase-line spectrum, projects
    // every line out, and reports the projection with the highest per-trip
    // power ratio as the self-reproducing mode.
    bool extract_mode = true;
    int probe_window = 128;
    int accum_window = 64;
    int max_lines = 8;

    void validate() const;
};

struct ModeSolution {
    ComplexFieldGrid mode;           // normalized, on the start plane
    double eta_t = 0.0;              // final per-trip power-ratio estimate
    double gamma_magnitude = 0.0;    // sqrt(eta_t)
    double mode_power_ratio = 0.0;   // per-trip ratio of the reported mode
    int iterations_used = 0;
    bool converged = false;
    bool collapsed = false;
    std::vector<double> eta_history;
    std::array<double, 4> leg_loss{}; // checkpoint ratios of the reported mode
};

// Power iteration on the cavity round trip from the gain plane (or the
// receiver plane; the efficiency is plane-independent).
ModeSolution solve_mode(const CavityGeometry& geom, const GridSpec& grid,
                        const FoxLiConfig& cfg,
                        RoundTrip::StartPlane start = RoundTrip::StartPlane::gain);

struct ModeRadii {
    double rms_m = 0.0;
    double enclosed_865_m = 0.0;  // Gaussian w-equivalent radius
};

// Radii of the solved mode. Throws degenerate_mode for a collapsed solution.
ModeRadii mode_radius(const ModeSolution& sol);

} // namespace rbsim

#endif
