#include "rbsim/foxli.hpp"

#include <algorithm>
#include <cmath>

#include "rbsim/kernels.hpp"

namespace rbsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kCollapsePower = 1e-30;

double buffer_power(const std::vector<cplx>& u, std::size_t n, double dx) {
    return kernels::power_sum_rows(u.data(), n) * dx * dx;
}

void normalize_buffer(std::vector<cplx>& u, double power) {
    kernels::scale(u.data(), cplx(1.0 / std::sqrt(power), 0.0), u.size());
}

// Portable deterministic uniform in [0,1) from a raw 64-bit draw.
double unit_draw(std::uint64_t& state) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state >> 11) * (1.0 / 9007199254740992.0);
}

bool window_converged(const std::vector<double>& hist, int window, double tol) {
    if (static_cast<int>(hist.size()) < window)
        return false;
    double lo = hist[hist.size() - window], hi = lo;
    for (std::size_t i = hist.size() - window; i < hist.size(); ++i) {
        lo = std::min(lo, hist[i]);
        hi = std::max(hi, hist[i]);
    }
    return hi > 0.0 && (hi - lo) / hi < tol;
}

// Naive windowed DFT of the iteration-index scalar sequence; returns the
// phase advances (rad/trip) of up to max_lines local spectral maxima.
std::vector<double> spectral_lines(const std::vector<cplx>& s, int max_lines) {
    const std::size_t m = s.size();
    std::vector<double> mag(m);
    for (std::size_t k = 0; k < m; ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t t = 0; t < m; ++t) {
            const double hann =
                0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(t) / static_cast<double>(m));
            const double ang = -kTwoPi * static_cast<double>(k * t % m) / static_cast<double>(m);
            acc += s[t] * hann * cplx(std::cos(ang), std::sin(ang));
        }
        mag[k] = std::abs(acc);
    }
    const double peak = *std::max_element(mag.begin(), mag.end());
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < m; ++k) {
        const double prev = mag[(k + m - 1) % m];
        const double next = mag[(k + 1) % m];
        if (mag[k] >= prev && mag[k] >= next && mag[k] > 0.01 * peak)
            idx.push_back(k);
    }
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
    if (static_cast<int>(idx.size()) > max_lines)
        idx.resize(static_cast<std::size_t>(max_lines));
    std::vector<double> phases;
    for (std::size_t k : idx) {
        const double f = (k < m / 2) ? static_cast<double>(k)
                                     : static_cast<double>(k) - static_cast<double>(m);
        phases.push_back(kTwoPi * f / static_cast<double>(m));
    }
    return phases;
}

} // namespace

void FoxLiConfig::validate() const {
    if (max_iterations < 1)
        throw invalid_geometry("foxli: max_iterations must be >= 1");
    if (!(tolerance > 0.0))
        throw invalid_geometry("foxli: tolerance must be positive");
    if (stability_window < 2)
        throw invalid_geometry("foxli: stability_window must be >= 2");
    if (extract_mode && (probe_window < 8 || accum_window < 4 || max_lines < 1))
        throw invalid_geometry("foxli: extraction windows too small");
}

ModeSolution solve_mode(const CavityGeometry& geom, const GridSpec& grid,
                        const FoxLiConfig& cfg, RoundTrip::StartPlane start) {
    cfg.validate();
    RoundTrip rt(geom, grid, start);
    const std::size_t n = grid.n;
    const double dx = grid.dx();

    ModeSolution sol;
    sol.mode = ComplexFieldGrid(grid, geom.wavelength_m);
    std::vector<cplx>& u = sol.mode.values();
    std::fill(u.begin(), u.end(), cplx(1.0, 0.0));
    if (cfg.seed == FoxLiConfig::Seed::plane_wave_perturbed) {
        std::uint64_t state = cfg.perturb_rng_seed ? cfg.perturb_rng_seed : 1;
        for (auto& z : u)
            z += cplx(cfg.perturb_amplitude * (2.0 * unit_draw(state) - 1.0),
                      cfg.perturb_amplitude * (2.0 * unit_draw(state) - 1.0));
    }
    normalize_buffer(u, buffer_power(u, n, dx));

    for (int t = 0; t < cfg.max_iterations; ++t) {
        rt.apply(u);
        const double p = buffer_power(u, n, dx);
        if (!std::isfinite(p))
            throw numeric_fault("solve_mode: non-finite field power at iteration " +
                                    std::to_string(t + 1), 0, 0);
        sol.eta_history.push_back(p);
        if (p < kCollapsePower) {
            sol.collapsed = true;
            sol.converged = true;
            sol.eta_t = 0.0;
            break;
        }
        normalize_buffer(u, p);
        if (window_converged(sol.eta_history, cfg.stability_window, cfg.tolerance)) {
            sol.converged = true;
            break;
        }
    }
    sol.iterations_used = static_cast<int>(sol.eta_history.size());
    if (!sol.collapsed)
        sol.eta_t = sol.eta_history.empty() ? 0.0 : sol.eta_history.back();
    sol.gamma_magnitude = std::sqrt(std::max(0.0, sol.eta_t));
    sol.mode_power_ratio = sol.eta_t;

    if (!sol.collapsed && cfg.extract_mode) {
        // Probe the phase-line spectrum of the settled iterate.
        const std::vector<cplx> u_ref = u;
        std::vector<cplx> v = u;
        std::vector<cplx> scalars;
        scalars.reserve(static_cast<std::size_t>(cfg.probe_window));
        bool aborted = false;
        for (int t = 0; t < cfg.probe_window; ++t) {
            rt.apply(v);
            const double p = buffer_power(v, n, dx);
            if (!(p > kCollapsePower)) { aborted = true; break; }
            normalize_buffer(v, p);
            scalars.push_back(kernels::inner_product_rows(u_ref.data(), v.data(), n) * dx * dx);
        }
        if (!aborted) {
            const std::vector<double> phases = spectral_lines(scalars, cfg.max_lines);
            std::vector<std::vector<cplx>> acc(phases.size(),
                                               std::vector<cplx>(n * n, cplx(0.0, 0.0)));
            for (int t = 0; t < cfg.accum_window; ++t) {
                rt.apply(v);
                const double p = buffer_power(v, n, dx);
                if (!(p > kCollapsePower)) { aborted = true; break; }
                normalize_buffer(v, p);
                for (std::size_t k = 0; k < phases.size(); ++k) {
                    const double ang = -phases[k] * static_cast<double>(t + 1);
                    kernels::accumulate_scaled(acc[k].data(), v.data(),
                                               cplx(std::cos(ang), std::sin(ang)), n * n);
                }
            }
            if (!aborted) {
                double best_ratio = -1.0;
                std::vector<cplx> best;
                for (auto& a : acc) {
                    const double p = buffer_power(a, n, dx);
                    if (!(p > kCollapsePower * static_cast<double>(n) * static_cast<double>(n)))
                        continue;
                    normalize_buffer(a, p);
                    std::vector<cplx> w = a;
                    rt.apply(w);
                    const double ratio = buffer_power(w, n, dx);
                    if (ratio > best_ratio) {
                        best_ratio = ratio;
                        best = std::move(a);
                    }
                }
                if (best_ratio >= 0.0) {
                    u = std::move(best);
                    sol.mode_power_ratio = best_ratio;
                }
            }
        }
    }

    if (!sol.collapsed) {
        const double p = buffer_power(u, n, dx);
        if (p > kCollapsePower) {
            normalize_buffer(u, p);
            std::vector<cplx> w = u;
            rt.apply_with_checkpoints(w, sol.leg_loss);
        }
    }
    return sol;
}

ModeRadii mode_radius(const ModeSolution& sol) {
    if (sol.collapsed || !(sol.eta_t > 0.0))
        throw degenerate_mode("mode_radius: collapsed or zero-efficiency solution");
    ModeRadii r;
    r.rms_m = rms_radius(sol.mode);
    r.enclosed_865_m = enclosed_power_radius(sol.mode, 0.865);
    return r;
}

} // namespace rbsim
