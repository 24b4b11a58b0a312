#include "rbsim/ray.hpp"

#include <cmath>

namespace rbsim {

void RetroGeometry::validate() const {
    if (!(focal_m > 0.0))
        throw invalid_geometry("retroreflector focal length must be positive");
    if (spacing_m < focal_m)
        throw invalid_geometry(
            "retroreflector spacing below focal length (divergent, not modeled)");
    if (!(aperture_m > 0.0))
        throw invalid_geometry("retroreflector aperture must be positive");
}

double retro_focal_length(const RetroGeometry& g) {
    g.validate();
    if (g.spacing_m == g.focal_m)
        return std::numeric_limits<double>::infinity();
    const double f = g.focal_m;
    return 1.0 / (2.0 * g.spacing_m / (f * f) - 2.0 / f);
}

RayMatrix retro_matrix(const RetroGeometry& g) {
    const double frr = retro_focal_length(g);
    const double c = std::isinf(frr) ? 0.0 : 1.0 / frr;
    return {-1.0, 0.0, c, -1.0};
}

RayMatrix retro_matrix_elementary(const RetroGeometry& g) {
    g.validate();
    const RayMatrix fs_f = RayMatrix::free_space(g.focal_m);
    const RayMatrix fs_l = RayMatrix::free_space(g.spacing_m);
    const RayMatrix lens = RayMatrix::thin_lens(g.focal_m);
    return fs_f * lens * fs_l * RayMatrix::flat_mirror() * fs_l * lens * fs_f;
}

StabilityResult cavity_stability(const RetroGeometry& tx, const RetroGeometry& rx,
                                 double distance_m) {
    if (!(distance_m > 0.0))
        throw invalid_distance("cavity distance must be positive");
    if (!(tx == rx))
        throw not_supported("stability criterion is defined for the symmetric cavity only");
    const double frr = retro_focal_length(tx);
    StabilityResult r;
    r.f_rr_m = frr;
    if (std::isinf(frr)) {
        r.verdict = StabilityVerdict::marginal;
        r.margin_m = std::numeric_limits<double>::infinity();
        return r;
    }
    r.margin_m = 4.0 * frr - distance_m;
    r.verdict = (distance_m < 4.0 * frr) ? StabilityVerdict::stable
                                         : StabilityVerdict::unstable;
    return r;
}

const char* to_string(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::stable: return "stable";
        case StabilityVerdict::marginal: return "marginal";
        case StabilityVerdict::unstable: return "unstable";
    }
    return "?";
}

TraceResult trace_ray(RayState ray, std::span<const TraceElement> path, int max_bounces) {
    if (max_bounces < 1)
        throw invalid_geometry("trace_ray: max_bounces must be >= 1");
    for (int bounce = 1; bounce <= max_bounces; ++bounce) {
        for (const TraceElement& e : path) {
            if (e.aperture_m > 0.0 && std::abs(ray.x_m) > e.aperture_m)
                return {false, bounce};
            ray = e.m.apply(ray);
        }
    }
    return {true, max_bounces};
}

std::vector<TraceElement> cavity_trace_path(const RetroGeometry& g, double distance_m) {
    if (!(distance_m > 0.0))
        throw invalid_distance("cavity distance must be positive");
    g.validate();
    const double f = g.focal_m;
    const double l = g.spacing_m;
    const double r = g.aperture_m;
    std::vector<TraceElement> path;
    // One retroreflector pass, aperture checked at each lens/mirror plane.
    auto retro = [&] {
        path.push_back({RayMatrix::free_space(f), 0.0});
        path.push_back({RayMatrix::thin_lens(f), r});
        path.push_back({RayMatrix::free_space(l), 0.0});
        path.push_back({RayMatrix::flat_mirror(), r});
        path.push_back({RayMatrix::free_space(l), 0.0});
        path.push_back({RayMatrix::thin_lens(f), r});
        path.push_back({RayMatrix::free_space(f), 0.0});
    };
    retro();                                                  // transmitter
    path.push_back({RayMatrix::free_space(distance_m), 0.0}); // to receiver
    retro();                                                  // receiver
    path.push_back({RayMatrix::free_space(distance_m), 0.0}); // back
    return path;
}

} // namespace rbsim
