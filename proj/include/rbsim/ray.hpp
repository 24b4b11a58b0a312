#ifndef RBSIM_RAY_HPP
#define RBSIM_RAY_HPP

#include <limits>
#include <span>
#include <vector>

#include "rbsim/errors.hpp"

namespace rbsim {

// Paraxial meridional ray: transverse displacement and slope.
struct RayState {
    double x_m = 0.0;
    double theta_rad = 0.0;
};

// 2x2 ABCD ray-transfer matrix, det == 1 for every passive element.
struct RayMatrix {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static RayMatrix identity() { return {}; }
    static RayMatrix free_space(double d_m) { return {1.0, d_m, 0.0, 1.0}; }
    static RayMatrix thin_lens(double f_m) { return {1.0, 0.0, -1.0 / f_m, 1.0}; }
    static RayMatrix flat_mirror() { return {}; }

    RayMatrix operator*(const RayMatrix& r) const {
        return {a * r.a + b * r.c, a * r.b + b * r.d,
                c * r.a + d * r.c, c * r.b + d * r.d};
    }
    RayState apply(const RayState& s) const {
        return {a * s.x_m + b * s.theta_rad, c * s.x_m + d * s.theta_rad};
    }
    double det() const { return a * d - b * c; }
};

// Cat's-eye retroreflector: plane mirror behind a convex lens.
// spacing == focal gives the plain retroreflector; spacing > focal adds the
// focusing power 1/f_rr that stabilizes the open cavity.
struct RetroGeometry {
    double focal_m = 0.0504;
    double spacing_m = 0.052;
    double aperture_m = 0.007;

    void validate() const;
    bool operator==(const RetroGeometry&) const = default;
};

// Effective focal length f_rr = 1 / (2 l / f^2 - 2 / f).
// Returns +infinity for spacing == focal (no focusing).
double retro_focal_length(const RetroGeometry& g);

// Round trip through the retroreflector referenced to its front focal plane:
// [[-1, 0], [1/f_rr, -1]].
RayMatrix retro_matrix(const RetroGeometry& g);

// The same matrix composed from the seven elementary factors
// (free_space(f) lens free_space(l) mirror free_space(l) lens free_space(f)).
RayMatrix retro_matrix_elementary(const RetroGeometry& g);

enum class StabilityVerdict { stable, marginal, unstable };

struct StabilityResult {
    StabilityVerdict verdict = StabilityVerdict::stable;
    double f_rr_m = 0.0;     // +inf when spacing == focal
    double margin_m = 0.0;   // 4 f_rr - d (undefined for marginal)
};

// Symmetric-cavity criterion d < 4 f_rr. Asymmetric input is refused.
StabilityResult cavity_stability(const RetroGeometry& tx, const RetroGeometry& rx,
                                 double distance_m);

const char* to_string(StabilityVerdict v);

// One station of a ray path: aperture check (skipped when radius <= 0),
// then the element matrix.
struct TraceElement {
    RayMatrix m;
    double aperture_m = 0.0;
};

struct TraceResult {
    bool captured = false;
    int bounces = 0;   // bounces completed, or the bounce index that escaped
};

// Iterate the path for up to max_bounces round trips, checking |x| against
// each element's aperture before applying it.
TraceResult trace_ray(RayState ray, std::span<const TraceElement> path, int max_bounces);

// Round-trip element path for the two-retroreflector cavity at distance d,
// starting from the transmitter-side focal plane. Used by the ray-capture
// comparison of the focusing and non-focusing retroreflectors.
std::vector<TraceElement> cavity_trace_path(const RetroGeometry& g, double distance_m);

} // namespace rbsim

#endif
