#ifndef RBSIM_OPTICS_HPP
#define RBSIM_OPTICS_HPP

#include <array>
#include <memory>

#include "rbsim/fft.hpp"
#include "rbsim/field.hpp"
#include "rbsim/ray.hpp"

namespace rbsim {

// Full cavity description: two retroreflectors, the gain aperture between
// the transmitter retro and the air gap, and the receiver position
// (x0,y0,z0) plus its displacement (dx,dy,dz). z = 0 is the gain-medium
// front surface, which coincides with the transmitter retro's front focal
// plane; the air gap z0+dz ends on the receiver retro's front focal plane.
struct CavityGeometry {
    RetroGeometry tx{};
    RetroGeometry rx{};
    double gain_radius_m = 2.8e-3;
    double rx_reflectivity = 0.9;   // power extraction handled by the power model
    double x0_m = 0.0, y0_m = 0.0, z0_m = 2.0;
    double move_x_m = 0.0, move_y_m = 0.0, move_z_m = 0.0;
    double wavelength_m = 1.064e-6;

    // Effective angular acceptance of a retroreflector assembly: unity
    // transmission inside the half-angle, Gaussian amplitude roll-off of
    // width accept_roll_rad beyond it. Applied once per reflection.
    double accept_half_angle_rad = 0.05;
    double accept_roll_rad = 0.025;

    double distance_m() const { return z0_m + move_z_m; }
    double offset_x_m() const { return x0_m + move_x_m; }
    double offset_y_m() const { return y0_m + move_y_m; }

    void validate() const;
};

// ---- Elementary field-transfer operators (pure; each returns a new grid).

// Angular-spectrum free-space propagation over d_m >= 0. Evanescent
// components are zeroed, so the kernel is unit-modulus on the propagating
// band and total power is conserved for band-limited fields.
ComplexFieldGrid propagate(const ComplexFieldGrid& field, double d_m);

// Spectral-domain lateral translation by (sx, sy). Content must stay inside
// the guard band: |s| < window/4 or shift_overflow is thrown.
ComplexFieldGrid shift(const ComplexFieldGrid& field, double sx_m, double sy_m);

// Hard circular apertures.
ComplexFieldGrid apply_gain_aperture(const ComplexFieldGrid& field, double radius_m);
ComplexFieldGrid apply_mirror(const ComplexFieldGrid& field, double radius_m);

// Thin-lens phase exp(-i pc (x^2+y^2) / (lambda f)) inside radius_m, zero
// outside. Throws aliasing_risk when the grid cannot sample the chirp
// (dx > lambda f / (2 r) at the largest on-grid radius inside the aperture).
ComplexFieldGrid apply_lens(const ComplexFieldGrid& field, double focal_m,
                            double radius_m);

// Retroreflector pass referenced to the front focal plane, as the explicit
// element chain: propagate(f) lens propagate(l) mirror mirror propagate(l)
// lens propagate(f). Needs a grid fine enough for the lens chirp, so it is
// practical on small windows only; the cavity round trip uses the folded
// equivalent below.
ComplexFieldGrid retro_reflect(const ComplexFieldGrid& field, const RetroGeometry& g);

// Folded retroreflector pass: aperture + lens(f_rr) chirp + parity flip.
// Equal to the element chain in the paraxial continuum (unit-tested against
// it on a fine grid) and sampleable at production grids.
ComplexFieldGrid retro_reflect_folded(const ComplexFieldGrid& field, const RetroGeometry& g);

// ---- Cavity round trip.
//
// One loop of the self-consistent field equation starting at the gain plane:
// air gap to the receiver, receiver retro, air gap back, gain aperture,
// transmitter retro, gain aperture. The receiver mirror reflectivity is NOT
// applied (the analytic power model owns extraction losses).
//
// Fields are envelopes about the line joining the gain center and the
// displaced receiver center: the known geometric tilt offset/distance is
// carried analytically by evaluating the propagation kernels at tilted
// spatial frequencies, and the opposite-sign spectral shifts re-center each
// plane on its own device axis. On axis this reduces to the lab frame
// exactly. Off axis it keeps the envelope band-limited at any offset, which
// a grid carrying the raw tilt phase could not do at production sizes.
class RoundTrip {
public:
    enum class StartPlane { gain, receiver };

    RoundTrip(const CavityGeometry& geom, const GridSpec& grid,
              StartPlane start = StartPlane::gain);
    ~RoundTrip();
    RoundTrip(RoundTrip&&) noexcept;
    RoundTrip& operator=(RoundTrip&&) noexcept;

    const CavityGeometry& geometry() const;
    const GridSpec& grid() const;

    // In-place application to the raw sample buffer (size n*n).
    void apply(std::vector<cplx>& u) const;

    // Same, recording the four leg power ratios (gain->receiver,
    // receiver->gain, arrival into the gain, the final gain pass); their
    // product equals the full round-trip power ratio by construction.
    void apply_with_checkpoints(std::vector<cplx>& u, std::array<double, 4>& legs) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Pure one-shot round trip per the operator contract above.
ComplexFieldGrid round_trip(const ComplexFieldGrid& field, const CavityGeometry& geom);

} // namespace rbsim

#endif
