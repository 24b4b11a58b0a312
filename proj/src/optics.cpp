#include "rbsim/optics.hpp"

#include <algorithm>
#include <cmath>

#include "rbsim/kernels.hpp"

namespace rbsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Largest grid radius that carries samples inside an aperture of radius r:
// the aperture edge if it is on the grid, else the window half-diagonal.
double max_on_grid_radius(const GridSpec& spec, double r) {
    return std::min(r, spec.window_m * M_SQRT1_2);
}

void check_lens_sampling(const GridSpec& spec, double wavelength, double focal, double r) {
    const double bound = lens_sampling_bound(wavelength, focal, max_on_grid_radius(spec, r));
    if (spec.dx() > bound)
        throw aliasing_risk("lens phase under-sampled: dx = " + std::to_string(spec.dx()) +
                            " m exceeds bound " + std::to_string(bound) + " m");
}

// H(nu; d) with evanescent components zeroed. The raw phase k*d reaches 1e7
// rad at bench distances, so it is accumulated in long double and reduced
// modulo one cycle; otherwise the semigroup identity H(d1)H(d2) = H(d1+d2)
// drifts at the 1e-9 level.
cplx propagation_factor(double wavelength, double d, double nux, double nuy) {
    const double sx = wavelength * nux;
    const double sy = wavelength * nuy;
    const double arg = 1.0 - sx * sx - sy * sy;
    if (arg <= 0.0)
        return {0.0, 0.0};
    const long double cycles = static_cast<long double>(d) /
                               static_cast<long double>(wavelength) *
                               sqrtl(static_cast<long double>(arg));
    const double phase =
        static_cast<double>(kTwoPi * (cycles - floorl(cycles)));
    return {std::cos(phase), std::sin(phase)};
}

// Amplitude transmission of the retro assembly at incidence angle theta.
double acceptance_factor(double theta, double half_angle, double roll) {
    if (theta <= half_angle)
        return 1.0;
    if (roll <= 0.0)
        return 0.0;
    const double t = (theta - half_angle) / roll;
    return std::exp(-0.5 * t * t);
}

std::vector<cplx> spectral_apply(const ComplexFieldGrid& field,
                                 const std::vector<cplx>& kernel) {
    std::vector<cplx> v = field.values();
    Fft2d fft(field.n());
    fft.forward(v.data());
    kernels::multiply(v.data(), kernel.data(), v.size());
    fft.inverse(v.data());
    return v;
}

ComplexFieldGrid apply_disc_mask(const ComplexFieldGrid& field, double radius_m,
                                 const char* what) {
    if (!(radius_m > 0.0))
        throw invalid_geometry(std::string(what) + ": radius must be positive");
    ComplexFieldGrid out = field;
    const std::size_t n = out.n();
    const double r2 = radius_m * radius_m;
#pragma omp parallel for schedule(static)
    for (long long iy = 0; iy < static_cast<long long>(n); ++iy) {
        const double y = out.spec().coord(static_cast<std::size_t>(iy));
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double x = out.spec().coord(ix);
            if (x * x + y * y > r2)
                out.at(ix, static_cast<std::size_t>(iy)) = cplx(0.0, 0.0);
        }
    }
    return out;
}

} // namespace

void CavityGeometry::validate() const {
    tx.validate();
    rx.validate();
    if (!(gain_radius_m > 0.0))
        throw invalid_geometry("gain radius must be positive");
    if (!(rx_reflectivity > 0.0) || !(rx_reflectivity < 1.0))
        throw invalid_geometry("receiver reflectivity must lie in (0,1)");
    if (!(distance_m() > 0.0))
        throw invalid_geometry("transmitter and receiver must be separated (z0+dz > 0)");
    if (!(wavelength_m > 0.0))
        throw invalid_geometry("wavelength must be positive");
    if (!(accept_half_angle_rad > 0.0) || accept_roll_rad < 0.0)
        throw invalid_geometry("acceptance angles must be positive (roll may be 0)");
}

ComplexFieldGrid propagate(const ComplexFieldGrid& field, double d_m) {
    if (d_m < 0.0)
        throw invalid_distance("propagate: negative distance (back-propagation not modeled)");
    const std::size_t n = field.n();
    const double dx = field.dx();
    const double lam = field.wavelength();
    std::vector<cplx> kernel(n * n);
#pragma omp parallel for schedule(static)
    for (long long iy = 0; iy < static_cast<long long>(n); ++iy) {
        const double nuy = fft_frequency(static_cast<std::size_t>(iy), n, dx);
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double nux = fft_frequency(ix, n, dx);
            kernel[static_cast<std::size_t>(iy) * n + ix] =
                propagation_factor(lam, d_m, nux, nuy);
        }
    }
    ComplexFieldGrid out = field;
    out.values() = spectral_apply(field, kernel);
    return out;
}

ComplexFieldGrid shift(const ComplexFieldGrid& field, double sx_m, double sy_m) {
    const double guard = field.spec().window_m / 4.0;
    if (std::abs(sx_m) >= guard || std::abs(sy_m) >= guard)
        throw shift_overflow("shift exceeds the window/4 guard band; enlarge the window");
    const std::size_t n = field.n();
    const double dx = field.dx();
    std::vector<cplx> kernel(n * n);
    // Forward transform kernel here is exp(-2 pi i nu x), so translating
    // content by +s takes the conjugate shift factor exp(-2 pi i nu s).
#pragma omp parallel for schedule(static)
    for (long long iy = 0; iy < static_cast<long long>(n); ++iy) {
        const double nuy = fft_frequency(static_cast<std::size_t>(iy), n, dx);
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double nux = fft_frequency(ix, n, dx);
            const double phase = -kTwoPi * (nux * sx_m + nuy * sy_m);
            kernel[static_cast<std::size_t>(iy) * n + ix] = {std::cos(phase), std::sin(phase)};
        }
    }
    ComplexFieldGrid out = field;
    out.values() = spectral_apply(field, kernel);
    return out;
}

ComplexFieldGrid apply_gain_aperture(const ComplexFieldGrid& field, double radius_m) {
    return apply_disc_mask(field, radius_m, "gain aperture");
}

ComplexFieldGrid apply_mirror(const ComplexFieldGrid& field, double radius_m) {
    return apply_disc_mask(field, radius_m, "mirror");
}

ComplexFieldGrid apply_lens(const ComplexFieldGrid& field, double focal_m, double radius_m) {
    if (!(focal_m > 0.0))
        throw invalid_geometry("lens focal length must be positive");
    if (!(radius_m > 0.0))
        throw invalid_geometry("lens radius must be positive");
    check_lens_sampling(field.spec(), field.wavelength(), focal_m, radius_m);

    ComplexFieldGrid out = field;
    const std::size_t n = out.n();
    const double r2 = radius_m * radius_m;
    const double c = -M_PI / (field.wavelength() * focal_m);
#pragma omp parallel for schedule(static)
    for (long long iy = 0; iy < static_cast<long long>(n); ++iy) {
        const double y = out.spec().coord(static_cast<std::size_t>(iy));
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double x = out.spec().coord(ix);
            const double rr = x * x + y * y;
            cplx& z = out.at(ix, static_cast<std::size_t>(iy));
            if (rr > r2) {
                z = cplx(0.0, 0.0);
            } else {
                const double phase = c * rr;
                z *= cplx(std::cos(phase), std::sin(phase));
            }
        }
    }
    return out;
}

ComplexFieldGrid retro_reflect(const ComplexFieldGrid& field, const RetroGeometry& g) {
    g.validate();
    ComplexFieldGrid u = propagate(field, g.focal_m);
    u = apply_lens(u, g.focal_m, g.aperture_m);
    u = propagate(u, g.spacing_m);
    u = apply_mirror(u, g.aperture_m);
    u = apply_mirror(u, g.aperture_m);
    u = propagate(u, g.spacing_m);
    u = apply_lens(u, g.focal_m, g.aperture_m);
    u = propagate(u, g.focal_m);
    return u;
}

ComplexFieldGrid retro_reflect_folded(const ComplexFieldGrid& field, const RetroGeometry& g) {
    const double frr = retro_focal_length(g);
    ComplexFieldGrid u = std::isinf(frr) ? apply_mirror(field, g.aperture_m)
                                         : apply_lens(field, frr, g.aperture_m);
    ComplexFieldGrid out = u;
    kernels::parity_flip(u.data(), out.data(), u.n());
    return out;
}

// ---------------------------------------------------------------------------

struct RoundTrip::Impl {
    CavityGeometry geom;
    GridSpec grid;
    StartPlane start;
    Fft2d fft;
    std::vector<cplx> leg_fwd;   // K1: gain plane -> receiver focal plane
    std::vector<cplx> leg_back;  // K2: receiver focal plane -> gain plane
    std::vector<cplx> retro_tx;  // folded retro chirp + stop
    std::vector<cplx> retro_rx;
    std::vector<double> gain;    // gain aperture indicator

    Impl(const CavityGeometry& g, const GridSpec& gr, StartPlane s)
        : geom(g), grid(gr), start(s), fft(gr.n) {
        geom.validate();
        grid.validate();

        const double r_max =
            std::max({geom.tx.aperture_m, geom.rx.aperture_m, geom.gain_radius_m});
        if (!(grid.window_m > 4.0 * r_max))
            throw invalid_geometry("grid window must exceed twice the largest aperture "
                                   "diameter (guard band)");

        const std::size_t n = grid.n;
        const double dx = grid.dx();
        const double lam = geom.wavelength_m;
        const double dist = geom.distance_m();
        const double ox = geom.offset_x_m();
        const double oy = geom.offset_y_m();
        // Envelope-frame tilt of the forward leg, in spatial frequency.
        const double bx = ox / (dist * lam);
        const double by = oy / (dist * lam);

        leg_fwd.resize(n * n);
        leg_back.resize(n * n);
#pragma omp parallel for schedule(static)
        for (long long iy = 0; iy < static_cast<long long>(n); ++iy) {
            const double nuy = fft_frequency(static_cast<std::size_t>(iy), n, dx);
            for (std::size_t ix = 0; ix < n; ++ix) {
                const double nux = fft_frequency(ix, n, dx);
                leg_fwd[static_cast<std::size_t>(iy) * n + ix] =
                    leg_kernel(nux, nuy, bx, by, ox, oy, dist, lam);
                leg_back[static_cast<std::size_t>(iy) * n + ix] =
                    leg_kernel(nux, nuy, -bx, -by, -ox, -oy, dist, lam);
            }
        }

        retro_tx = folded_retro_mask(geom.tx);
        retro_rx = folded_retro_mask(geom.rx);

        gain.resize(n * n);
        const double rg2 = geom.gain_radius_m * geom.gain_radius_m;
        for (std::size_t iy = 0; iy < n; ++iy) {
            const double y = grid.coord(iy);
            for (std::size_t ix = 0; ix < n; ++ix) {
                const double x = grid.coord(ix);
                gain[iy * n + ix] = (x * x + y * y <= rg2) ? 1.0 : 0.0;
            }
        }
    }

    cplx leg_kernel(double nux, double nuy, double bx, double by, double sx, double sy,
                    double dist, double lam) const {
        // Propagation sampled at the tilted frequency, spectral re-centering
        // onto the destination device axis, and the retro acceptance of the
        // reflection that terminates the leg.
        const cplx h = propagation_factor(lam, dist, nux + bx, nuy + by);
        const double phase = kTwoPi * ((nux + bx) * sx + (nuy + by) * sy);
        const double theta =
            lam * std::sqrt((nux + bx) * (nux + bx) + (nuy + by) * (nuy + by));
        const double a = acceptance_factor(theta, geom.accept_half_angle_rad,
                                           geom.accept_roll_rad);
        return h * cplx(std::cos(phase), std::sin(phase)) * a;
    }

    std::vector<cplx> folded_retro_mask(const RetroGeometry& rg) const {
        rg.validate();
        const double frr = retro_focal_length(rg);
        if (!std::isinf(frr))
            check_lens_sampling(grid, geom.wavelength_m, frr, rg.aperture_m);
        const std::size_t n = grid.n;
        std::vector<cplx> m(n * n);
        const double r2 = rg.aperture_m * rg.aperture_m;
        const double c = std::isinf(frr) ? 0.0 : -M_PI / (geom.wavelength_m * frr);
        for (std::size_t iy = 0; iy < n; ++iy) {
            const double y = grid.coord(iy);
            for (std::size_t ix = 0; ix < n; ++ix) {
                const double x = grid.coord(ix);
                const double rr = x * x + y * y;
                m[iy * n + ix] = (rr > r2) ? cplx(0.0, 0.0)
                                           : cplx(std::cos(c * rr), std::sin(c * rr));
            }
        }
        return m;
    }

    void spectral(std::vector<cplx>& u, const std::vector<cplx>& k) const {
        fft.forward(u.data());
        kernels::multiply(u.data(), k.data(), u.size());
        fft.inverse(u.data());
    }

    void retro(std::vector<cplx>& u, const std::vector<cplx>& mask,
               std::vector<cplx>& tmp) const {
        kernels::multiply(u.data(), mask.data(), u.size());
        tmp.resize(u.size());
        kernels::parity_flip(u.data(), tmp.data(), grid.n);
        u.swap(tmp);
    }

    void run(std::vector<cplx>& u, std::array<double, 4>* legs) const {
        std::vector<cplx> tmp;
        const std::size_t n = grid.n;
        auto pw = [&](const std::vector<cplx>& v) {
            return kernels::power_sum_rows(v.data(), n);
        };
        double p0 = 0.0;
        if (legs) p0 = pw(u);

        auto from_gain = [&] {
            spectral(u, leg_fwd);                       // air gap out
            if (legs) { const double p = pw(u); (*legs)[0] = p / p0; p0 = p; }
            retro(u, retro_rx, tmp);                    // receiver retro
            spectral(u, leg_back);                      // air gap back
            if (legs) { const double p = pw(u); (*legs)[1] = p / p0; p0 = p; }
            kernels::multiply_real(u.data(), gain.data(), u.size());
            retro(u, retro_tx, tmp);                    // transmitter retro
            if (legs) { const double p = pw(u); (*legs)[2] = p / p0; p0 = p; }
            kernels::multiply_real(u.data(), gain.data(), u.size());
            if (legs) { const double p = pw(u); (*legs)[3] = p / p0; }
        };
        auto from_receiver = [&] {
            retro(u, retro_rx, tmp);
            spectral(u, leg_back);
            if (legs) { const double p = pw(u); (*legs)[0] = p / p0; p0 = p; }
            kernels::multiply_real(u.data(), gain.data(), u.size());
            retro(u, retro_tx, tmp);
            if (legs) { const double p = pw(u); (*legs)[1] = p / p0; p0 = p; }
            kernels::multiply_real(u.data(), gain.data(), u.size());
            if (legs) { const double p = pw(u); (*legs)[2] = p / p0; p0 = p; }
            spectral(u, leg_fwd);
            if (legs) { const double p = pw(u); (*legs)[3] = p / p0; }
        };

        if (start == StartPlane::gain)
            from_gain();
        else
            from_receiver();
    }
};

RoundTrip::RoundTrip(const CavityGeometry& geom, const GridSpec& grid, StartPlane start)
    : impl_(std::make_unique<Impl>(geom, grid, start)) {}
RoundTrip::~RoundTrip() = default;
RoundTrip::RoundTrip(RoundTrip&&) noexcept = default;
RoundTrip& RoundTrip::operator=(RoundTrip&&) noexcept = default;

const CavityGeometry& RoundTrip::geometry() const { return impl_->geom; }
const GridSpec& RoundTrip::grid() const { return impl_->grid; }

void RoundTrip::apply(std::vector<cplx>& u) const { impl_->run(u, nullptr); }

void RoundTrip::apply_with_checkpoints(std::vector<cplx>& u,
                                       std::array<double, 4>& legs) const {
    impl_->run(u, &legs);
}

ComplexFieldGrid round_trip(const ComplexFieldGrid& field, const CavityGeometry& geom) {
    if (field.wavelength() != geom.wavelength_m)
        throw invalid_geometry("round_trip: field and geometry wavelengths differ");
    RoundTrip rt(geom, field.spec());
    ComplexFieldGrid out = field;
    rt.apply(out.values());
    return out;
}

} // namespace rbsim
