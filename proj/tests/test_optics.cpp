#include <doctest.h>

#include <cmath>
#include <random>

#include "rbsim/kernels.hpp"
#include "rbsim/optics.hpp"

using namespace rbsim;

namespace {

constexpr double kLambda = 1.064e-6;

// Production-legal fast grid: window above the 4*r guard, pitch below the
// folded-lens sampling bound.
GridSpec fast_grid() { return GridSpec{512, 0.030}; }

// Fine small-window grid on which the explicit retro element chain is
// sampleable (lens bound ~6.3 um at the on-grid corner radius).
GridSpec fine_grid() { return GridSpec{1024, 0.006}; }

CavityGeometry bench_geometry() {
    CavityGeometry g;
    g.tx = RetroGeometry{0.0504, 0.052, 0.007};
    g.rx = g.tx;
    return g;
}

ComplexFieldGrid random_field(const GridSpec& spec, std::uint64_t seed) {
    ComplexFieldGrid f(spec, kLambda);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& z : f.values())
        z = cplx(u(rng), u(rng));
    return f;
}

double rel_l2_phase_aligned(const ComplexFieldGrid& a, const ComplexFieldGrid& b) {
    const cplx c = kernels::inner_product_rows(a.data(), b.data(), a.n());
    const cplx rot = std::polar(1.0, -std::arg(c));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a.data()[i] - rot * b.data()[i]);
        den += std::norm(a.data()[i]);
    }
    return std::sqrt(num / den);
}

// Gaussian beam radius via the intensity second moment: w = 2 sigma_x.
double fitted_waist(const ComplexFieldGrid& f) {
    double sw = 0.0, sx2 = 0.0;
    for (std::size_t iy = 0; iy < f.n(); ++iy)
        for (std::size_t ix = 0; ix < f.n(); ++ix) {
            const double w = std::norm(f.at(ix, iy));
            const double x = f.spec().coord(ix);
            sw += w;
            sx2 += w * x * x;
        }
    return 2.0 * std::sqrt(sx2 / sw);
}

} // namespace

TEST_SUITE("wave optics") {

TEST_CASE("propagate rejects negative distance") {
    auto f = make_gaussian_field(fast_grid(), kLambda, 1e-3);
    CHECK_THROWS_AS(propagate(f, -0.1), invalid_distance);
}

TEST_CASE("propagate over zero distance is the identity") {
    auto f = make_gaussian_field(fast_grid(), kLambda, 1e-3);
    auto g = propagate(f, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(std::abs(g.data()[i] - f.data()[i]) < 1e-12);
}

TEST_CASE("plane wave picks up the on-axis phase only") {
    GridSpec spec{128, 0.03};
    auto f = make_uniform_field(spec, kLambda);
    const double d = 1.0;
    auto g = propagate(f, d);
    const double phase = 2.0 * M_PI / kLambda * d;
    const cplx want = std::polar(1.0, phase);
    for (std::size_t i = 0; i < g.size(); i += 37)
        CHECK(std::abs(g.data()[i] - want) < 1e-9);
}

TEST_CASE("gaussian spreads by the analytic waist law") {
    const double w0 = 0.5e-3;
    const double zr = M_PI * w0 * w0 / kLambda;  // 0.7383 m
    auto f = make_gaussian_field(fast_grid(), kLambda, w0);
    for (const double d : {0.1, 0.5, 1.0, 2.0}) {
        auto g = propagate(f, d);
        const double want = w0 * std::sqrt(1.0 + (d / zr) * (d / zr));
        CHECK(fitted_waist(g) == doctest::Approx(want).epsilon(0.01));
        CHECK(total_power(g) == doctest::Approx(total_power(f)).epsilon(1e-6));
    }
    // spot value quoted for d = 1 m
    CHECK(fitted_waist(propagate(f, 1.0)) == doctest::Approx(0.8417e-3).epsilon(0.01));
}

TEST_CASE("propagation composes: H(d1) H(d2) = H(d1+d2)") {
    auto f = make_gaussian_field(fast_grid(), kLambda, 0.7e-3);
    auto a = propagate(propagate(f, 0.4), 0.35);
    auto b = propagate(f, 0.75);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a.data()[i] - b.data()[i]);
        den += std::norm(b.data()[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-10);
}

TEST_CASE("shift identities") {
    auto f = make_gaussian_field(fast_grid(), kLambda, 0.8e-3);
    auto same = shift(f, 0.0, 0.0);
    for (std::size_t i = 0; i < f.size(); i += 13)
        CHECK(std::abs(same.data()[i] - f.data()[i]) < 1e-12);

    auto back = shift(shift(f, 1.3e-3, -0.9e-3), -1.3e-3, 0.9e-3);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        num += std::norm(back.data()[i] - f.data()[i]);
        den += std::norm(f.data()[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-10);
}

TEST_CASE("shift moves the centroid") {
    auto f = make_gaussian_field(fast_grid(), kLambda, 0.8e-3);
    auto g = shift(f, 1e-3, 0.0);
    const auto [cx, cy] = centroid(g);
    CHECK(std::abs(cx - 1e-3) <= f.dx());
    CHECK(std::abs(cy) <= f.dx());
}

TEST_CASE("shift commutes with propagation") {
    auto f = make_gaussian_field(fast_grid(), kLambda, 0.8e-3);
    auto a = shift(propagate(f, 0.8), 1.5e-3, 0.0);
    auto b = propagate(shift(f, 1.5e-3, 0.0), 0.8);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        num += std::norm(a.data()[i] - b.data()[i]);
        den += std::norm(b.data()[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-10);
}

TEST_CASE("shift guard band overflow") {
    auto f = make_gaussian_field(fast_grid(), kLambda, 0.8e-3);
    CHECK_THROWS_AS(shift(f, 0.0301 / 4.0, 0.0), shift_overflow);
}

TEST_CASE("apertures pass enclosed fields and clip area") {
    GridSpec spec{256, 0.02};
    auto g = make_gaussian_field(spec, kLambda, 1e-3);
    auto inside = apply_gain_aperture(g, 8e-3);
    // samples inside the stop are untouched; the clipped tail is negligible
    for (std::size_t iy = 0; iy < spec.n; iy += 3)
        for (std::size_t ix = 0; ix < spec.n; ix += 3) {
            const double x = spec.coord(ix), y = spec.coord(iy);
            if (x * x + y * y <= 8e-3 * 8e-3)
                CHECK(inside.at(ix, iy) == g.at(ix, iy));
        }
    CHECK(total_power(inside) == doctest::Approx(total_power(g)).epsilon(1e-12));

    // disc radius chosen so pi r^2 is half the window area
    auto u = make_uniform_field(spec, kLambda);
    const double r_half = spec.window_m / std::sqrt(2.0 * M_PI);
    auto clipped = apply_mirror(u, r_half);
    CHECK(total_power(clipped) == doctest::Approx(0.5 * total_power(u)).epsilon(0.02));

    // sub-pixel aperture keeps at most the few samples inside it
    auto tiny = apply_mirror(u, spec.dx() * 0.4);
    CHECK(total_power(tiny) <= total_power(u) * 4.0 / (256.0 * 256.0));

    // gaussian with waist r/4 loses under 1e-6 through the stop
    auto narrow = make_gaussian_field(spec, kLambda, 1e-3);
    auto stopped = apply_mirror(narrow, 4e-3);
    CHECK(total_power(narrow) - total_power(stopped) < 1e-6 * total_power(narrow));
}

TEST_CASE("lens phase value and structure") {
    // Chirp at 7 mm radius for the 50.4 mm lens: -pi r^2/(lambda f) = -2870.6 rad.
    const double phase = -M_PI * 0.007 * 0.007 / (kLambda * 0.0504);
    CHECK(phase == doctest::Approx(-2870.6).epsilon(0.1 / 2870.6));

    // On a legal grid the operator realizes exp(i * that chirp) pointwise.
    GridSpec spec = fast_grid();
    auto f = make_uniform_field(spec, kLambda);
    const double frr = 0.7938;
    auto g = apply_lens(f, frr, 7e-3);
    const std::size_t i = spec.n / 2 + 30, j = spec.n / 2;  // on-axis row sample
    const double x = spec.coord(i);
    const double want = -M_PI * x * x / (kLambda * frr);
    CHECK(std::abs(g.at(i, j) - std::polar(1.0, want)) < 1e-12);
    CHECK(std::abs(g.at(spec.n / 2, spec.n / 2) - cplx(1.0, 0.0)) < 1e-12);  // center: no shift
    CHECK(std::abs(std::abs(g.at(i, j)) - 1.0) < 1e-12);
}

TEST_CASE("lens rejects an under-sampled chirp") {
    auto f = make_uniform_field(fast_grid(), kLambda);
    CHECK_THROWS_AS(apply_lens(f, 0.0504, 7e-3), aliasing_risk);
}

TEST_CASE("conjugate chirp restores the field inside the aperture") {
    GridSpec spec = fast_grid();
    auto f = make_gaussian_field(spec, kLambda, 2e-3);
    const double frr = 0.7938, r = 7e-3;
    auto g = apply_lens(f, frr, r);
    // multiply by the conjugate chirp by hand
    for (std::size_t iy = 0; iy < spec.n; ++iy)
        for (std::size_t ix = 0; ix < spec.n; ++ix) {
            const double x = spec.coord(ix), y = spec.coord(iy);
            g.at(ix, iy) *= std::polar(1.0, M_PI * (x * x + y * y) / (kLambda * frr));
        }
    double num = 0.0, den = 0.0;
    for (std::size_t iy = 0; iy < spec.n; ++iy)
        for (std::size_t ix = 0; ix < spec.n; ++ix) {
            const double x = spec.coord(ix), y = spec.coord(iy);
            if (x * x + y * y > r * r)
                continue;
            num += std::norm(g.at(ix, iy) - f.at(ix, iy));
            den += std::norm(f.at(ix, iy));
        }
    CHECK(std::sqrt(num / den) < 1e-10);
}

TEST_CASE("plane wave through a lens focuses at the grid center") {
    GridSpec spec = fast_grid();
    auto f = make_uniform_field(spec, kLambda);
    const double frr = 0.7938;
    auto g = propagate(apply_lens(f, frr, 7e-3), frr);
    double best = 0.0;
    std::size_t bx = 0, by = 0;
    for (std::size_t iy = 0; iy < spec.n; ++iy)
        for (std::size_t ix = 0; ix < spec.n; ++ix)
            if (std::norm(g.at(ix, iy)) > best) {
                best = std::norm(g.at(ix, iy));
                bx = ix;
                by = iy;
            }
    CHECK(bx == spec.n / 2);
    CHECK(by == spec.n / 2);
}

TEST_CASE("explicit retro chain: zero in, zero out; power never increases") {
    const RetroGeometry g{0.0504, 0.052, 0.007};
    ComplexFieldGrid zero(fine_grid(), kLambda);
    auto out = retro_reflect(zero, g);
    CHECK(total_power(out) == 0.0);

    for (std::uint64_t s = 0; s < 6; ++s) {
        auto f = random_field(fine_grid(), 100 + s);
        const double pin = total_power(f);
        const double pout = total_power(retro_reflect(f, g));
        CHECK(pout <= pin * (1.0 + 1e-12));
    }
}

TEST_CASE("explicit retro chain preserves the axis of a centered gaussian") {
    const RetroGeometry g{0.0504, 0.052, 0.007};
    auto f = make_gaussian_field(fine_grid(), kLambda, 0.5e-3);
    auto out = retro_reflect(f, g);
    const auto [cx, cy] = centroid(out);
    CHECK(std::abs(cx) <= f.dx());
    CHECK(std::abs(cy) <= f.dx());
}

TEST_CASE("folded retro matches the explicit element chain on a fine grid") {
    const RetroGeometry g{0.0504, 0.052, 0.007};
    for (const auto& [w0, x0] : {std::pair{0.3e-3, 0.0}, {0.3e-3, 0.5e-3}, {0.5e-3, 0.0}}) {
        auto f = normalize(make_gaussian_field(fine_grid(), kLambda, w0, x0));
        auto chain = retro_reflect(f, g);
        auto folded = retro_reflect_folded(f, g);
        CHECK(rel_l2_phase_aligned(chain, folded) < 5e-3);
    }
}

TEST_CASE("round trip: zero field stays zero, power never grows") {
    CavityGeometry geom = bench_geometry();
    ComplexFieldGrid zero(fast_grid(), kLambda);
    CHECK(total_power(round_trip(zero, geom)) == 0.0);

    RoundTrip rt(geom, fast_grid());
    for (std::uint64_t s = 0; s < 8; ++s) {
        auto f = random_field(fast_grid(), 300 + s);
        const double pin = total_power(f);
        auto v = f.values();
        rt.apply(v);
        double pout = kernels::power_sum_rows(v.data(), fast_grid().n) *
                      fast_grid().dx() * fast_grid().dx();
        CHECK(pout <= pin * (1.0 + 1e-12));
    }
}

TEST_CASE("on-axis round trip keeps a gaussian centered") {
    CavityGeometry geom = bench_geometry();
    auto f = make_gaussian_field(fast_grid(), kLambda, 0.8e-3);
    auto g = round_trip(f, geom);
    const auto [cx, cy] = centroid(g);
    CHECK(std::abs(cx) <= f.dx());
    CHECK(std::abs(cy) <= f.dx());
}

TEST_CASE("leg checkpoint ratios multiply to the round-trip ratio") {
    CavityGeometry geom = bench_geometry();
    geom.move_x_m = 0.05;
    RoundTrip rt(geom, fast_grid());
    auto f = normalize(make_gaussian_field(fast_grid(), kLambda, 0.9e-3));
    auto u = f.values();
    std::array<double, 4> legs{};
    rt.apply_with_checkpoints(u, legs);
    const double total = kernels::power_sum_rows(u.data(), fast_grid().n) *
                         fast_grid().dx() * fast_grid().dx();
    const double product = legs[0] * legs[1] * legs[2] * legs[3] * total_power(f);
    CHECK(product == doctest::Approx(total).epsilon(1e-9));
}

TEST_CASE("x and y displacements act identically on a symmetric field") {
    auto base = normalize(make_gaussian_field(fast_grid(), kLambda, 0.8e-3));
    CavityGeometry gx = bench_geometry();
    gx.move_x_m = 0.06;
    CavityGeometry gy = bench_geometry();
    gy.move_y_m = 0.06;
    auto ux = base.values();
    auto uy = base.values();
    RoundTrip(gx, fast_grid()).apply(ux);
    RoundTrip(gy, fast_grid()).apply(uy);
    const double px = kernels::power_sum_rows(ux.data(), fast_grid().n);
    const double py = kernels::power_sum_rows(uy.data(), fast_grid().n);
    CHECK(px == doctest::Approx(py).epsilon(1e-9));
}

TEST_CASE("envelope round trip matches a lab-frame composition at small offset") {
    // At a 2 mm offset the raw tilt is still representable on the grid, so
    // the same loop can be composed from the public lab-frame operators.
    // Both routes must produce the same per-trip power ratios.
    const double off = 2e-3;
    CavityGeometry geom = bench_geometry();
    geom.move_x_m = off;
    const GridSpec spec = fast_grid();
    const double dist = geom.distance_m();
    const double beta = off / (dist * kLambda);

    // envelope route
    RoundTrip rt(geom, spec);
    auto env = make_uniform_field(spec, kLambda);
    auto ue = normalize(env).values();

    // lab route seed: same physical field, tilt carried on the grid
    auto lab = make_uniform_field(spec, kLambda);
    for (std::size_t iy = 0; iy < spec.n; ++iy)
        for (std::size_t ix = 0; ix < spec.n; ++ix)
            lab.at(ix, iy) *= std::polar(1.0, 2.0 * M_PI * beta * spec.coord(ix));
    ComplexFieldGrid ul = normalize(lab);

    const int trips = 40;
    std::vector<double> eta_env, eta_lab;
    for (int t = 0; t < trips; ++t) {
        rt.apply(ue);
        const double p = kernels::power_sum_rows(ue.data(), spec.n) * spec.dx() * spec.dx();
        eta_env.push_back(p);
        kernels::scale(ue.data(), cplx(1.0 / std::sqrt(p), 0.0), ue.size());
    }
    for (int t = 0; t < trips; ++t) {
        // re-center each leg onto the destination device axis: the receiver
        // sits at +off, so its local frame takes a -off content translation
        ComplexFieldGrid v = propagate(ul, dist);
        v = shift(v, -off, 0.0);
        v = retro_reflect_folded(v, geom.rx);
        v = propagate(v, dist);
        v = shift(v, off, 0.0);
        v = apply_gain_aperture(v, geom.gain_radius_m);
        v = retro_reflect_folded(v, geom.tx);
        v = apply_gain_aperture(v, geom.gain_radius_m);
        const double p = total_power(v);
        eta_lab.push_back(p);
        ul = normalize(v);
    }
    // the two routes sample the same continuum operator at frequencies offset
    // by the tilt, so they agree to discretization level, not to rounding
    for (int t = 0; t < trips; ++t)
        CHECK(eta_env[t] == doctest::Approx(eta_lab[t]).epsilon(1e-4));
}

TEST_CASE("geometry validation") {
    CavityGeometry g = bench_geometry();
    g.rx_reflectivity = 1.2;
    CHECK_THROWS_WITH_AS(g.validate(), doctest::Contains("reflectivity"), invalid_geometry);
    g = bench_geometry();
    g.z0_m = 0.0;
    CHECK_THROWS_AS(g.validate(), invalid_geometry);
    g = bench_geometry();
    g.move_z_m = -3.0;
    CHECK_THROWS_AS(g.validate(), invalid_geometry);
}

} // TEST_SUITE
