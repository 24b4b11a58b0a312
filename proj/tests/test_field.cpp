#include <doctest.h>

#include <cmath>
#include <random>

#include "rbsim/field.hpp"

using namespace rbsim;

namespace {

GridSpec small_grid(std::size_t n = 64, double window = 1.0) {
    GridSpec g;
    g.n = n;
    g.window_m = window;
    return g;
}

constexpr double kLambda = 1.064e-6;

ComplexFieldGrid random_field(const GridSpec& spec, std::uint64_t seed) {
    ComplexFieldGrid f(spec, kLambda);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& z : f.values())
        z = cplx(u(rng), u(rng));
    return f;
}

} // namespace

TEST_SUITE("field") {

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS((GridSpec{48, 1.0}.validate()), invalid_geometry);   // not power of two
    CHECK_THROWS_AS((GridSpec{32, 1.0}.validate()), invalid_geometry);   // too small
    CHECK_THROWS_AS((GridSpec{64, -1.0}.validate()), invalid_geometry);
    CHECK_NOTHROW((GridSpec{64, 1.0}.validate()));
}

TEST_CASE("total power of the zero field is zero") {
    ComplexFieldGrid f(small_grid(), kLambda);
    CHECK(total_power(f) == 0.0);
}

TEST_CASE("total power of a unit plane wave equals one") {
    // n = 64 samples of amplitude 1 over a 1 m window: 64^2 * (1/64)^2.
    auto f = make_uniform_field(small_grid(), kLambda);
    CHECK(total_power(f) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("analytically normalized gaussian has unit power") {
    GridSpec g = small_grid(256, 0.02);
    const double w = 1.5e-3;
    ComplexFieldGrid f = make_gaussian_field(g, kLambda, w);
    const double amp = std::sqrt(2.0 / (M_PI * w * w));
    for (auto& z : f.values())
        z *= amp;
    CHECK(total_power(f) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("total power flags the first non-finite sample") {
    auto f = make_uniform_field(small_grid(), kLambda);
    f.at(5, 3) = cplx(std::nan(""), 0.0);
    try {
        total_power(f);
        FAIL("expected numeric_fault");
    } catch (const numeric_fault& e) {
        CHECK(e.index_x == 5);
        CHECK(e.index_y == 3);
    }
}

TEST_CASE("normalize scales a power-4 field by one half") {
    auto f = make_uniform_field(small_grid(), kLambda, cplx(2.0, 0.0));
    CHECK(total_power(f) == doctest::Approx(4.0));
    auto g = normalize(f);
    CHECK(g.at(10, 10).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(total_power(g) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalize is idempotent and fixes random fields") {
    auto f = random_field(small_grid(), 42);
    auto g = normalize(f);
    CHECK(total_power(g) == doctest::Approx(1.0).epsilon(1e-12));
    auto h = normalize(g);
    for (std::size_t i = 0; i < h.size(); ++i)
        CHECK(std::abs(h.data()[i] - g.data()[i]) <= 1e-12);
}

TEST_CASE("normalize rejects the zero field") {
    ComplexFieldGrid f(small_grid(), kLambda);
    CHECK_THROWS_AS(normalize(f), degenerate_field);
}

TEST_CASE("total power is invariant under a global phase") {
    auto f = random_field(small_grid(), 7);
    const double p0 = total_power(f);
    const cplx rot = std::polar(1.0, 1.234);
    for (auto& z : f.values())
        z *= rot;
    CHECK(total_power(f) == doctest::Approx(p0).epsilon(1e-12));
}

TEST_CASE("centroid and rms radius of a centered gaussian") {
    GridSpec g = small_grid(256, 0.02);
    const double w = 1.2e-3;
    auto f = make_gaussian_field(g, kLambda, w);
    const auto [cx, cy] = centroid(f);
    CHECK(std::abs(cx) < 1e-9);
    CHECK(std::abs(cy) < 1e-9);
    // second moment of exp(-2 r^2 / w^2): rms radius w / sqrt(2)
    CHECK(rms_radius(f) == doctest::Approx(w / std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("centroid follows a 1 mm shift") {
    GridSpec g = small_grid(256, 0.02);
    auto f = make_gaussian_field(g, kLambda, 1.2e-3, 1e-3, 0.0);
    const auto [cx, cy] = centroid(f);
    CHECK(std::abs(cx - 1e-3) <= g.dx());
    CHECK(std::abs(cy) <= g.dx());
}

TEST_CASE("centroid translation property") {
    GridSpec g = small_grid(128, 0.02);
    const double a = 8 * g.dx(), b = -5 * g.dx();
    auto f0 = make_gaussian_field(g, kLambda, 1.5e-3);
    auto f1 = make_gaussian_field(g, kLambda, 1.5e-3, a, b);
    const auto c0 = centroid(f0);
    const auto c1 = centroid(f1);
    CHECK(std::abs(c1.first - (c0.first + a)) <= g.dx());
    CHECK(std::abs(c1.second - (c0.second + b)) <= g.dx());
}

TEST_CASE("single nonzero sample puts the centroid on that sample") {
    GridSpec g = small_grid();
    ComplexFieldGrid f(g, kLambda);
    f.at(40, 22) = cplx(0.0, 2.0);
    const auto [cx, cy] = centroid(f);
    CHECK(cx == doctest::Approx(g.coord(40)));
    CHECK(cy == doctest::Approx(g.coord(22)));
}

TEST_CASE("centroid rejects the zero field") {
    ComplexFieldGrid f(small_grid(), kLambda);
    CHECK_THROWS_AS(centroid(f), degenerate_field);
}

TEST_CASE("enclosed power radius of a gaussian is about the waist") {
    GridSpec g = small_grid(256, 0.02);
    const double w = 1.2e-3;
    auto f = make_gaussian_field(g, kLambda, w);
    // 86.5% of the power of exp(-2 r^2/w^2) lies inside r = w.
    CHECK(enclosed_power_radius(f, 0.865) == doctest::Approx(w).epsilon(0.02));
}

TEST_CASE("lens sampling bound formula") {
    CHECK(lens_sampling_bound(1.064e-6, 0.0504, 0.007) ==
          doctest::Approx(3.8304e-6).epsilon(1e-3));
}

} // TEST_SUITE
