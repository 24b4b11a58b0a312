#include <doctest.h>

#include <cmath>
#include <random>

#include "rbsim/fft.hpp"
#include "rbsim/kernels.hpp"
#include "rbsim/reference.hpp"

using namespace rbsim;
using cvec = std::vector<std::complex<double>>;

namespace {

cvec random_buffer(std::size_t count, std::uint64_t seed) {
    cvec v(count);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& z : v)
        z = {u(rng), u(rng)};
    return v;
}

double max_abs_diff(const cvec& a, const cvec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_SUITE("fft") {

TEST_CASE("forward transform matches the naive DFT") {
    for (std::size_t n : {8ul, 32ul, 64ul}) {
        cvec v = random_buffer(n * n, 1000 + n);
        const cvec want = ref::dft_2d(v, n, -1);
        Fft2d fft(n);
        fft.forward(v.data());
        CHECK(max_abs_diff(v, want) < 1e-10 * static_cast<double>(n));
    }
}

TEST_CASE("inverse transform matches the naive inverse DFT") {
    const std::size_t n = 32;
    cvec v = random_buffer(n * n, 77);
    const cvec want = ref::dft_2d(v, n, +1);
    Fft2d fft(n);
    fft.inverse(v.data());
    CHECK(max_abs_diff(v, want) < 1e-12);
}

TEST_CASE("round trip is the identity") {
    const std::size_t n = 128;
    const cvec orig = random_buffer(n * n, 5);
    cvec v = orig;
    Fft2d fft(n);
    fft.forward(v.data());
    fft.inverse(v.data());
    CHECK(max_abs_diff(v, orig) < 1e-13);
}

TEST_CASE("impulse transforms to a flat spectrum") {
    const std::size_t n = 64;
    cvec v(n * n, {0.0, 0.0});
    v[0] = {1.0, 0.0};
    Fft2d fft(n);
    fft.forward(v.data());
    for (const auto& z : v)
        CHECK(std::abs(z - std::complex<double>(1.0, 0.0)) < 1e-12);
}

TEST_CASE("parseval") {
    const std::size_t n = 64;
    cvec v = random_buffer(n * n, 9);
    double pin = 0.0;
    for (const auto& z : v) pin += std::norm(z);
    Fft2d fft(n);
    fft.forward(v.data());
    double pout = 0.0;
    for (const auto& z : v) pout += std::norm(z);
    CHECK(pout / static_cast<double>(n * n) == doctest::Approx(pin).epsilon(1e-12));
}

TEST_CASE("fft frequency layout") {
    CHECK(fft_frequency(0, 8, 0.5) == 0.0);
    CHECK(fft_frequency(1, 8, 0.5) == doctest::Approx(0.25));
    CHECK(fft_frequency(7, 8, 0.5) == doctest::Approx(-0.25));
    CHECK(fft_frequency(4, 8, 0.5) == doctest::Approx(-1.0));
}

} // TEST_SUITE

TEST_SUITE("kernels vs serial reference") {

TEST_CASE("pointwise multiply") {
    const std::size_t n = 64;
    cvec a = random_buffer(n * n, 1), b = random_buffer(n * n, 2);
    cvec want = a;
    ref::multiply(want, b);
    kernels::multiply(a.data(), b.data(), a.size());
    CHECK(max_abs_diff(a, want) == 0.0);
}

TEST_CASE("deterministic power sum equals the serial sum") {
    const std::size_t n = 128;
    const double dx = 1.0 / 128;
    cvec a = random_buffer(n * n, 3);
    const double want = ref::power_sum(a, dx);
    const double got = kernels::power_sum_rows(a.data(), n) * dx * dx;
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("parity flip matches reference and is an involution") {
    const std::size_t n = 64;
    const cvec a = random_buffer(n * n, 4);
    const cvec want = ref::parity(a, n);
    cvec got(a.size());
    kernels::parity_flip(a.data(), got.data(), n);
    CHECK(max_abs_diff(got, want) == 0.0);
    cvec twice(a.size());
    kernels::parity_flip(got.data(), twice.data(), n);
    CHECK(max_abs_diff(twice, a) == 0.0);
}

TEST_CASE("inner product matches a direct loop") {
    const std::size_t n = 64;
    cvec a = random_buffer(n * n, 5), b = random_buffer(n * n, 6);
    std::complex<double> want(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        want += std::conj(a[i]) * b[i];
    const auto got = kernels::inner_product_rows(a.data(), b.data(), n);
    CHECK(std::abs(got - want) < 1e-9);
}

} // TEST_SUITE
