#include "rbsim/reference.hpp"

#include <cmath>

namespace rbsim::ref {

namespace {

// One naive DFT pass along the contiguous axis.
std::vector<std::complex<double>> dft_rows(const std::vector<std::complex<double>>& in,
                                           std::size_t n, int sign) {
    std::vector<std::complex<double>> out(in.size());
    const double c = sign * 2.0 * M_PI / static_cast<double>(n);
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t k = 0; k < n; ++k) {
            std::complex<double> s(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                const double ang = c * static_cast<double>(k * j % n);
                s += in[iy * n + j] * std::complex<double>(std::cos(ang), std::sin(ang));
            }
            out[iy * n + k] = s;
        }
    }
    return out;
}

std::vector<std::complex<double>> transpose_copy(const std::vector<std::complex<double>>& in,
                                                 std::size_t n) {
    std::vector<std::complex<double>> out(in.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[j * n + i] = in[i * n + j];
    return out;
}

} // namespace

std::vector<std::complex<double>> dft_2d(const std::vector<std::complex<double>>& in,
                                         std::size_t n, int sign) {
    auto a = dft_rows(in, n, sign);
    a = transpose_copy(a, n);
    a = dft_rows(a, n, sign);
    a = transpose_copy(a, n);
    if (sign > 0) {
        const double s = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
        for (auto& v : a) v *= s;
    }
    return a;
}

double power_sum(const std::vector<std::complex<double>>& v, double dx) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s * dx * dx;
}

void multiply(std::vector<std::complex<double>>& a,
              const std::vector<std::complex<double>>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
}

std::vector<std::complex<double>> parity(const std::vector<std::complex<double>>& in,
                                         std::size_t n) {
    std::vector<std::complex<double>> out(in.size());
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 0; ix < n; ++ix)
            out[iy * n + ix] = in[((n - iy) % n) * n + ((n - ix) % n)];
    return out;
}

} // namespace rbsim::ref
