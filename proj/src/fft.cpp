#include "rbsim/fft.hpp"

#include <stdexcept>

namespace rbsim {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

constexpr double kTwoPi = 6.283185307179586476925286766559;

} // namespace

Fft2d::Fft2d(std::size_t n) : n_(n) {
    if (!is_power_of_two(n) || n < 2)
        throw std::invalid_argument("Fft2d: size must be a power of two >= 2");
    while ((std::size_t{1} << log2n_) < n_) ++log2n_;

    bitrev_.resize(n_);
    bitrev_[0] = 0;
    for (std::size_t i = 1; i < n_; ++i)
        bitrev_[i] = (bitrev_[i >> 1] >> 1) | ((i & 1) << (log2n_ - 1));

    twiddle_.resize(n_ / 2);
    for (std::size_t k = 0; k < n_ / 2; ++k) {
        const double ang = -kTwoPi * static_cast<double>(k) / static_cast<double>(n_);
        twiddle_[k] = {std::cos(ang), std::sin(ang)};
    }
}

void Fft2d::row_fft(std::complex<double>* row, bool inv) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j) std::swap(row[i], row[j]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t step = n_ / len;
        for (std::size_t base = 0; base < n_; base += len) {
            for (std::size_t k = 0; k < half; ++k) {
                std::complex<double> w = twiddle_[k * step];
                if (inv) w = std::conj(w);
                const std::complex<double> t = row[base + k + half] * w;
                row[base + k + half] = row[base + k] - t;
                row[base + k] += t;
            }
        }
    }
}

void Fft2d::rows_pass(std::complex<double>* a, bool inv) const {
#pragma omp parallel for schedule(static)
    for (long long iy = 0; iy < static_cast<long long>(n_); ++iy)
        row_fft(a + static_cast<std::size_t>(iy) * n_, inv);
}

void Fft2d::transform(std::complex<double>* a, bool inv) const {
    rows_pass(a, inv);
    transpose(a, n_);
    rows_pass(a, inv);
    transpose(a, n_);
    if (inv) {
        const double s = 1.0 / (static_cast<double>(n_) * static_cast<double>(n_));
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n_ * n_); ++i)
            a[i] *= s;
    }
}

void transpose(std::complex<double>* a, std::size_t n) {
    constexpr std::size_t B = 32;
#pragma omp parallel for schedule(static)
    for (long long bi = 0; bi < static_cast<long long>(n); bi += B) {
        for (std::size_t bj = static_cast<std::size_t>(bi); bj < n; bj += B) {
            const std::size_t i0 = static_cast<std::size_t>(bi);
            const std::size_t imax = std::min(i0 + B, n);
            const std::size_t jmax = std::min(bj + B, n);
            for (std::size_t i = i0; i < imax; ++i) {
                const std::size_t jstart = (bj == i0) ? i + 1 : bj;
                for (std::size_t j = jstart; j < jmax; ++j)
                    std::swap(a[i * n + j], a[j * n + i]);
            }
        }
    }
}

} // namespace rbsim
