#ifndef RBSIM_REFERENCE_HPP
#define RBSIM_REFERENCE_HPP

#include <complex>
#include <cstddef>
#include <vector>

// Plain serial reference implementations. These are the oracles the unit
// tests and the benchmark compare the production (OpenMP) kernels against;
// they are written for clarity, not speed.

namespace rbsim::ref {

// Direct O(n^2)-per-axis DFT of an n x n array (two 1-D passes).
// sign = -1 forward, +1 inverse (inverse includes the 1/n^2 scale).
std::vector<std::complex<double>> dft_2d(const std::vector<std::complex<double>>& in,
                                         std::size_t n, int sign);

// Direct serial power sum |u|^2 * dx^2.
double power_sum(const std::vector<std::complex<double>>& v, double dx);

// Serial pointwise product a[i] *= b[i].
void multiply(std::vector<std::complex<double>>& a,
              const std::vector<std::complex<double>>& b);

// Serial parity flip (x,y) -> (-x,-y) about the grid center sample n/2.
std::vector<std::complex<double>> parity(const std::vector<std::complex<double>>& in,
                                         std::size_t n);

} // namespace rbsim::ref

#endif
