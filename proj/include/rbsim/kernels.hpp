#ifndef RBSIM_KERNELS_HPP
#define RBSIM_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <vector>

// Data-parallel inner loops shared by the field operators and the solver.
// All kernels are OpenMP-parallel across rows and bit-deterministic for any
// thread count: reductions accumulate per-row partials serially and combine
// them in row order. rbsim::ref holds the serial counterparts used by the
// tests and the benchmark.

namespace rbsim::kernels {

using cplx = std::complex<double>;

// a[i] *= b[i]
void multiply(cplx* a, const cplx* b, std::size_t count);

// a[i] *= s
void scale(cplx* a, cplx s, std::size_t count);

// a[i] *= m[i] (real mask / window)
void multiply_real(cplx* a, const double* m, std::size_t count);

// acc[i] += a[i] * s
void accumulate_scaled(cplx* acc, const cplx* a, cplx s, std::size_t count);

// sum |a[i]|^2, per-row partials combined in row order (n rows of n).
double power_sum_rows(const cplx* a, std::size_t n);

// <a, b> = sum conj(a[i]) * b[i], same deterministic row scheme.
cplx inner_product_rows(const cplx* a, const cplx* b, std::size_t n);

// out = in flipped through the grid center sample (index map i -> (n-i) mod n).
void parity_flip(const cplx* in, cplx* out, std::size_t n);

} // namespace rbsim::kernels

#endif
