#include "rbsim/kernels.hpp"

namespace rbsim::kernels {

void multiply(cplx* a, const cplx* b, std::size_t count) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
        a[i] *= b[i];
}

void scale(cplx* a, cplx s, std::size_t count) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
        a[i] *= s;
}

void multiply_real(cplx* a, const double* m, std::size_t count) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
        a[i] *= m[i];
}

void accumulate_scaled(cplx* acc, const cplx* a, cplx s, std::size_t count) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
        acc[i] += a[i] * s;
}

double power_sum_rows(const cplx* a, std::size_t n) {
    std::vector<double> row_sum(n, 0.0);
#pragma omp parallel for schedule(static)
    for (long long iy = 0; iy < static_cast<long long>(n); ++iy) {
        const cplx* row = a + static_cast<std::size_t>(iy) * n;
        double s = 0.0;
        for (std::size_t ix = 0; ix < n; ++ix)
            s += std::norm(row[ix]);
        row_sum[static_cast<std::size_t>(iy)] = s;
    }
    double total = 0.0;
    for (std::size_t iy = 0; iy < n; ++iy)
        total += row_sum[iy];
    return total;
}

cplx inner_product_rows(const cplx* a, const cplx* b, std::size_t n) {
    std::vector<cplx> row_sum(n, cplx(0.0, 0.0));
#pragma omp parallel for schedule(static)
    for (long long iy = 0; iy < static_cast<long long>(n); ++iy) {
        const std::size_t off = static_cast<std::size_t>(iy) * n;
        cplx s(0.0, 0.0);
        for (std::size_t ix = 0; ix < n; ++ix)
            s += std::conj(a[off + ix]) * b[off + ix];
        row_sum[static_cast<std::size_t>(iy)] = s;
    }
    cplx total(0.0, 0.0);
    for (std::size_t iy = 0; iy < n; ++iy)
        total += row_sum[iy];
    return total;
}

void parity_flip(const cplx* in, cplx* out, std::size_t n) {
#pragma omp parallel for schedule(static)
    for (long long iy = 0; iy < static_cast<long long>(n); ++iy) {
        const std::size_t sy = (n - static_cast<std::size_t>(iy)) % n;
        for (std::size_t ix = 0; ix < n; ++ix) {
            const std::size_t sx = (n - ix) % n;
            out[static_cast<std::size_t>(iy) * n + ix] = in[sy * n + sx];
        }
    }
}

} // namespace rbsim::kernels
