#ifndef RBSIM_FFT_HPP
#define RBSIM_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace rbsim {

// In-place 2-D radix-2 FFT on an n x n row-major array, n a power of two.
// Rows are transformed independently (OpenMP across rows), then the array is
// transposed, transformed again and transposed back, so results are
// bit-identical for any thread count. Forward kernel is exp(-2*pi*i*k/n);
// the inverse includes the 1/n^2 scale.
class Fft2d {
public:
    explicit Fft2d(std::size_t n);

    std::size_t size() const { return n_; }

    void forward(std::complex<double>* a) const { transform(a, false); }
    void inverse(std::complex<double>* a) const { transform(a, true); }

private:
    void transform(std::complex<double>* a, bool inv) const;
    void rows_pass(std::complex<double>* a, bool inv) const;
    void row_fft(std::complex<double>* row, bool inv) const;

    std::size_t n_ = 0;
    unsigned log2n_ = 0;
    std::vector<std::size_t> bitrev_;
    std::vector<std::complex<double>> twiddle_; // exp(-2*pi*i*k/n), k < n/2
};

// Cache-blocked square transpose, OpenMP across blocks.
void transpose(std::complex<double>* a, std::size_t n);

// FFT-native spatial frequency for bin k of an n-sample axis with pitch dx:
// k/(n*dx) for k < n/2, (k-n)/(n*dx) above.
inline double fft_frequency(std::size_t k, std::size_t n, double dx) {
    const double kk = (k < n / 2) ? static_cast<double>(k)
                                  : static_cast<double>(k) - static_cast<double>(n);
    return kk / (static_cast<double>(n) * dx);
}

} // namespace rbsim

#endif
