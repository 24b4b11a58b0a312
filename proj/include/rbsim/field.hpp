#ifndef RBSIM_FIELD_HPP
#define RBSIM_FIELD_HPP

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "rbsim/errors.hpp"

namespace rbsim {

using cplx = std::complex<double>;

// Uniform square sampling grid. Sample i maps to coordinate (i - n/2) * dx,
// so the optical axis sits exactly on a sample.
struct GridSpec {
    std::size_t n = 1024;      // samples per axis, power of two, >= 64
    double window_m = 0.056;   // physical side length

    double dx() const { return window_m / static_cast<double>(n); }
    double coord(std::size_t i) const {
        return (static_cast<double>(i) - static_cast<double>(n) / 2.0) * dx();
    }
    void validate() const;

    bool operator==(const GridSpec&) const = default;
};

// Largest sample pitch that keeps a lens chirp of focal length f below a
// pi phase step per sample at radius r.
double lens_sampling_bound(double wavelength_m, double focal_m, double radius_m);

// Sampled complex scalar field u(x,y), row-major [iy*n + ix].
class ComplexFieldGrid {
public:
    ComplexFieldGrid() = default;
    ComplexFieldGrid(GridSpec spec, double wavelength_m)
        : spec_(spec), wavelength_(wavelength_m),
          v_(spec.n * spec.n, cplx(0.0, 0.0)) {
        spec_.validate();
        if (wavelength_m <= 0.0)
            throw invalid_geometry("wavelength must be positive");
    }

    const GridSpec& spec() const { return spec_; }
    double wavelength() const { return wavelength_; }
    std::size_t n() const { return spec_.n; }
    double dx() const { return spec_.dx(); }

    cplx& at(std::size_t ix, std::size_t iy) { return v_[iy * spec_.n + ix]; }
    const cplx& at(std::size_t ix, std::size_t iy) const { return v_[iy * spec_.n + ix]; }

    cplx* data() { return v_.data(); }
    const cplx* data() const { return v_.data(); }
    std::size_t size() const { return v_.size(); }

    std::vector<cplx>& values() { return v_; }
    const std::vector<cplx>& values() const { return v_; }

private:
    GridSpec spec_{};
    double wavelength_ = 0.0;
    std::vector<cplx> v_;
};

// Riemann power integral sum |u|^2 dx^2. Throws numeric_fault naming the
// first non-finite sample. Deterministic for any thread count.
double total_power(const ComplexFieldGrid& field);

// Returns field / sqrt(total_power). Throws degenerate_field on zero power.
ComplexFieldGrid normalize(const ComplexFieldGrid& field);

// Intensity-weighted first moment, meters.
std::pair<double, double> centroid(const ComplexFieldGrid& field);

// Intensity-weighted RMS radius about the centroid, meters.
double rms_radius(const ComplexFieldGrid& field);

// Radius of the centered disc enclosing `fraction` of the total power.
double enclosed_power_radius(const ComplexFieldGrid& field, double fraction);

// Convenience constructors used all over the tests and the solver.
ComplexFieldGrid make_uniform_field(const GridSpec& spec, double wavelength_m,
                                    cplx value = cplx(1.0, 0.0));
ComplexFieldGrid make_gaussian_field(const GridSpec& spec, double wavelength_m,
                                     double waist_m, double x0_m = 0.0,
                                     double y0_m = 0.0);

} // namespace rbsim

#endif
