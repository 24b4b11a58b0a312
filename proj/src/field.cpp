#include "rbsim/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rbsim/kernels.hpp"

namespace rbsim {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Locate the first non-finite sample and throw. Called only after a cheap
// aggregate check already failed, so the scan cost does not matter.
[[noreturn]] void throw_numeric_fault(const ComplexFieldGrid& f, const char* op) {
    const std::size_t n = f.n();
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 0; ix < n; ++ix) {
            const cplx& z = f.at(ix, iy);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw numeric_fault(std::string(op) + ": non-finite sample at (" +
                                        std::to_string(ix) + "," + std::to_string(iy) + ")",
                                    ix, iy);
        }
    throw numeric_fault(std::string(op) + ": non-finite aggregate", 0, 0);
}

} // namespace

void GridSpec::validate() const {
    if (!is_power_of_two(n) || n < 64)
        throw invalid_geometry("grid n must be a power of two >= 64");
    if (!(window_m > 0.0) || !std::isfinite(window_m))
        throw invalid_geometry("grid window must be positive");
}

double lens_sampling_bound(double wavelength_m, double focal_m, double radius_m) {
    return wavelength_m * std::abs(focal_m) / (2.0 * radius_m);
}

double total_power(const ComplexFieldGrid& field) {
    const double s = kernels::power_sum_rows(field.data(), field.n());
    if (!std::isfinite(s))
        throw_numeric_fault(field, "total_power");
    return s * field.dx() * field.dx();
}

ComplexFieldGrid normalize(const ComplexFieldGrid& field) {
    const double p = total_power(field);
    if (p <= 0.0)
        throw degenerate_field("normalize: zero-power field");
    ComplexFieldGrid out = field;
    kernels::scale(out.data(), cplx(1.0 / std::sqrt(p), 0.0), out.size());
    return out;
}

std::pair<double, double> centroid(const ComplexFieldGrid& field) {
    const std::size_t n = field.n();
    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t iy = 0; iy < n; ++iy) {
        const double y = field.spec().coord(iy);
        double rw = 0.0, rx = 0.0;
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double w = std::norm(field.at(ix, iy));
            rw += w;
            rx += w * field.spec().coord(ix);
        }
        sw += rw;
        sx += rx;
        sy += rw * y;
    }
    if (!std::isfinite(sw))
        throw_numeric_fault(field, "centroid");
    if (sw <= 0.0)
        throw degenerate_field("centroid: zero-power field");
    return {sx / sw, sy / sw};
}

double rms_radius(const ComplexFieldGrid& field) {
    const auto [cx, cy] = centroid(field);
    const std::size_t n = field.n();
    double sw = 0.0, sr = 0.0;
    for (std::size_t iy = 0; iy < n; ++iy) {
        const double dy = field.spec().coord(iy) - cy;
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double w = std::norm(field.at(ix, iy));
            const double dxc = field.spec().coord(ix) - cx;
            sw += w;
            sr += w * (dxc * dxc + dy * dy);
        }
    }
    return std::sqrt(sr / sw);
}

double enclosed_power_radius(const ComplexFieldGrid& field, double fraction) {
    const std::size_t n = field.n();
    const double p = total_power(field);
    if (p <= 0.0)
        throw degenerate_field("enclosed_power_radius: zero-power field");

    // Histogram power by radius in dx/2 bins; the radius resolution of the
    // answer is one sample pitch, which is all the grid supports anyway.
    const double dr = field.dx() * 0.5;
    const double rmax = field.spec().window_m; // covers the corner radius
    std::vector<double> bins(static_cast<std::size_t>(rmax / dr) + 2, 0.0);
    for (std::size_t iy = 0; iy < n; ++iy) {
        const double y = field.spec().coord(iy);
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double x = field.spec().coord(ix);
            const double r = std::sqrt(x * x + y * y);
            bins[std::min(bins.size() - 1, static_cast<std::size_t>(r / dr))] +=
                std::norm(field.at(ix, iy));
        }
    }
    const double target = fraction * p / (field.dx() * field.dx());
    double acc = 0.0;
    for (std::size_t b = 0; b < bins.size(); ++b) {
        acc += bins[b];
        if (acc >= target)
            return (static_cast<double>(b) + 1.0) * dr;
    }
    return rmax;
}

ComplexFieldGrid make_uniform_field(const GridSpec& spec, double wavelength_m, cplx value) {
    ComplexFieldGrid f(spec, wavelength_m);
    std::fill(f.values().begin(), f.values().end(), value);
    return f;
}

ComplexFieldGrid make_gaussian_field(const GridSpec& spec, double wavelength_m,
                                     double waist_m, double x0_m, double y0_m) {
    ComplexFieldGrid f(spec, wavelength_m);
    const std::size_t n = spec.n;
    const double w2 = waist_m * waist_m;
    for (std::size_t iy = 0; iy < n; ++iy) {
        const double y = spec.coord(iy) - y0_m;
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double x = spec.coord(ix) - x0_m;
            f.at(ix, iy) = std::exp(-(x * x + y * y) / w2);
        }
    }
    return f;
}

} // namespace rbsim
