#ifndef RBSIM_ERRORS_HPP
#define RBSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rbsim {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite sample encountered in a field operation.
struct numeric_fault : error {
    numeric_fault(const std::string& what, std::size_t ix, std::size_t iy)
        : error(what), index_x(ix), index_y(iy) {}
    std::size_t index_x, index_y;
};

// Zero-power field where a normalized field is required.
struct degenerate_field : error {
    using error::error;
};

struct degenerate_mode : error {
    using error::error;
};

struct invalid_geometry : error {
    using error::error;
};

struct invalid_distance : error {
    using error::error;
};

struct not_supported : error {
    using error::error;
};

// Requested lateral shift would push content out of the guard band.
struct shift_overflow : error {
    using error::error;
};

// Lens phase would step by more than pi per sample at the aperture edge.
struct aliasing_risk : error {
    using error::error;
};

struct invalid_target : error {
    using error::error;
};

struct unbounded_circulating_power : error {
    using error::error;
};

struct config_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

} // namespace rbsim

#endif
