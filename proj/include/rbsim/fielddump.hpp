#ifndef RBSIM_FIELDDUMP_HPP
#define RBSIM_FIELDDUMP_HPP

#include <string>

#include "rbsim/field.hpp"

namespace rbsim {

// CSV dump, one row per sample: x_m, y_m, intensity, phase_rad.
void dump_field_csv(const ComplexFieldGrid& field, const std::string& path);

// Compact binary dump (documented in the README): ASCII magic "RBFLD1\n",
// then little-endian u64 n, f64 window_m, f64 wavelength_m, then n*n
// (re, im) f64 pairs row-major, y-major ordering.
void dump_field_binary(const ComplexFieldGrid& field, const std::string& path);
ComplexFieldGrid read_field_binary(const std::string& path);

} // namespace rbsim

#endif
