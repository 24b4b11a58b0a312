#ifndef RBSIM_CSVIO_HPP
#define RBSIM_CSVIO_HPP

#include <string>

#include "rbsim/sweep.hpp"

namespace rbsim {

// CSV with '#'-prefixed metadata comments, a fixed header row and one data
// row per sweep point. Floats are printed with 17 significant digits so the
// text round-trips to the exact in-memory doubles.
void emit_csv(const SweepResult& result, const std::string& path);
std::string sweep_csv_text(const SweepResult& result);

// Inverse of emit_csv (metadata comments included).
SweepResult read_sweep_csv(const std::string& path);
SweepResult parse_sweep_csv(const std::string& text, const std::string& origin);

} // namespace rbsim

#endif
