#ifndef RBSIM_SVGPLOT_HPP
#define RBSIM_SVGPLOT_HPP

#include <string>

#include "rbsim/sweep.hpp"

namespace rbsim {

enum class PlotKind {
    power,       // beam + electrical power vs displacement
    efficiency,  // eta_t vs displacement
};

// Deterministic static SVG line chart: identical input produces a
// byte-identical file. x/y sweeps are plotted in cm, z sweeps in m.
// Single-point results render markers without a connecting line.
// Throws on an empty result.
std::string render_plot(const SweepResult& result, PlotKind kind);
void emit_plot(const SweepResult& result, PlotKind kind, const std::string& path);

} // namespace rbsim

#endif
