#ifndef RBSIM_CONFIG_HPP
#define RBSIM_CONFIG_HPP

#include <cstdint>
#include <string>

#include "rbsim/foxli.hpp"
#include "rbsim/power.hpp"

namespace rbsim {

struct SweepSpec {
    char axis = 'x';         // x, y or z
    double start_m = -0.20;
    double stop_m = 0.20;
    int steps = 21;
    void validate() const;
};

struct OutputSpec {
    std::string directory = "out";
    bool emit_plots = true;
};

// Everything a run needs, loadable from a flat sectioned key=value file.
// Defaults are the reference bench-top system.
struct ExperimentConfig {
    CavityGeometry geometry{};
    GridSpec grid{};
    FoxLiConfig foxli{};
    PowerModelParams power{};
    std::string gain_preset = "calibrated";  // calibrated | datasheet | custom
    SweepSpec sweep{};
    OutputSpec output{};

    void validate() const;
    // g0*lg after resolving the preset.
    double resolved_gain_length() const;
    PowerModelParams resolved_power() const;
};

// Strict parser: unknown sections or keys, duplicate keys and malformed
// values are errors with line context. Omitted keys keep their defaults.
ExperimentConfig parse_config(const std::string& text, const std::string& origin);
ExperimentConfig load_config(const std::string& path);

// Canonical serialization: fixed key order, shortest exact float spelling.
// parse(write(c)) reproduces c; write(parse(write(c))) == write(c).
std::string write_config(const ExperimentConfig& cfg);
void save_config(const ExperimentConfig& cfg, const std::string& path);

// FNV-1a over the canonical serialization: changes iff a field changes.
std::uint64_t config_hash(const ExperimentConfig& cfg);

} // namespace rbsim

#endif
