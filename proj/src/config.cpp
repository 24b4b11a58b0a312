#include "rbsim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace rbsim {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Binder {
    // section.key -> setter from string
    std::map<std::string, std::function<void(const std::string&, const std::string&)>> set;

    void number(const std::string& key, double& ref) {
        set[key] = [&ref, key](const std::string& v, const std::string& where) {
            double out = 0.0;
            const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
            if (res.ec != std::errc() || res.ptr != v.data() + v.size())
                throw config_error(where + ": malformed number for '" + key + "': " + v);
            ref = out;
        };
    }
    void integer(const std::string& key, int& ref) {
        set[key] = [&ref, key](const std::string& v, const std::string& where) {
            int out = 0;
            const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
            if (res.ec != std::errc() || res.ptr != v.data() + v.size())
                throw config_error(where + ": malformed integer for '" + key + "': " + v);
            ref = out;
        };
    }
    void size(const std::string& key, std::size_t& ref) {
        set[key] = [&ref, key](const std::string& v, const std::string& where) {
            unsigned long long out = 0;
            const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
            if (res.ec != std::errc() || res.ptr != v.data() + v.size())
                throw config_error(where + ": malformed integer for '" + key + "': " + v);
            ref = static_cast<std::size_t>(out);
        };
    }
    void boolean(const std::string& key, bool& ref) {
        set[key] = [&ref, key](const std::string& v, const std::string& where) {
            if (v == "true") ref = true;
            else if (v == "false") ref = false;
            else throw config_error(where + ": expected true/false for '" + key + "': " + v);
        };
    }
    void text(const std::string& key, std::string& ref) {
        set[key] = [&ref](const std::string& v, const std::string&) { ref = v; };
    }
};

Binder make_binder(ExperimentConfig& c) {
    Binder b;
    auto& g = c.geometry;
    b.number("geometry.tx_focal_m", g.tx.focal_m);
    b.number("geometry.tx_spacing_m", g.tx.spacing_m);
    b.number("geometry.tx_aperture_m", g.tx.aperture_m);
    b.number("geometry.rx_focal_m", g.rx.focal_m);
    b.number("geometry.rx_spacing_m", g.rx.spacing_m);
    b.number("geometry.rx_aperture_m", g.rx.aperture_m);
    b.number("geometry.gain_radius_m", g.gain_radius_m);
    b.number("geometry.reflectivity", g.rx_reflectivity);
    b.number("geometry.x0_m", g.x0_m);
    b.number("geometry.y0_m", g.y0_m);
    b.number("geometry.z0_m", g.z0_m);
    b.number("geometry.move_x_m", g.move_x_m);
    b.number("geometry.move_y_m", g.move_y_m);
    b.number("geometry.move_z_m", g.move_z_m);
    b.number("geometry.wavelength_m", g.wavelength_m);
    b.number("geometry.accept_half_angle_rad", g.accept_half_angle_rad);
    b.number("geometry.accept_roll_rad", g.accept_roll_rad);

    b.size("grid.n", c.grid.n);
    b.number("grid.window_m", c.grid.window_m);

    b.integer("foxli.max_iterations", c.foxli.max_iterations);
    b.number("foxli.tolerance", c.foxli.tolerance);
    b.integer("foxli.stability_window", c.foxli.stability_window);
    b.set["foxli.seed"] = [&c](const std::string& v, const std::string& where) {
        if (v == "plane_wave") c.foxli.seed = FoxLiConfig::Seed::plane_wave;
        else if (v == "plane_wave_perturbed")
            c.foxli.seed = FoxLiConfig::Seed::plane_wave_perturbed;
        else throw config_error(where + ": unknown seed kind: " + v);
    };
    b.boolean("foxli.extract_mode", c.foxli.extract_mode);
    b.integer("foxli.probe_window", c.foxli.probe_window);
    b.integer("foxli.accum_window", c.foxli.accum_window);

    b.number("power.p_in_w", c.power.p_in_w);
    b.number("power.i_sat_w_m2", c.power.i_sat_w_m2);
    b.number("power.v_s", c.power.v_s);
    b.text("power.gain_preset", c.gain_preset);
    b.number("power.g0_lg", c.power.g0_lg);
    b.number("power.eta_b", c.power.eta_b);
    b.number("power.eta_pv", c.power.eta_pv);

    b.set["sweep.axis"] = [&c](const std::string& v, const std::string& where) {
        if (v != "x" && v != "y" && v != "z")
            throw config_error(where + ": sweep axis must be x, y or z: " + v);
        c.sweep.axis = v[0];
    };
    b.number("sweep.start_m", c.sweep.start_m);
    b.number("sweep.stop_m", c.sweep.stop_m);
    b.integer("sweep.steps", c.sweep.steps);

    b.text("output.directory", c.output.directory);
    b.boolean("output.emit_plots", c.output.emit_plots);
    return b;
}

} // namespace

void SweepSpec::validate() const {
    if (axis != 'x' && axis != 'y' && axis != 'z')
        throw config_error("sweep axis must be x, y or z");
    if (steps < 1)
        throw config_error("sweep steps must be >= 1");
    if (steps == 1) {
        if (start_m != stop_m)
            throw config_error("single-point sweep requires start == stop");
    } else if (!(start_m < stop_m)) {
        throw config_error("sweep requires start < stop");
    }
}

void ExperimentConfig::validate() const {
    geometry.validate();
    grid.validate();
    foxli.validate();
    resolved_power().validate();
    sweep.validate();
    if (gain_preset != "calibrated" && gain_preset != "datasheet" && gain_preset != "custom")
        throw config_error("gain_preset must be calibrated, datasheet or custom");
    if (gain_preset == "custom" && !(power.g0_lg > 0.0))
        throw config_error("gain_preset=custom requires a positive power.g0_lg");
}

double ExperimentConfig::resolved_gain_length() const {
    if (gain_preset == "calibrated") return calibrated_gain_length();
    if (gain_preset == "datasheet") return datasheet_gain_length();
    return power.g0_lg;
}

PowerModelParams ExperimentConfig::resolved_power() const {
    PowerModelParams p = power;
    p.gain_radius_m = geometry.gain_radius_m;
    p.reflectivity = geometry.rx_reflectivity;
    p.g0_lg = resolved_gain_length();
    return p;
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    Binder binder = make_binder(cfg);
    std::map<std::string, bool> seen;

    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto where = origin + ":" + std::to_string(lineno);
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error(where + ": malformed section header: " + line);
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(where + ": expected key = value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw config_error(where + ": key before any [section]: " + key);
        const std::string full = section + "." + key;
        const auto it = binder.set.find(full);
        if (it == binder.set.end())
            throw config_error(where + ": unknown key '" + full + "'");
        if (seen[full])
            throw config_error(where + ": duplicate key '" + full + "'");
        seen[full] = true;
        it->second(value, where);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

std::string write_config(const ExperimentConfig& c) {
    std::ostringstream o;
    const auto& g = c.geometry;
    o << "[geometry]\n";
    o << "tx_focal_m = " << format_double(g.tx.focal_m) << "\n";
    o << "tx_spacing_m = " << format_double(g.tx.spacing_m) << "\n";
    o << "tx_aperture_m = " << format_double(g.tx.aperture_m) << "\n";
    o << "rx_focal_m = " << format_double(g.rx.focal_m) << "\n";
    o << "rx_spacing_m = " << format_double(g.rx.spacing_m) << "\n";
    o << "rx_aperture_m = " << format_double(g.rx.aperture_m) << "\n";
    o << "gain_radius_m = " << format_double(g.gain_radius_m) << "\n";
    o << "reflectivity = " << format_double(g.rx_reflectivity) << "\n";
    o << "x0_m = " << format_double(g.x0_m) << "\n";
    o << "y0_m = " << format_double(g.y0_m) << "\n";
    o << "z0_m = " << format_double(g.z0_m) << "\n";
    o << "move_x_m = " << format_double(g.move_x_m) << "\n";
    o << "move_y_m = " << format_double(g.move_y_m) << "\n";
    o << "move_z_m = " << format_double(g.move_z_m) << "\n";
    o << "wavelength_m = " << format_double(g.wavelength_m) << "\n";
    o << "accept_half_angle_rad = " << format_double(g.accept_half_angle_rad) << "\n";
    o << "accept_roll_rad = " << format_double(g.accept_roll_rad) << "\n";
    o << "\n[grid]\n";
    o << "n = " << c.grid.n << "\n";
    o << "window_m = " << format_double(c.grid.window_m) << "\n";
    o << "\n[foxli]\n";
    o << "max_iterations = " << c.foxli.max_iterations << "\n";
    o << "tolerance = " << format_double(c.foxli.tolerance) << "\n";
    o << "stability_window = " << c.foxli.stability_window << "\n";
    o << "seed = "
      << (c.foxli.seed == FoxLiConfig::Seed::plane_wave ? "plane_wave"
                                                        : "plane_wave_perturbed")
      << "\n";
    o << "extract_mode = " << (c.foxli.extract_mode ? "true" : "false") << "\n";
    o << "probe_window = " << c.foxli.probe_window << "\n";
    o << "accum_window = " << c.foxli.accum_window << "\n";
    o << "\n[power]\n";
    o << "p_in_w = " << format_double(c.power.p_in_w) << "\n";
    o << "i_sat_w_m2 = " << format_double(c.power.i_sat_w_m2) << "\n";
    o << "v_s = " << format_double(c.power.v_s) << "\n";
    o << "gain_preset = " << c.gain_preset << "\n";
    o << "g0_lg = " << format_double(c.power.g0_lg) << "\n";
    o << "eta_b = " << format_double(c.power.eta_b) << "\n";
    o << "eta_pv = " << format_double(c.power.eta_pv) << "\n";
    o << "\n[sweep]\n";
    o << "axis = " << c.sweep.axis << "\n";
    o << "start_m = " << format_double(c.sweep.start_m) << "\n";
    o << "stop_m = " << format_double(c.sweep.stop_m) << "\n";
    o << "steps = " << c.sweep.steps << "\n";
    o << "\n[output]\n";
    o << "directory = " << c.output.directory << "\n";
    o << "emit_plots = " << (c.output.emit_plots ? "true" : "false") << "\n";
    return o.str();
}

void save_config(const ExperimentConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot write config file: " + path);
    out << write_config(cfg);
    if (!out)
        throw io_error("error writing config file: " + path);
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    const std::string s = write_config(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace rbsim
