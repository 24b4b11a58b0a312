#include "rbsim/csvio.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace rbsim {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

constexpr const char* kHeader =
    "displacement_m,eta_t,beam_power_w,electrical_power_w,iterations,converged,"
    "mode_radius_m";

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::string sweep_csv_text(const SweepResult& r) {
    std::ostringstream o;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016" PRIx64, r.config_hash);
    o << "# rbsim sweep result\n";
    o << "# version: " << r.version << "\n";
    o << "# config_hash: " << hash << "\n";
    o << "# axis: " << r.axis << "\n";
    o << kHeader << "\n";
    for (const SweepPoint& p : r.points) {
        o << g17(p.displacement_m) << ',' << g17(p.eta_t) << ',' << g17(p.beam_power_w)
          << ',' << g17(p.electrical_power_w) << ',' << p.iterations << ','
          << (p.converged ? 1 : 0) << ',' << g17(p.mode_radius_m) << "\n";
    }
    return o.str();
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open for writing: " + path);
    out << sweep_csv_text(result);
    if (!out)
        throw io_error("error while writing: " + path);
}

SweepResult parse_sweep_csv(const std::string& text, const std::string& origin) {
    SweepResult r;
    std::istringstream in(text);
    std::string line;
    bool saw_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.front() == '#') {
            if (line.rfind("# version: ", 0) == 0)
                r.version = line.substr(11);
            else if (line.rfind("# config_hash: ", 0) == 0)
                r.config_hash = std::strtoull(line.c_str() + 15, nullptr, 16);
            else if (line.rfind("# axis: ", 0) == 0 && line.size() > 8)
                r.axis = line[8];
            continue;
        }
        if (!saw_header) {
            if (line != kHeader)
                throw io_error(origin + ":" + std::to_string(lineno) +
                               ": unexpected CSV header");
            saw_header = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 7)
            throw io_error(origin + ":" + std::to_string(lineno) + ": expected 7 fields");
        SweepPoint p;
        p.displacement_m = std::strtod(f[0].c_str(), nullptr);
        p.eta_t = std::strtod(f[1].c_str(), nullptr);
        p.beam_power_w = std::strtod(f[2].c_str(), nullptr);
        p.electrical_power_w = std::strtod(f[3].c_str(), nullptr);
        p.iterations = std::atoi(f[4].c_str());
        p.converged = f[5] == "1";
        p.mode_radius_m = std::strtod(f[6].c_str(), nullptr);
        r.points.push_back(p);
    }
    if (!saw_header)
        throw io_error(origin + ": missing CSV header");
    return r;
}

SweepResult read_sweep_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_sweep_csv(ss.str(), path);
}

} // namespace rbsim
