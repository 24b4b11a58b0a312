#include "rbsim/fielddump.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace rbsim {

namespace {

constexpr char kMagic[] = "RBFLD1\n";

void put_u64(std::ofstream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::ifstream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void put_f64(std::ofstream& out, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    put_u64(out, v);
}

double get_f64(std::ifstream& in) {
    const std::uint64_t v = get_u64(in);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

} // namespace

void dump_field_csv(const ComplexFieldGrid& field, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open for writing: " + path);
    out << "x_m,y_m,intensity,phase_rad\n";
    char buf[128];
    const std::size_t n = field.n();
    for (std::size_t iy = 0; iy < n; ++iy) {
        const double y = field.spec().coord(iy);
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double x = field.spec().coord(ix);
            const cplx& z = field.at(ix, iy);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", x, y,
                          std::norm(z), std::arg(z));
            out << buf;
        }
    }
    if (!out)
        throw io_error("error while writing: " + path);
}

void dump_field_binary(const ComplexFieldGrid& field, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open for writing: " + path);
    out.write(kMagic, sizeof(kMagic) - 1);
    put_u64(out, field.n());
    put_f64(out, field.spec().window_m);
    put_f64(out, field.wavelength());
    for (const cplx& z : field.values()) {
        put_f64(out, z.real());
        put_f64(out, z.imag());
    }
    if (!out)
        throw io_error("error while writing: " + path);
}

ComplexFieldGrid read_field_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open: " + path);
    char magic[sizeof(kMagic) - 1];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
        throw io_error("not a field dump: " + path);
    GridSpec spec;
    spec.n = static_cast<std::size_t>(get_u64(in));
    spec.window_m = get_f64(in);
    const double lambda = get_f64(in);
    ComplexFieldGrid f(spec, lambda);
    for (cplx& z : f.values()) {
        const double re = get_f64(in);
        const double im = get_f64(in);
        z = cplx(re, im);
    }
    if (!in)
        throw io_error("truncated field dump: " + path);
    return f;
}

} // namespace rbsim
