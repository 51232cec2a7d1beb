#include "viscoplast/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace viscoplast::io {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_field_csv_1d(const PeriodicField& f, const std::string& path) {
    if (f.grid().dim != 1 || f.rank() != Rank::scalar)
        throw Error("write_field_csv_1d expects a 1D scalar field");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    out << "x,value\n";
    for (std::int64_t i = 0; i < f.num_nodes(); ++i)
        out << format_value(i * f.grid().h()) << "," << format_value(f.at(0, i)) << "\n";
}

PeriodicField read_field_csv_1d(const std::string& path, double length) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    std::string line;
    std::getline(in, line); // header
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error("malformed CSV row in " + path);
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    PeriodicGrid g(1, static_cast<int>(values.size()), length);
    PeriodicField f(g, Rank::scalar);
    for (size_t i = 0; i < values.size(); ++i)
        f.at(0, static_cast<std::int64_t>(i)) = values[i];
    return f;
}

void write_field_binary(const PeriodicField& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    const char magic[4] = {'V', 'P', 'F', '1'};
    out.write(magic, 4);
    const std::uint32_t dim = static_cast<std::uint32_t>(f.grid().dim);
    const std::uint32_t n = static_cast<std::uint32_t>(f.grid().n);
    const double length = f.grid().length;
    const std::uint32_t rank = static_cast<std::uint32_t>(f.rank());
    const std::uint32_t ncomp = static_cast<std::uint32_t>(f.components());
    out.write(reinterpret_cast<const char*>(&dim), 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&length), 8);
    out.write(reinterpret_cast<const char*>(&rank), 4);
    out.write(reinterpret_cast<const char*>(&ncomp), 4);
    out.write(reinterpret_cast<const char*>(f.values().data()),
              static_cast<std::streamsize>(f.values().size() * sizeof(double)));
}

PeriodicField read_field_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (std::memcmp(magic, "VPF1", 4) != 0)
        throw Error(path + " is not a VPF1 field file");
    std::uint32_t dim = 0, n = 0, rank = 0, ncomp = 0;
    double length = 0.0;
    in.read(reinterpret_cast<char*>(&dim), 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&length), 8);
    in.read(reinterpret_cast<char*>(&rank), 4);
    in.read(reinterpret_cast<char*>(&ncomp), 4);
    PeriodicGrid g(static_cast<int>(dim), static_cast<int>(n), length);
    PeriodicField f(g, static_cast<Rank>(rank));
    if (static_cast<std::uint32_t>(f.components()) != ncomp)
        throw Error(path + ": component count does not match rank/dim");
    in.read(reinterpret_cast<char*>(f.values().data()),
            static_cast<std::streamsize>(f.values().size() * sizeof(double)));
    if (!in)
        throw Error(path + ": truncated field data");
    return f;
}

void write_trajectory_csv(const std::vector<State>& states, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    if (states.empty()) {
        out << "t,x,rho,u0\n";
        return;
    }
    const PeriodicGrid& g = states.front().rho.grid();
    out << "t";
    const char* axes[3] = {"x", "y", "z"};
    for (int a = 0; a < g.dim; ++a)
        out << "," << axes[a];
    out << ",rho";
    for (int c = 0; c < g.dim; ++c)
        out << ",u" << c;
    out << "\n";
    for (const State& s : states) {
        for (std::int64_t node = 0; node < g.num_nodes(); ++node) {
            const auto x = g.coords(node);
            out << format_value(s.t);
            for (int a = 0; a < g.dim; ++a)
                out << "," << format_value(x[static_cast<size_t>(a)]);
            out << "," << format_value(s.rho.at(0, node));
            for (int c = 0; c < g.dim; ++c)
                out << "," << format_value(s.u.at(c, node));
            out << "\n";
        }
    }
}

void write_diagnostics_csv(const std::vector<diag::DiagnosticsRecord>& records,
                           const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    out << "t,mass,energy,dissipation,psi,j_min,fp_iters,energy_residual\n";
    for (const auto& r : records) {
        out << format_value(r.t) << "," << format_value(r.mass) << ","
            << format_value(r.energy) << "," << format_value(r.dissipation) << ","
            << format_value(r.psi) << "," << format_value(r.j_min) << "," << r.fp_iters << ","
            << format_value(r.energy_residual) << "\n";
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    out << content;
}

} // namespace viscoplast::io
