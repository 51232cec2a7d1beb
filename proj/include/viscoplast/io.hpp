#pragma once

#include <string>
#include <vector>

#include "viscoplast/diagnostics.hpp"
#include "viscoplast/state.hpp"

namespace viscoplast::io {

/// Format a double with 17 significant digits, '.' decimal point.
std::string format_value(double v);

/// 1D scalar field CSV: header "x,value", one row per node.
void write_field_csv_1d(const PeriodicField& f, const std::string& path);
PeriodicField read_field_csv_1d(const std::string& path, double length);

/// Flat binary field layout:
///   magic "VPF1" (4 bytes), u32 dim, u32 n, f64 length, u32 rank, u32 ncomp,
///   then ncomp * n^dim little-endian f64 samples, component-major, each
///   component row-major (last axis fastest).
void write_field_binary(const PeriodicField& f, const std::string& path);
PeriodicField read_field_binary(const std::string& path);

/// Trajectory CSV: header "t,x[,y,z],rho,u0[,u1,u2]", one row per node per
/// stored snapshot.
void write_trajectory_csv(const std::vector<State>& states, const std::string& path);

/// Diagnostics CSV, schema
/// "t,mass,energy,dissipation,psi,j_min,fp_iters,energy_residual".
void write_diagnostics_csv(const std::vector<diag::DiagnosticsRecord>& records,
                           const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

} // namespace viscoplast::io
