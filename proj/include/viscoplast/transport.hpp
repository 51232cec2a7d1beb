#pragma once

#include <vector>

#include "viscoplast/field.hpp"
#include "viscoplast/params.hpp"

namespace viscoplast::transport {

/// Time-indexed density snapshots. rho >= 0 up to roundoff; total mass
/// constant across snapshots.
struct DensityPath {
    std::vector<PeriodicField> snapshots; // scalar fields
    std::vector<double> times;
};

/// One conservative step of rho_t = -div(rho u): spectral flux divergence with
/// a two-stage SSP update; u is held fixed over the step. Discrete total mass
/// is preserved to roundoff. Throws CFLViolation when dt > 0.5 h / max|u|.
PeriodicField advance_density(const PeriodicField& rho, const PeriodicField& u, double dt);

/// Clip tiny negative values to zero in place; returns the clipped mass
/// (integral of the removed negative part, reported as a positive number).
double clip_negative(PeriodicField& rho);

struct BoundsReport {
    std::vector<double> lower; // inf rho0 * exp(-int ||div u||_inf)
    std::vector<double> upper; // sup rho0 * exp(+int ||div u||_inf)
    double max_violation = 0.0;
};

/// Exponential a priori envelopes for the density along a velocity path; the
/// time integral of ||div u||_inf is taken by trapezoid over the snapshots.
BoundsReport density_bounds_check(const DensityPath& path,
                                  const std::vector<PeriodicField>& u_path,
                                  const PeriodicField& rho0);

/// || p_t + div(p u) + (gamma-1) p div u ||_L2 per interior snapshot, with
/// p = a rho^gamma and p_t by centered time differencing.
std::vector<double> pressure_residual(const DensityPath& rho_path,
                                      const std::vector<PeriodicField>& u_path,
                                      const FluidParams& params);

} // namespace viscoplast::transport
