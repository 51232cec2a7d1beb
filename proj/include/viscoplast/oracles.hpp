#pragma once

#include <functional>
#include <vector>

#include "viscoplast/field.hpp"
#include "viscoplast/params.hpp"

namespace viscoplast::oracles {

/// Reference implementations kept deliberately independent of the production
/// solver paths; used for cross-validation only.

/// Direct per-Fourier-mode solve of the constant-coefficient Lame system
///   -mu Lap u - (mu+lambda) grad div u = f   (1D: -mu u'' = f),
/// assembling and inverting the d x d symbol mu|k|^2 I + (mu+lambda) k k^T by
/// Gaussian elimination per mode.
PeriodicField lame_mode_solve(const FluidParams& p, const PeriodicField& f);

/// Explicit second-order finite-difference integrator for the 1D compressible
/// Newtonian system
///   rho_t + (rho u)_x = 0
///   (rho u)_t + (rho u^2)_x = mu u_xx - (a rho^gamma)_x + rho f,
/// central differences in space, Heun in time.
struct FdState1d {
    std::vector<double> rho;
    std::vector<double> u;
};
FdState1d fd_compressible_ns_1d(const FluidParams& p, const std::vector<double>& rho0,
                                const std::vector<double>& u0, double length, double t_end,
                                double dt,
                                const std::function<double(double, double)>& f_ext = {});

/// Semi-Lagrangian step for the 1D continuity equation: characteristics traced
/// back with RK2, cubic Lagrange interpolation, the compression factor
/// integrated along the characteristic (d rho / dt = -rho div u).
std::vector<double> semi_lagrangian_density_1d(const std::vector<double>& rho,
                                               const std::vector<double>& u, double length,
                                               double dt);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace viscoplast::oracles
