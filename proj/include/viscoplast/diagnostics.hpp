#pragma once

#include <functional>
#include <vector>

#include "viscoplast/params.hpp"
#include "viscoplast/state.hpp"

namespace viscoplast::diag {

/// Per-step monitored scalars. The CSV schema is
/// t,mass,energy,dissipation,psi,j_min,fp_iters,energy_residual.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double dissipation = 0.0;
    double psi = 1.0;
    double j_min = 0.0;
    int fp_iters = 0;
    double energy_residual = 0.0;
};

/// Derived pressure field p = a rho^gamma.
PeriodicField pressure_field(const FluidParams& p, const PeriodicField& rho);

double total_mass(const State& s);

/// (1/2) int rho |u|^2 + (a/(gamma-1)) int rho^gamma.
double total_energy(const FluidParams& p, const State& s);

/// mu ||grad u||^2 + (lambda+mu) ||div u||^2 + tau_star int B^{(q-2)/2} |D(u)|^2.
/// In 1D the stress carries mu alone: mu ||u_x||^2 + tau_star int B^{(q-2)/2} u_x^2.
double dissipation(const FluidParams& p, const PeriodicField& u);

/// psi = 1 + ||grad u||_L2^2 + ||sqrt(rho) u_t||_L2^2 + ||p||_{W^{1,6}}.
double psi(const FluidParams& p, const State& s, const PeriodicField& u_t);

/// Pointwise minimum of B^{(q-4)/2}((q-1)|D(u)|^2 + delta^2)|D(u_t)|^2.
double j_integrand_min(const FluidParams& p, const State& s, const PeriodicField& u_t);

/// Energy identity residuals between consecutive snapshots with midpoint
/// sampling: res_k = E_{k+1} - E_k + dt (dissipation - int rho f . u)(midpoint).
std::vector<double> energy_ledger(const FluidParams& p, const std::vector<State>& states,
                                  const std::function<PeriodicField(double)>& f_ext);

/// ||sqrt(rho_1)(u_1-u_2)||_L2^2 + ||rho_1-rho_2||_{L^{3/2}}^2 + ||p_1-p_2||_L2^2.
/// The density weight is taken from the first state.
double uniqueness_distance(const FluidParams& p, const State& s1, const State& s2);

/// Assemble the full record set for a stored trajectory: u_t by centered
/// differences of the snapshots (one-sided at the endpoints), energy residual
/// assigned to the record closing each interval.
std::vector<DiagnosticsRecord> records_from_trajectory(
    const FluidParams& p, const std::vector<State>& states,
    const std::function<PeriodicField(double)>& f_ext, const std::vector<int>& fp_iters);

} // namespace viscoplast::diag
