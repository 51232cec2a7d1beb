#pragma once

#include <functional>
#include <string>
#include <vector>

#include "viscoplast/diagnostics.hpp"
#include "viscoplast/elliptic.hpp"
#include "viscoplast/state.hpp"

namespace viscoplast::powerlaw {

/// Finite trigonometric velocity space X_m: modes with |k_a| <= m on every
/// axis. The projection P_m is idempotent and self-adjoint in the discrete L^2
/// product.
struct GalerkinSpace {
    PeriodicGrid grid;
    int m = 0; // retained modes per axis

    GalerkinSpace() = default;
    GalerkinSpace(const PeriodicGrid& grid_, int m_ = 0)
        : grid(grid_), m(m_ > 0 ? m_ : grid_.n / 3) {
        if (m >= grid.n / 2)
            throw ConfigError("galerkin.m", "retained modes must stay below n/2");
    }

    PeriodicField project(const PeriodicField& f) const { return project_modes(f, m); }
};

/// Galerkin mass operator: M[rho] v = P_m(rho v). Symmetric positive definite
/// on X_m with smallest eigenvalue >= inf rho.
PeriodicField mass_apply(const GalerkinSpace& space, const PeriodicField& rho,
                         const PeriodicField& v);

/// Conjugate-gradient solve of M[rho] x = b on X_m. Requires inf rho >=
/// rho_floor > 0; the caller is responsible for applying the vacuum floor.
PeriodicField mass_solve(const GalerkinSpace& space, const PeriodicField& rho,
                         const PeriodicField& b, double tol = 1e-12, int max_iter = 500,
                         double rho_floor = 1e-8);

/// N(rho, u, f) = P_m[ rho f - div(rho u (x) u) + div S_delta - a grad rho^gamma ],
/// products dealiased.
PeriodicField momentum_rhs(const FluidParams& p, const GalerkinSpace& space,
                           const State& state, const PeriodicField& f_ext);

struct StepOptions {
    double fp_tol = 1e-10;
    int fp_max = 60;
    double rho_floor = 1e-8;
};

/// Largest dt for which the per-step Picard map contracts: the midpoint
/// viscous coupling is explicit in the iteration, so dt must stay below
/// 2 rho_min / (mu_eff k_cut^2) with mu_eff the effective viscosity
/// mu + tau_star * max phi(B). Returned with a 0.5 safety factor, combined
/// with the advective CFL bound 0.5 h / max|u|.
double stable_dt(const FluidParams& p, const GalerkinSpace& space, const PeriodicField& rho,
                 const PeriodicField& u);

struct StepInfo {
    int fp_iters = 0;
    double fp_delta = 0.0;
    bool floored = false;      // vacuum floor active under M[rho]
    double clipped_mass = 0.0; // negative-density mass clipped this step
};

/// One step of the per-step Banach iteration:
///   rho^(k) = advance_density(rho^n, u^(k-1), dt)
///   u^(k)   = M[rho^(k)]^{-1} ( M[rho^n] u^n + dt N(midpoint of (u^n, u^(k-1))) )
/// until ||u^(k) - u^(k-1)||_L2 <= fp_tol. Throws FixedPointDiverged when the
/// iteration exceeds fp_max or the update blows up.
State step(const FluidParams& p, const GalerkinSpace& space, const State& state,
           const std::function<PeriodicField(double)>& f_ext, double dt,
           const StepOptions& opts = {}, StepInfo* info = nullptr);

enum class RunStatus { completed, blowup, diverged };

struct RunOptions {
    double dt = 0.0;
    double t_end = 0.0;
    int output_every = 1;
    StepOptions step;
    double psi_max = 1e6;
};

struct RunResult {
    std::vector<State> states; // snapshots at output times (always includes t=0)
    std::vector<int> fp_iters; // Picard count of the step producing each snapshot
    std::vector<double> psi_steps; // blowup monitor, logged every step
    std::vector<diag::DiagnosticsRecord> records;
    RunStatus status = RunStatus::completed;
    double t_stop = 0.0;
    std::string error;
    double total_clipped_mass = 0.0;
    int floor_activations = 0;
    std::vector<std::string> warnings;
};

/// Advance to t_end or abort on blowup (psi > psi_max), fixed-point
/// divergence, or a clipped-mass budget overrun (clipping beyond 1e-8 of the
/// initial mass means real mass loss, not roundoff ringing); on abort the
/// partial trajectory is preserved in the result.
/// When `g` is given, the compatibility residual of (rho0, u0) is checked;
/// otherwise a warning is recorded.
RunResult run(const FluidParams& p, const GalerkinSpace& space, const PeriodicField& rho0,
              const PeriodicField& u0, const std::function<PeriodicField(double)>& f_ext,
              const RunOptions& opts, const PeriodicField* g = nullptr);

} // namespace viscoplast::powerlaw
