#pragma once

#include <vector>

#include "viscoplast/constitutive.hpp"
#include "viscoplast/field.hpp"

namespace viscoplast::elliptic {

/// -div S_delta(D(u)) = f on a periodic domain. Every component of f must be
/// mean-zero (compatibility on the torus); params must be strongly elliptic.
struct EllipticProblem {
    FluidParams params;
    PeriodicField f; // vector field, mean-zero per component

    void validate() const;
};

struct EllipticSolution {
    PeriodicField u; // mean-zero representative
    double residual_norm = 0.0;
    int newton_iters = 0;
    std::vector<double> residual_history; // L2 residual before each Newton step
};

/// -div S_delta(D(u)), assembled pointwise and differentiated spectrally.
/// In 1D the stress law is mu s + tau_star F(s); in 2D/3D the full tensor law.
/// The nonlinear flux is dealiased (2/3 rule); the Lame part is exact.
PeriodicField apply_operator(const FluidParams& p, const PeriodicField& u);

/// Directional derivative of apply_operator at u_star in direction v:
///   -div( 2 mu E + lambda tr(E) I + tau_star dF(D*)[E] ),  E = D(v).
/// With constant tau_star = 0 this is -mu Lap v - (lambda+mu) grad div v.
PeriodicField apply_linearized(const FluidParams& p, const PeriodicField& u_star,
                               const PeriodicField& v);

/// Quasi-linear contraction sum_jkl a_ij^kl(D(u_star)) d_k d_l v_j with frozen
/// coefficients. For v = u_star this reproduces div S_delta(D(u_star)) exactly
/// (the negative of apply_operator, up to aliasing).
PeriodicField apply_quasilinear(const FluidParams& p, const PeriodicField& u_star,
                                const PeriodicField& v);

/// Newton iteration with backtracking line search; each linear solve is a
/// BiCGStab iteration preconditioned by the constant-coefficient Lame inverse
/// in spectral space. For q < 2 with small delta an internal delta-ramp
/// warm-starts the iteration. Returns the mean-zero solution.
EllipticSolution solve(const EllipticProblem& prob, double tol = 1e-10, int max_iter = 80,
                       const PeriodicField* initial_guess = nullptr);

struct W2pReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

/// 1D a priori bound, uniform in delta:
///   (mu/p) int |u_xx|^p + tau_star (q-1) int |u_x|^2 (|u_x|^2+delta^2)^{(q-4)/2} |u_xx|^p
///     <= (mu^{1-p}/p) int |f|^p.
W2pReport verify_w2p_1d(const FluidParams& p, const PeriodicField& u, const PeriodicField& f,
                        double p_exp);

struct H2Report {
    double curl_term = 0.0;
    double div_term = 0.0;
    double rhs_bound = 0.0;
    bool satisfied = false;
};

/// H^2 bound in 2D/3D with the explicit epsilon = mu/2 and C(eps) = 1/(2 mu):
///   (mu - eps) ||grad curl u||^2 + (2 mu + lambda - eps) ||grad div u||^2
///     <= C(eps) ||f||^2.
H2Report verify_h2(const FluidParams& p, const PeriodicField& u, const PeriodicField& f);

/// Admissible initial velocity from the compatibility condition:
/// solves -div S_delta(D(u0)) = sqrt(rho0) g - grad(a rho0^gamma), with the
/// right-hand side projected to mean zero.
PeriodicField compat_init(const FluidParams& p, const PeriodicField& rho0,
                          const PeriodicField& g, double tol = 1e-10, int max_iter = 80,
                          const PeriodicField* initial_guess = nullptr);

/// Right-hand side of the compatibility problem (exposed for residual checks).
PeriodicField compat_rhs(const FluidParams& p, const PeriodicField& rho0,
                         const PeriodicField& g);

} // namespace viscoplast::elliptic
