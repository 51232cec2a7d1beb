#pragma once

#include <array>
#include <optional>

#include "viscoplast/params.hpp"
#include "viscoplast/tensor.hpp"

namespace viscoplast {

/// Rate of strain D(u) = (grad_u + grad_u^T)/2.
SymTensor rate_of_strain(const Matrix& grad_u);

/// Regularized nonlinear factor phi(B) = B^{(q-2)/2}, B = |D|^2 + delta^2.
/// Throws SingularEvaluation when q < 2 and B = 0.
double nonlinear_factor(const FluidParams& p, double B);

/// Stress law.
///   d >= 2:  S_delta = 2 mu D + lambda tr(D) I + tau_star phi(B) D
///   d == 1:  S_delta = mu s + tau_star phi(s^2 + delta^2) s
/// The one-dimensional systems carry a single viscosity coefficient mu; lambda
/// does not enter in 1D.
SymTensor stress_delta(const FluidParams& p, const SymTensor& D);

/// Scalar 1D stress, s = du/dx.
double stress_delta_1d(const FluidParams& p, double s);

/// Derivative of the 1D stress w.r.t. s:
///   mu + tau_star B^{(q-4)/2} ((q-1) s^2 + delta^2),  B = s^2 + delta^2.
/// Strictly >= mu for q >= 1.
double stress_derivative_1d(const FluidParams& p, double s);

/// Exact (unregularized) 1D Bingham stress. Returns nullopt when s = 0: the
/// stress there is set-valued, constrained only by |S_0| < tau_star, and
/// callers must branch.
std::optional<double> stress_bingham_1d(const FluidParams& p, double s);

/// beta(B) = mu + (tau_star/2) B^{(q-2)/2}. Requires B >= delta^2; B > 0 when q < 2.
double beta_fn(const FluidParams& p, double B);

/// beta'(B) = (tau_star/4)(q-2) B^{(q-4)/2}. Zero when tau_star = 0 or q = 2.
double beta_prime(const FluidParams& p, double B);

/// F_delta^q(A) = (|A|^2 + delta^2)^{(q-2)/2} A.
SymTensor flux_F(const FluidParams& p, const SymTensor& A);

/// Directional derivative of flux_F at D in direction E:
///   dF(D)[E] = phi(B) E + 2 phi'(B) (D:E) D.
SymTensor flux_derivative(const FluidParams& p, const SymTensor& D, const SymTensor& E);

/// Coefficient tensor of the quasi-linear form [div S_delta]_i = a_ij^kl d_k d_l u_j:
///   a_ij^kl = beta(B) delta_kl delta_ij + (lambda + beta(B)) delta_il delta_jk
///             + 4 beta'(B) D_ik D_jl.
CoeffTensor stress_jacobian(const FluidParams& p, const SymTensor& D);

/// Principal-symbol quadratic form (A(x,xi) eta, eta) assembled from
/// stress_jacobian with complex eta = eta_re + i eta_im. The assembled value is
/// provably real; an assertion rejects imaginary parts above 1e-12 and the real
/// part is returned.
double symbol_form(const FluidParams& p, const SymTensor& D,
                   const std::array<double, 3>& xi,
                   const std::array<double, 3>& eta_re,
                   const std::array<double, 3>& eta_im);

/// Closed form of the same quadratic form:
///   beta(B)|xi|^2|eta|^2 + (lambda + beta(B)) |(xi,eta)|^2 + 4 beta'(B) |(D xi, eta)|^2.
double symbol_form_closed(const FluidParams& p, const SymTensor& D,
                          const std::array<double, 3>& xi,
                          const std::array<double, 3>& eta_re,
                          const std::array<double, 3>& eta_im);

/// Sufficient condition for strong ellipticity of the linearized operator:
/// mu > 0, 2 mu + lambda > 0, q >= 1, delta >= 0.
bool is_strongly_elliptic(const FluidParams& p);

/// Maximal L^p regularity of the linearized operator additionally needs the
/// coefficients uniformly continuous, i.e. delta bounded away from zero. Kept
/// separate from is_strongly_elliptic on purpose.
bool has_uniform_lp_regularity(const FluidParams& p, double c_min = 1e-12);

/// Duality product sum_ij (F(C)_ij - F(D)_ij)(C_ij - D_ij); >= 0 for q >= 1.
double monotonicity_gap(const FluidParams& p, const SymTensor& C, const SymTensor& D);

/// Integrand of the J functional: B^{(q-4)/2} ((q-1)|D|^2 + delta^2) |E|^2
/// with B = |D|^2 + delta^2 and E playing D(u_t). Nonnegative for q >= 1.
double j_quadratic(const FluidParams& p, const SymTensor& D, const SymTensor& E);

} // namespace viscoplast
