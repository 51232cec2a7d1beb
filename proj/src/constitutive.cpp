#include "viscoplast/constitutive.hpp"

#include <cmath>
#include <complex>

namespace viscoplast {

SymTensor rate_of_strain(const Matrix& grad_u) {
    return SymTensor::symmetric_part(grad_u);
}

double nonlinear_factor(const FluidParams& p, double B) {
    if (p.q == 2.0)
        return 1.0;
    if (B <= 0.0) {
        if (p.q < 2.0)
            throw SingularEvaluation("(|D|^2 + delta^2)^{(q-2)/2} undefined: q < 2 and B = 0");
        return 0.0;
    }
    return std::pow(B, 0.5 * (p.q - 2.0));
}

SymTensor stress_delta(const FluidParams& p, const SymTensor& D) {
    const int d = D.dim();
    if (d == 1) {
        SymTensor s(1);
        s(0, 0) = stress_delta_1d(p, D(0, 0));
        return s;
    }
    const double B = D.frobenius_sq() + p.delta * p.delta;
    const double phi = (p.tau_star > 0.0) ? nonlinear_factor(p, B) : 0.0;
    const double tr = D.trace();
    SymTensor s(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            s(i, j) = 2.0 * p.mu * D(i, j) + p.tau_star * phi * D(i, j);
    for (int i = 0; i < d; ++i)
        s(i, i) += p.lambda * tr;
    return s;
}

double stress_delta_1d(const FluidParams& p, double s) {
    const double B = s * s + p.delta * p.delta;
    const double phi = (p.tau_star > 0.0) ? nonlinear_factor(p, B) : 0.0;
    return p.mu * s + p.tau_star * phi * s;
}

double stress_derivative_1d(const FluidParams& p, double s) {
    if (p.tau_star == 0.0)
        return p.mu;
    const double B = s * s + p.delta * p.delta;
    if (p.q == 2.0)
        return p.mu + p.tau_star;
    if (B <= 0.0) {
        if (p.q < 4.0)
            throw SingularEvaluation("1D stress derivative undefined: B = 0 and q < 4");
        return p.mu;
    }
    // phi + 2 phi' s^2 = B^{(q-4)/2} ((q-1) s^2 + delta^2)
    return p.mu + p.tau_star * std::pow(B, 0.5 * (p.q - 4.0)) *
                      ((p.q - 1.0) * s * s + p.delta * p.delta);
}

std::optional<double> stress_bingham_1d(const FluidParams& p, double s) {
    if (s == 0.0)
        return std::nullopt;
    return p.mu * s + p.tau_star * (s > 0.0 ? 1.0 : -1.0);
}

double beta_fn(const FluidParams& p, double B) {
    if (p.tau_star == 0.0)
        return p.mu;
    return p.mu + 0.5 * p.tau_star * nonlinear_factor(p, B);
}

double beta_prime(const FluidParams& p, double B) {
    if (p.tau_star == 0.0 || p.q == 2.0)
        return 0.0;
    if (B <= 0.0) {
        if (p.q < 4.0)
            throw SingularEvaluation("beta'(B) undefined: q < 4 and B = 0");
        return 0.0;
    }
    return 0.25 * p.tau_star * (p.q - 2.0) * std::pow(B, 0.5 * (p.q - 4.0));
}

SymTensor flux_F(const FluidParams& p, const SymTensor& A) {
    const double phi = nonlinear_factor(p, A.frobenius_sq() + p.delta * p.delta);
    SymTensor r(A.dim());
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j)
            r(i, j) = phi * A(i, j);
    return r;
}

SymTensor flux_derivative(const FluidParams& p, const SymTensor& D, const SymTensor& E) {
    const double B = D.frobenius_sq() + p.delta * p.delta;
    const double phi = nonlinear_factor(p, B);
    double phip = 0.0;
    if (p.q != 2.0) {
        if (B <= 0.0) {
            if (p.q < 4.0)
                throw SingularEvaluation("flux derivative undefined: q < 4 and B = 0");
        } else {
            phip = 0.5 * (p.q - 2.0) * std::pow(B, 0.5 * (p.q - 4.0));
        }
    }
    const double de = D.dot(E);
    SymTensor r(D.dim());
    for (int i = 0; i < D.dim(); ++i)
        for (int j = 0; j < D.dim(); ++j)
            r(i, j) = phi * E(i, j) + 2.0 * phip * de * D(i, j);
    return r;
}

CoeffTensor stress_jacobian(const FluidParams& p, const SymTensor& D) {
    const int d = D.dim();
    const double B = D.frobenius_sq() + p.delta * p.delta;
    const double beta = beta_fn(p, B);
    const double betap = beta_prime(p, B);
    CoeffTensor a(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    double v = 4.0 * betap * D(i, k) * D(j, l);
                    if (k == l && i == j)
                        v += beta;
                    if (i == l && j == k)
                        v += p.lambda + beta;
                    a(i, j, k, l) = v;
                }
    return a;
}

double symbol_form(const FluidParams& p, const SymTensor& D,
                   const std::array<double, 3>& xi,
                   const std::array<double, 3>& eta_re,
                   const std::array<double, 3>& eta_im) {
    const int d = D.dim();
    const CoeffTensor a = stress_jacobian(p, D);
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < d; ++i) {
        const std::complex<double> eta_i_bar(eta_re[static_cast<size_t>(i)],
                                             -eta_im[static_cast<size_t>(i)]);
        for (int j = 0; j < d; ++j) {
            const std::complex<double> eta_j(eta_re[static_cast<size_t>(j)],
                                             eta_im[static_cast<size_t>(j)]);
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l)
                    acc += a(i, j, k, l) * xi[static_cast<size_t>(k)] *
                           xi[static_cast<size_t>(l)] * eta_j * eta_i_bar;
        }
    }
    if (std::abs(acc.imag()) >= 1e-12)
        throw Error("symbol form has nonvanishing imaginary part: " +
                    std::to_string(acc.imag()));
    return acc.real();
}

double symbol_form_closed(const FluidParams& p, const SymTensor& D,
                          const std::array<double, 3>& xi,
                          const std::array<double, 3>& eta_re,
                          const std::array<double, 3>& eta_im) {
    const int d = D.dim();
    const double B = D.frobenius_sq() + p.delta * p.delta;
    const double beta = beta_fn(p, B);
    const double betap = beta_prime(p, B);

    double xi_sq = 0.0, eta_sq = 0.0;
    double xe_re = 0.0, xe_im = 0.0;   // (xi, eta) = sum xi_i conj(eta_i)
    double dxe_re = 0.0, dxe_im = 0.0; // (D xi, eta)
    for (int i = 0; i < d; ++i) {
        const auto ii = static_cast<size_t>(i);
        xi_sq += xi[ii] * xi[ii];
        eta_sq += eta_re[ii] * eta_re[ii] + eta_im[ii] * eta_im[ii];
        xe_re += xi[ii] * eta_re[ii];
        xe_im -= xi[ii] * eta_im[ii];
        double dxi = 0.0;
        for (int j = 0; j < d; ++j)
            dxi += D(i, j) * xi[static_cast<size_t>(j)];
        dxe_re += dxi * eta_re[ii];
        dxe_im -= dxi * eta_im[ii];
    }
    return beta * xi_sq * eta_sq + (p.lambda + beta) * (xe_re * xe_re + xe_im * xe_im) +
           4.0 * betap * (dxe_re * dxe_re + dxe_im * dxe_im);
}

bool is_strongly_elliptic(const FluidParams& p) {
    return p.mu > 0.0 && 2.0 * p.mu + p.lambda > 0.0 && p.q >= 1.0 && p.delta >= 0.0;
}

bool has_uniform_lp_regularity(const FluidParams& p, double c_min) {
    return is_strongly_elliptic(p) && p.delta >= c_min && p.delta > 0.0;
}

double monotonicity_gap(const FluidParams& p, const SymTensor& C, const SymTensor& D) {
    const SymTensor fc = flux_F(p, C);
    const SymTensor fd = flux_F(p, D);
    double gap = 0.0;
    for (int i = 0; i < C.dim(); ++i)
        for (int j = 0; j < C.dim(); ++j)
            gap += (fc(i, j) - fd(i, j)) * (C(i, j) - D(i, j));
    return gap;
}

double j_quadratic(const FluidParams& p, const SymTensor& D, const SymTensor& E) {
    const double d_sq = D.frobenius_sq();
    const double B = d_sq + p.delta * p.delta;
    double w;
    if (p.q == 4.0) {
        w = 1.0;
    } else {
        if (B <= 0.0)
            throw SingularEvaluation("J integrand undefined: B = 0 and q != 4");
        w = std::pow(B, 0.5 * (p.q - 4.0));
    }
    return w * ((p.q - 1.0) * d_sq + p.delta * p.delta) * E.frobenius_sq();
}

} // namespace viscoplast
