#include "viscoplast/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace viscoplast::elliptic {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void decompose(std::int64_t node, int dim, int n, int idx[3]) {
    idx[0] = idx[1] = idx[2] = 0;
    for (int a = dim - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(node % n);
        node /= n;
    }
}

// -mu Lap u - (mu+lambda) grad div u, spectrally exact. In 1D the scalar law
// carries coefficient mu alone.
PeriodicField lame_apply(const FluidParams& p, const PeriodicField& u) {
    const PeriodicGrid& g = u.grid();
    const int d = g.dim;
    const double k_scale = 2.0 * kPi / g.length;
    std::vector<std::vector<std::complex<double>>> spec;
    spec.reserve(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c)
        spec.push_back(forward_fft(g, u.component(c)));

    PeriodicField out(g, Rank::vector);
    const std::int64_t nn = g.num_nodes();
    std::vector<std::vector<std::complex<double>>> res(
        static_cast<size_t>(d), std::vector<std::complex<double>>(static_cast<size_t>(nn)));
    int idx[3];
    for (std::int64_t node = 0; node < nn; ++node) {
        decompose(node, d, g.n, idx);
        double k[3] = {0, 0, 0};
        bool nyquist = false;
        double ksq = 0.0;
        for (int a = 0; a < d; ++a) {
            const int m = mode_number(idx[a], g.n);
            if (std::abs(m) == g.n / 2 && m != 0)
                nyquist = true;
            k[a] = k_scale * m;
            ksq += k[a] * k[a];
        }
        const auto sn = static_cast<size_t>(node);
        if (nyquist) {
            for (int c = 0; c < d; ++c)
                res[static_cast<size_t>(c)][sn] = 0.0;
            continue;
        }
        std::complex<double> kdotu(0.0, 0.0);
        for (int c = 0; c < d; ++c)
            kdotu += k[c] * spec[static_cast<size_t>(c)][sn];
        for (int c = 0; c < d; ++c) {
            if (d == 1)
                res[static_cast<size_t>(c)][sn] = p.mu * ksq * spec[static_cast<size_t>(c)][sn];
            else
                res[static_cast<size_t>(c)][sn] =
                    p.mu * ksq * spec[static_cast<size_t>(c)][sn] +
                    (p.mu + p.lambda) * k[c] * kdotu;
        }
    }
    for (int c = 0; c < d; ++c)
        inverse_fft(g, res[static_cast<size_t>(c)], out.component(c));
    return out;
}

// Inverse of lame_apply on the mean-zero subspace; zero and Nyquist modes of
// the result are dropped.
PeriodicField lame_inverse(double mu, double lambda, const PeriodicField& r) {
    const PeriodicGrid& g = r.grid();
    const int d = g.dim;
    const double k_scale = 2.0 * kPi / g.length;
    std::vector<std::vector<std::complex<double>>> spec;
    spec.reserve(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c)
        spec.push_back(forward_fft(g, r.component(c)));

    PeriodicField out(g, Rank::vector);
    const std::int64_t nn = g.num_nodes();
    std::vector<std::vector<std::complex<double>>> res(
        static_cast<size_t>(d), std::vector<std::complex<double>>(static_cast<size_t>(nn)));
    int idx[3];
    for (std::int64_t node = 0; node < nn; ++node) {
        decompose(node, d, g.n, idx);
        double k[3] = {0, 0, 0};
        bool nyquist = false;
        double ksq = 0.0;
        for (int a = 0; a < d; ++a) {
            const int m = mode_number(idx[a], g.n);
            if (std::abs(m) == g.n / 2 && m != 0)
                nyquist = true;
            k[a] = k_scale * m;
            ksq += k[a] * k[a];
        }
        const auto sn = static_cast<size_t>(node);
        if (nyquist || ksq == 0.0) {
            for (int c = 0; c < d; ++c)
                res[static_cast<size_t>(c)][sn] = 0.0;
            continue;
        }
        if (d == 1) {
            res[0][sn] = spec[0][sn] / (mu * ksq);
            continue;
        }
        std::complex<double> kdotr(0.0, 0.0);
        for (int c = 0; c < d; ++c)
            kdotr += k[c] * spec[static_cast<size_t>(c)][sn];
        // (mu ksq I + (mu+lambda) k k^T)^{-1} via Sherman-Morrison
        const double denom = (2.0 * mu + lambda) * ksq;
        for (int c = 0; c < d; ++c)
            res[static_cast<size_t>(c)][sn] =
                (spec[static_cast<size_t>(c)][sn] - ((mu + lambda) / denom) * k[c] * kdotr) /
                (mu * ksq);
    }
    for (int c = 0; c < d; ++c)
        inverse_fft(g, res[static_cast<size_t>(c)], out.component(c));
    return out;
}

// Pointwise B = |D|^2 + delta^2 for a symtensor field (off-diagonals twice).
std::vector<double> b_values(const FluidParams& p, const PeriodicField& D) {
    auto mod = pointwise_modulus(D);
    for (double& m : mod)
        m = m * m + p.delta * p.delta;
    return mod;
}

// tau_star F_delta^q(D) as a field; throws on the singular q < 2, delta = 0,
// D = 0 case.
PeriodicField nonlinear_flux(const FluidParams& p, const PeriodicField& D,
                             const std::vector<double>& B) {
    const std::int64_t nn = D.num_nodes();
    PeriodicField out(D.grid(), D.rank());
    if (p.tau_star == 0.0)
        return out;
    std::vector<double> phi(static_cast<size_t>(nn));
    for (std::int64_t i = 0; i < nn; ++i)
        phi[static_cast<size_t>(i)] = nonlinear_factor(p, B[static_cast<size_t>(i)]);
    for (int c = 0; c < D.components(); ++c) {
        const double* src = D.component(c);
        double* dst = out.component(c);
        for (std::int64_t i = 0; i < nn; ++i)
            dst[i] = p.tau_star * phi[static_cast<size_t>(i)] * src[i];
    }
    return out;
}

// Frozen linearization data at a reference state u*.
struct Linearization {
    FluidParams p;
    PeriodicField D;          // D(u*)
    std::vector<double> phi;  // (B*)^{(q-2)/2}
    std::vector<double> phip; // phi'(B*)

    Linearization(const FluidParams& params, const PeriodicField& u_star) : p(params) {
        D = rate_of_strain_field(u_star);
        const auto B = b_values(p, D);
        const auto nn = static_cast<size_t>(D.num_nodes());
        phi.assign(nn, 0.0);
        phip.assign(nn, 0.0);
        if (p.tau_star == 0.0)
            return;
        for (size_t i = 0; i < nn; ++i) {
            phi[i] = nonlinear_factor(p, B[i]);
            if (p.q != 2.0) {
                if (B[i] <= 0.0) {
                    if (p.q < 4.0)
                        throw SingularEvaluation("linearization undefined: B = 0 and q < 4");
                } else {
                    phip[i] = 0.5 * (p.q - 2.0) * std::pow(B[i], 0.5 * (p.q - 4.0));
                }
            }
        }
    }

    PeriodicField apply(const PeriodicField& v) const {
        PeriodicField out = lame_apply(p, v);
        if (p.tau_star == 0.0)
            return out;
        const PeriodicGrid& g = v.grid();
        const std::int64_t nn = g.num_nodes();
        const PeriodicField E = rate_of_strain_field(v);
        // dF(D)[E] = phi E + 2 phi' (D:E) D, scaled by tau_star
        PeriodicField G(g, E.rank());
        std::vector<double> de(static_cast<size_t>(nn), 0.0);
        {
            int idx = 0;
            for (int i = 0; i < g.dim; ++i)
                for (int j = i; j < g.dim; ++j) {
                    const double w = (i == j) ? 1.0 : 2.0;
                    const double* dc = D.component(idx);
                    const double* ec = E.component(idx);
                    for (std::int64_t nidx = 0; nidx < nn; ++nidx)
                        de[static_cast<size_t>(nidx)] += w * dc[nidx] * ec[nidx];
                    ++idx;
                }
        }
        for (int c = 0; c < E.components(); ++c) {
            const double* dc = D.component(c);
            const double* ec = E.component(c);
            double* gc = G.component(c);
            for (std::int64_t nidx = 0; nidx < nn; ++nidx) {
                const auto i = static_cast<size_t>(nidx);
                gc[nidx] = p.tau_star * (phi[i] * ec[nidx] + 2.0 * phip[i] * de[i] * dc[nidx]);
            }
        }
        out -= divergence_sym(dealias(G));
        return out;
    }
};

// Preconditioner viscosity: spatial mean of beta(B*).
double mean_beta(const FluidParams& p, const Linearization& lin) {
    if (p.tau_star == 0.0)
        return p.mu;
    double acc = 0.0;
    for (double v : lin.phi)
        acc += v;
    return p.mu + 0.5 * p.tau_star * acc / static_cast<double>(lin.phi.size());
}

// Preconditioned BiCGStab for A x = b; returns x (starting from zero).
PeriodicField bicgstab(const Linearization& lin, const PeriodicField& b, double atol,
                       int max_iter) {
    const double bnorm = std::sqrt(inner(b, b));
    PeriodicField x(b.grid(), Rank::vector);
    if (bnorm == 0.0)
        return x;

    const double pre_mu = mean_beta(lin.p, lin);
    const double pre_lambda = lin.p.lambda;
    auto precond = [&](const PeriodicField& r) { return lame_inverse(pre_mu, pre_lambda, r); };

    PeriodicField r = b; // x = 0
    PeriodicField r_hat = r;
    PeriodicField v(b.grid(), Rank::vector);
    PeriodicField pvec(b.grid(), Rank::vector);
    double rho = 1.0, alpha = 1.0, omega = 1.0;

    for (int it = 0; it < max_iter; ++it) {
        const double rho1 = inner(r_hat, r);
        if (std::abs(rho1) < 1e-300) {
            r_hat = r; // restart against breakdown
            rho = alpha = omega = 1.0;
            pvec *= 0.0;
            v *= 0.0;
            continue;
        }
        const double beta = (rho1 / rho) * (alpha / omega);
        rho = rho1;
        // p = r + beta (p - omega v)
        PeriodicField tmp = pvec;
        axpy(-omega, v, tmp);
        tmp *= beta;
        tmp += r;
        pvec = tmp;

        const PeriodicField y = precond(pvec);
        v = lin.apply(y);
        const double rhv = inner(r_hat, v);
        if (std::abs(rhv) < 1e-300) {
            r_hat = r;
            rho = alpha = omega = 1.0;
            continue;
        }
        alpha = rho / rhv;
        PeriodicField s = r;
        axpy(-alpha, v, s);
        axpy(alpha, y, x);
        const double snorm = std::sqrt(inner(s, s));
        if (snorm <= atol)
            return x;

        const PeriodicField z = precond(s);
        const PeriodicField t = lin.apply(z);
        const double tt = inner(t, t);
        if (tt < 1e-300) {
            r = s;
            continue;
        }
        omega = inner(t, s) / tt;
        axpy(omega, z, x);
        r = s;
        axpy(-omega, t, r);
        if (std::sqrt(inner(r, r)) <= atol)
            return x;
    }
    return x; // best effort; Newton's line search judges the step
}

EllipticSolution newton_solve(const FluidParams& p, const PeriodicField& f, double tol,
                              int max_iter, const PeriodicField* initial_guess) {
    PeriodicField u = initial_guess ? *initial_guess : PeriodicField(f.grid(), Rank::vector);
    u = mean_zero_project(u);

    PeriodicField r = f - apply_operator(p, u);
    double res = std::sqrt(inner(r, r));
    int iters = 0;
    std::vector<double> history{res};
    while (res > tol) {
        if (iters >= max_iter)
            throw NonConvergence("elliptic Newton did not converge", iters, res);
        const Linearization lin(p, u);
        // quadratic forcing keeps the Newton convergence quadratic near the end
        const double inner_atol =
            std::max(std::min(1e-4 * res, 10.0 * res * res), 0.25 * tol);
        const PeriodicField w = bicgstab(lin, r, inner_atol, 400);

        double step = 1.0;
        PeriodicField u_try = u;
        axpy(step, w, u_try);
        PeriodicField r_try = f - apply_operator(p, u_try);
        double res_try = std::sqrt(inner(r_try, r_try));
        while (res_try > (1.0 - 1e-4 * step) * res && step > 1e-8) {
            step *= 0.5;
            u_try = u;
            axpy(step, w, u_try);
            r_try = f - apply_operator(p, u_try);
            res_try = std::sqrt(inner(r_try, r_try));
        }
        if (res_try >= res && res > tol)
            throw NonConvergence("elliptic Newton line search stalled", iters, res);
        u = mean_zero_project(u_try);
        r = r_try;
        res = res_try;
        history.push_back(res);
        ++iters;
    }
    return EllipticSolution{u, res, iters, std::move(history)};
}

} // namespace

void EllipticProblem::validate() const {
    params.validate();
    if (f.rank() != Rank::vector)
        throw ConfigError("elliptic.f", "right-hand side must be a vector field");
    if (!is_strongly_elliptic(params))
        throw ConfigError("elliptic.params", "parameters violate strong ellipticity");
    for (int c = 0; c < f.components(); ++c)
        if (std::abs(mean(f, c)) > 1e-12 * std::max(1.0, max_abs(f)))
            throw ConfigError("elliptic.f",
                              "component " + std::to_string(c) + " has nonzero mean");
}

PeriodicField apply_operator(const FluidParams& p, const PeriodicField& u) {
    if (u.rank() != Rank::vector)
        throw Error("apply_operator expects a vector field");
    PeriodicField out = lame_apply(p, u);
    if (p.tau_star == 0.0)
        return out;
    const PeriodicField D = rate_of_strain_field(u);
    const auto B = b_values(p, D);
    out -= divergence_sym(dealias(nonlinear_flux(p, D, B)));
    return out;
}

PeriodicField apply_linearized(const FluidParams& p, const PeriodicField& u_star,
                               const PeriodicField& v) {
    return Linearization(p, u_star).apply(v);
}

PeriodicField apply_quasilinear(const FluidParams& p, const PeriodicField& u_star,
                                const PeriodicField& v) {
    const PeriodicGrid& g = v.grid();
    const int d = g.dim;
    const std::int64_t nn = g.num_nodes();

    if (d == 1) {
        const PeriodicField s_star = derivative(u_star, 0);
        const PeriodicField vxx = derivative(derivative(v, 0), 0);
        PeriodicField out(g, Rank::vector);
        for (std::int64_t i = 0; i < nn; ++i)
            out.at(0, i) = -stress_derivative_1d(p, s_star.at(0, i)) * vxx.at(0, i);
        return out;
    }

    // All second derivatives d_k d_l v_j
    std::vector<PeriodicField> d2(static_cast<size_t>(d * d * d),
                                  PeriodicField(g, Rank::scalar));
    for (int j = 0; j < d; ++j) {
        PeriodicField vj(g, Rank::scalar);
        std::copy(v.component(j), v.component(j) + nn, vj.component(0));
        for (int k = 0; k < d; ++k) {
            const PeriodicField dk = derivative(vj, k);
            for (int l = k; l < d; ++l) {
                PeriodicField dkl = derivative(dk, l);
                if (l != k)
                    d2[static_cast<size_t>((j * d + l) * d + k)] = dkl;
                d2[static_cast<size_t>((j * d + k) * d + l)] = std::move(dkl);
            }
        }
    }

    const PeriodicField Dstar = rate_of_strain_field(u_star);
    PeriodicField out(g, Rank::vector);
    for (std::int64_t node = 0; node < nn; ++node) {
        SymTensor Dn(d);
        int idx = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j)
                Dn.set(i, j, Dstar.at(idx++, node));
        const CoeffTensor a = stress_jacobian(p, Dn);
        for (int i = 0; i < d; ++i) {
            double acc = 0.0;
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l)
                        acc += a(i, j, k, l) *
                               d2[static_cast<size_t>((j * d + k) * d + l)].at(0, node);
            out.at(i, node) = -acc;
        }
    }
    return out;
}

EllipticSolution solve(const EllipticProblem& prob, double tol, int max_iter,
                       const PeriodicField* initial_guess) {
    prob.validate();
    const FluidParams& p = prob.params;
    const PeriodicField f = mean_zero_project(prob.f);

    // delta-ramp warm start for the stiff q < 2, small-delta regime
    if (p.tau_star > 0.0 && p.q < 2.0 && p.delta < 0.05 && !initial_guess) {
        PeriodicField u(f.grid(), Rank::vector);
        double d_cur = 0.1;
        int total_iters = 0;
        while (true) {
            FluidParams p_leg = p;
            p_leg.delta = std::max(p.delta, d_cur);
            EllipticSolution leg = newton_solve(p_leg, f, tol, max_iter, &u);
            total_iters += leg.newton_iters;
            u = leg.u;
            if (p_leg.delta <= p.delta) {
                leg.newton_iters = total_iters;
                return leg;
            }

            d_cur *= 0.25;
        }
    }
    return newton_solve(p, f, tol, max_iter, initial_guess);
}

W2pReport verify_w2p_1d(const FluidParams& p, const PeriodicField& u, const PeriodicField& f,
                        double p_exp) {
    if (u.grid().dim != 1)
        throw Error("verify_w2p_1d requires a 1D field");
    const PeriodicField ux = derivative(u, 0);
    const PeriodicField uxx = derivative(ux, 0);
    const std::int64_t nn = u.num_nodes();
    const double h = u.grid().h();

    double lhs = 0.0;
    for (std::int64_t i = 0; i < nn; ++i)
        lhs += std::pow(std::abs(uxx.at(0, i)), p_exp);
    lhs *= p.mu / p_exp * h;

    if (p.tau_star > 0.0 && p.q > 1.0) {
        double t2 = 0.0;
        for (std::int64_t i = 0; i < nn; ++i) {
            const double s = ux.at(0, i);
            const double B = s * s + p.delta * p.delta;
            double w;
            if (B <= 0.0) {
                if (p.q < 2.0)
                    throw SingularEvaluation("W2p weight undefined at B = 0, q < 2");
                w = (p.q == 2.0) ? 1.0 : 0.0;
            } else {
                w = s * s * std::pow(B, 0.5 * (p.q - 4.0));
            }
            t2 += w * std::pow(std::abs(uxx.at(0, i)), p_exp);
        }
        lhs += p.tau_star * (p.q - 1.0) * t2 * h;
    }

    double rhs = 0.0;
    for (std::int64_t i = 0; i < nn; ++i)
        rhs += std::pow(std::abs(f.at(0, i)), p_exp);
    rhs *= std::pow(p.mu, 1.0 - p_exp) / p_exp * h;

    return W2pReport{lhs, rhs, lhs <= rhs * (1.0 + 1e-6)};
}

H2Report verify_h2(const FluidParams& p, const PeriodicField& u, const PeriodicField& f) {
    const int d = u.grid().dim;
    if (d < 2)
        throw Error("verify_h2 requires dim 2 or 3");
    const double eps = 0.5 * p.mu;
    const double c_eps = 1.0 / (4.0 * eps); // Young: f . Lap u <= eps|Lap u|^2 + C(eps)|f|^2

    const PeriodicField w = curl(u);
    double grad_curl_sq = 0.0;
    for (int a = 0; a < d; ++a) {
        const PeriodicField dw = derivative(w, a);
        grad_curl_sq += inner(dw, dw);
    }
    const PeriodicField dv = divergence(u);
    double grad_div_sq = 0.0;
    for (int a = 0; a < d; ++a) {
        const PeriodicField dd = derivative(dv, a);
        grad_div_sq += inner(dd, dd);
    }

    H2Report rep;
    rep.curl_term = (p.mu - eps) * grad_curl_sq;
    rep.div_term = (2.0 * p.mu + p.lambda - eps) * grad_div_sq;
    rep.rhs_bound = c_eps * inner(f, f);
    rep.satisfied = rep.curl_term + rep.div_term <= rep.rhs_bound * (1.0 + 1e-6);
    return rep;
}

PeriodicField compat_rhs(const FluidParams& p, const PeriodicField& rho0,
                         const PeriodicField& g) {
    const PeriodicGrid& grid = rho0.grid();
    const std::int64_t nn = grid.num_nodes();
    PeriodicField p0(grid, Rank::scalar);
    for (std::int64_t i = 0; i < nn; ++i) {
        const double r = std::max(0.0, rho0.at(0, i));
        p0.at(0, i) = p.a * std::pow(r, p.gamma);
    }
    PeriodicField rhs(grid, Rank::vector);
    for (int c = 0; c < grid.dim; ++c) {
        const PeriodicField dp = derivative(p0, c);
        for (std::int64_t i = 0; i < nn; ++i)
            rhs.at(c, i) = std::sqrt(std::max(0.0, rho0.at(0, i))) * g.at(c, i) - dp.at(0, i);
    }
    return mean_zero_project(rhs);
}

PeriodicField compat_init(const FluidParams& p, const PeriodicField& rho0,
                          const PeriodicField& g, double tol, int max_iter,
                          const PeriodicField* initial_guess) {
    EllipticProblem prob{p, compat_rhs(p, rho0, g)};
    return solve(prob, tol, max_iter, initial_guess).u;
}

} // namespace viscoplast::elliptic
