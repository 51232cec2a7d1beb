#include "viscoplast/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "viscoplast/transport.hpp"

namespace viscoplast::powerlaw {

namespace {

PeriodicField scalar_times_vector(const PeriodicField& s, const PeriodicField& v) {
    PeriodicField out(v.grid(), Rank::vector);
    const std::int64_t nn = v.num_nodes();
    for (int c = 0; c < v.components(); ++c) {
        const double* sv = s.component(0);
        const double* vc = v.component(c);
        double* oc = out.component(c);
        for (std::int64_t i = 0; i < nn; ++i)
            oc[i] = sv[i] * vc[i];
    }
    return out;
}

} // namespace

PeriodicField mass_apply(const GalerkinSpace& space, const PeriodicField& rho,
                         const PeriodicField& v) {
    return space.project(scalar_times_vector(rho, v));
}

PeriodicField mass_solve(const GalerkinSpace& space, const PeriodicField& rho,
                         const PeriodicField& b, double tol, int max_iter,
                         double rho_floor) {
    double rho_min = rho.values()[0];
    for (double v : rho.values())
        rho_min = std::min(rho_min, v);
    if (rho_min < rho_floor)
        throw VacuumFloor(rho_min, rho_floor);

    // CG on the SPD operator v -> P_m(rho v)
    PeriodicField x(b.grid(), Rank::vector);
    PeriodicField r = space.project(b);
    PeriodicField p = r;
    double rs = inner(r, r);
    if (std::sqrt(rs) <= tol)
        return x;
    for (int it = 0; it < max_iter; ++it) {
        const PeriodicField ap = mass_apply(space, rho, p);
        const double alpha = rs / inner(p, ap);
        axpy(alpha, p, x);
        axpy(-alpha, ap, r);
        const double rs_new = inner(r, r);
        if (std::sqrt(rs_new) <= tol)
            return x;
        const double beta = rs_new / rs;
        rs = rs_new;
        PeriodicField pn = r;
        axpy(beta, p, pn);
        p = pn;
    }
    throw NonConvergence("mass_solve CG did not converge", max_iter, std::sqrt(rs));
}

PeriodicField momentum_rhs(const FluidParams& p, const GalerkinSpace& space,
                           const State& state, const PeriodicField& f_ext) {
    const PeriodicGrid& g = state.u.grid();
    const int d = g.dim;
    const std::int64_t nn = g.num_nodes();

    // rho f
    PeriodicField acc = scalar_times_vector(state.rho, f_ext);

    // - div(rho u (x) u)
    PeriodicField momentum_flux(g, Rank::symtensor);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            double* dst = momentum_flux.component(sym_component(i, j, d));
            for (std::int64_t nidx = 0; nidx < nn; ++nidx)
                dst[nidx] = state.rho.at(0, nidx) * state.u.at(i, nidx) * state.u.at(j, nidx);
        }
    acc -= divergence_sym(dealias(momentum_flux));

    // + div S_delta
    acc -= elliptic::apply_operator(p, state.u);

    // - a grad rho^gamma
    const PeriodicField pres = dealias(diag::pressure_field(p, state.rho));
    for (int c = 0; c < d; ++c) {
        const PeriodicField dp = derivative(pres, c);
        double* oc = acc.component(c);
        for (std::int64_t i = 0; i < nn; ++i)
            oc[i] -= dp.at(0, i);
    }

    return space.project(acc);
}

double stable_dt(const FluidParams& p, const GalerkinSpace& space, const PeriodicField& rho,
                 const PeriodicField& u) {
    double rho_min = rho.values()[0];
    for (double v : rho.values())
        rho_min = std::min(rho_min, v);
    rho_min = std::max(rho_min, 1e-8);

    double mu_eff = p.mu;
    if (p.tau_star > 0.0) {
        const PeriodicField D = rate_of_strain_field(u);
        const auto mod = pointwise_modulus(D);
        double phi_max = 0.0;
        for (double m : mod) {
            const double B = m * m + p.delta * p.delta;
            if (B > 0.0)
                phi_max = std::max(phi_max, std::pow(B, 0.5 * (p.q - 2.0)));
        }
        mu_eff += p.tau_star * phi_max;
    }
    const double k_cut = 2.0 * 3.14159265358979323846 / space.grid.length * space.m;
    const double dt_picard = rho_min / (mu_eff * k_cut * k_cut);
    const double umax = max_abs(u);
    const double dt_cfl =
        (umax > 0.0) ? 0.5 * space.grid.h() / umax : std::numeric_limits<double>::infinity();
    return std::min(dt_picard, dt_cfl);
}

State step(const FluidParams& p, const GalerkinSpace& space, const State& state,
           const std::function<PeriodicField(double)>& f_ext, double dt,
           const StepOptions& opts, StepInfo* info) {
    if (!(dt > 0.0))
        throw Error("step requires dt > 0");
    const PeriodicField b0 = mass_apply(space, state.rho, state.u);
    PeriodicField u_prev = state.u;
    PeriodicField rho_k = state.rho;
    double clipped = 0.0;
    bool floored = false;
    double best_delta = std::numeric_limits<double>::infinity();

    for (int k = 1; k <= opts.fp_max; ++k) {
        rho_k = transport::advance_density(state.rho, u_prev, dt);
        clipped = transport::clip_negative(rho_k);

        State mid;
        mid.rho = state.rho;
        mid.rho += rho_k;
        mid.rho *= 0.5;
        mid.u = state.u;
        mid.u += u_prev;
        mid.u *= 0.5;
        mid.t = state.t + 0.5 * dt;

        PeriodicField b = b0;
        if (f_ext) {
            axpy(dt, momentum_rhs(p, space, mid, f_ext(mid.t)), b);
        } else {
            PeriodicField zero_f(state.u.grid(), Rank::vector);
            axpy(dt, momentum_rhs(p, space, mid, zero_f), b);
        }

        // vacuum floor under M[rho] only
        PeriodicField rho_eff = rho_k;
        double rho_min = rho_eff.values()[0];
        for (double v : rho_eff.values())
            rho_min = std::min(rho_min, v);
        if (rho_min < opts.rho_floor) {
            floored = true;
            for (double& v : rho_eff.values())
                v = std::max(v, opts.rho_floor);
        }
        const PeriodicField u_k =
            mass_solve(space, rho_eff, b, 0.01 * opts.fp_tol, 2000, 0.5 * opts.rho_floor);

        const PeriodicField diff = u_k - u_prev;
        const double delta = std::sqrt(inner(diff, diff));
        u_prev = u_k;
        if (!std::isfinite(delta) || delta > 1e8)
            throw FixedPointDiverged(k, delta);
        if (delta <= opts.fp_tol) {
            if (info) {
                info->fp_iters = k;
                info->fp_delta = delta;
                info->floored = floored;
                info->clipped_mass = clipped;
            }
            return State{rho_k, u_k, state.t + dt};
        }
        // the map is not contracting: bail out instead of burning the budget
        if (delta > 50.0 * best_delta)
            throw FixedPointDiverged(k, delta);
        best_delta = std::min(best_delta, delta);
    }
    throw FixedPointDiverged(opts.fp_max, best_delta);
}

RunResult run(const FluidParams& p, const GalerkinSpace& space, const PeriodicField& rho0,
              const PeriodicField& u0, const std::function<PeriodicField(double)>& f_ext,
              const RunOptions& opts, const PeriodicField* g) {
    RunResult result;
    if (!(opts.dt > 0.0) || !(opts.t_end > 0.0))
        throw ConfigError("time", "dt and t_end must be positive");

    State s{rho0, space.project(u0), 0.0};

    if (g) {
        const PeriodicField rhs = elliptic::compat_rhs(p, rho0, *g);
        const PeriodicField res = elliptic::apply_operator(p, s.u) - rhs;
        const double rnorm = std::sqrt(inner(res, res));
        if (rnorm > 1e-6 * std::max(1.0, std::sqrt(inner(rhs, rhs))))
            result.warnings.push_back("compatibility residual " + std::to_string(rnorm));
    } else {
        result.warnings.push_back(
            "initial velocity not produced by a compatibility solve; "
            "sqrt(rho) u_t may be unbounded at t = 0");
    }

    result.states.push_back(s);
    result.fp_iters.push_back(0);
    result.t_stop = 0.0;
    const double mass0 = integral(s.rho);

    const int n_steps = static_cast<int>(std::ceil(opts.t_end / opts.dt - 1e-12));
    try {
        for (int n = 0; n < n_steps; ++n) {
            const double dt = std::min(opts.dt, opts.t_end - s.t);
            if (dt <= 0.0)
                break;
            StepInfo info;
            State next = step(p, space, s, f_ext, dt, opts.step, &info);
            result.total_clipped_mass += info.clipped_mass;
            if (info.floored)
                ++result.floor_activations;

            // per-step blowup guard with one-sided u_t
            PeriodicField u_t = next.u - s.u;
            u_t *= 1.0 / dt;
            const double psi_now = diag::psi(p, next, u_t);
            result.psi_steps.push_back(psi_now);
            s = next;
            result.t_stop = s.t;
            if ((n + 1) % opts.output_every == 0 || s.t >= opts.t_end - 1e-12) {
                result.states.push_back(s);
                result.fp_iters.push_back(info.fp_iters);
            }
            if (psi_now > opts.psi_max)
                throw Blowup(s.t, psi_now);
            if (result.total_clipped_mass > 1e-8 * mass0)
                throw Error("clipped mass " + std::to_string(result.total_clipped_mass) +
                            " exceeds 1e-8 of the initial mass");
        }
        result.status = RunStatus::completed;
    } catch (const Blowup& b) {
        result.status = RunStatus::blowup;
        result.error = b.what();
        if (result.states.empty() || result.states.back().t < s.t) {
            result.states.push_back(s);
            result.fp_iters.push_back(0);
        }
    } catch (const Error& e) {
        result.status = RunStatus::diverged;
        result.error = e.what();
        if (result.states.empty() || result.states.back().t < s.t) {
            result.states.push_back(s);
            result.fp_iters.push_back(0);
        }
    }

    result.records = diag::records_from_trajectory(p, result.states, f_ext, result.fp_iters);
    return result;
}

} // namespace viscoplast::powerlaw
