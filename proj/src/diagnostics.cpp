#include "viscoplast/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "viscoplast/errors.hpp"

namespace viscoplast::diag {

namespace {

double grad_norm_sq(const PeriodicField& u) {
    double acc = 0.0;
    for (int a = 0; a < u.grid().dim; ++a) {
        const PeriodicField da = derivative(u, a);
        acc += inner(da, da);
    }
    return acc;
}

} // namespace

PeriodicField pressure_field(const FluidParams& p, const PeriodicField& rho) {
    PeriodicField out(rho.grid(), Rank::scalar);
    for (std::int64_t i = 0; i < rho.num_nodes(); ++i)
        out.at(0, i) = p.a * std::pow(std::max(0.0, rho.at(0, i)), p.gamma);
    return out;
}

double total_mass(const State& s) { return integral(s.rho); }

double total_energy(const FluidParams& p, const State& s) {
    const std::int64_t nn = s.rho.num_nodes();
    double kinetic = 0.0;
    for (std::int64_t i = 0; i < nn; ++i) {
        double usq = 0.0;
        for (int c = 0; c < s.u.components(); ++c)
            usq += s.u.at(c, i) * s.u.at(c, i);
        kinetic += s.rho.at(0, i) * usq;
    }
    double potential = 0.0;
    for (std::int64_t i = 0; i < nn; ++i)
        potential += std::pow(std::max(0.0, s.rho.at(0, i)), p.gamma);
    double cell = 1.0;
    for (int a = 0; a < s.rho.grid().dim; ++a)
        cell *= s.rho.grid().h();
    return 0.5 * kinetic * cell + p.a / (p.gamma - 1.0) * potential * cell;
}

double dissipation(const FluidParams& p, const PeriodicField& u) {
    const int d = u.grid().dim;
    double acc = p.mu * grad_norm_sq(u);
    if (d > 1) {
        const PeriodicField dv = divergence(u);
        acc += (p.lambda + p.mu) * inner(dv, dv);
    }
    if (p.tau_star > 0.0) {
        const PeriodicField D = rate_of_strain_field(u);
        const auto mod = pointwise_modulus(D);
        double t = 0.0;
        for (double m : mod) {
            const double B = m * m + p.delta * p.delta;
            if (B > 0.0)
                t += std::pow(B, 0.5 * (p.q - 2.0)) * m * m;
        }
        double cell = 1.0;
        for (int a = 0; a < d; ++a)
            cell *= u.grid().h();
        acc += p.tau_star * t * cell;
    }
    return acc;
}

double psi(const FluidParams& p, const State& s, const PeriodicField& u_t) {
    const std::int64_t nn = s.rho.num_nodes();
    double rho_ut_sq = 0.0;
    for (std::int64_t i = 0; i < nn; ++i) {
        double usq = 0.0;
        for (int c = 0; c < u_t.components(); ++c)
            usq += u_t.at(c, i) * u_t.at(c, i);
        rho_ut_sq += std::max(0.0, s.rho.at(0, i)) * usq;
    }
    double cell = 1.0;
    for (int a = 0; a < s.rho.grid().dim; ++a)
        cell *= s.rho.grid().h();
    rho_ut_sq *= cell;
    return 1.0 + grad_norm_sq(s.u) + rho_ut_sq +
           sobolev_norm(pressure_field(p, s.rho), 1, 6.0);
}

double j_integrand_min(const FluidParams& p, const State& s, const PeriodicField& u_t) {
    const PeriodicField D = rate_of_strain_field(s.u);
    const PeriodicField Dt = rate_of_strain_field(u_t);
    const auto dm = pointwise_modulus(D);
    const auto tm = pointwise_modulus(Dt);
    double mn = 0.0;
    bool first = true;
    for (size_t i = 0; i < dm.size(); ++i) {
        const double d_sq = dm[i] * dm[i];
        const double B = d_sq + p.delta * p.delta;
        double v;
        if (B <= 0.0) {
            if (p.q < 4.0)
                throw SingularEvaluation("J integrand undefined: B = 0 and q < 4");
            v = 0.0;
        } else {
            v = std::pow(B, 0.5 * (p.q - 4.0)) * ((p.q - 1.0) * d_sq + p.delta * p.delta) *
                tm[i] * tm[i];
        }
        if (first || v < mn) {
            mn = v;
            first = false;
        }
    }
    return mn;
}

std::vector<double> energy_ledger(const FluidParams& p, const std::vector<State>& states,
                                  const std::function<PeriodicField(double)>& f_ext) {
    std::vector<double> res;
    if (states.size() < 2)
        return res;
    res.reserve(states.size() - 1);
    for (size_t k = 0; k + 1 < states.size(); ++k) {
        const State& s0 = states[k];
        const State& s1 = states[k + 1];
        const double dt = s1.t - s0.t;
        State mid{s0.rho, s0.u, 0.5 * (s0.t + s1.t)};
        mid.rho += s1.rho;
        mid.rho *= 0.5;
        mid.u += s1.u;
        mid.u *= 0.5;

        double work = 0.0;
        if (f_ext) {
            const PeriodicField f = f_ext(mid.t);
            const std::int64_t nn = mid.rho.num_nodes();
            for (std::int64_t i = 0; i < nn; ++i) {
                double fu = 0.0;
                for (int c = 0; c < mid.u.components(); ++c)
                    fu += f.at(c, i) * mid.u.at(c, i);
                work += mid.rho.at(0, i) * fu;
            }
            double cell = 1.0;
            for (int a = 0; a < mid.rho.grid().dim; ++a)
                cell *= mid.rho.grid().h();
            work *= cell;
        }
        res.push_back(total_energy(p, s1) - total_energy(p, s0) +
                      dt * dissipation(p, mid.u) - dt * work);
    }
    return res;
}

double uniqueness_distance(const FluidParams& p, const State& s1, const State& s2) {
    if (!(s1.rho.grid() == s2.rho.grid()))
        throw GridMismatch("uniqueness_distance requires a common grid");
    const std::int64_t nn = s1.rho.num_nodes();
    double z_term = 0.0;
    for (std::int64_t i = 0; i < nn; ++i) {
        double zsq = 0.0;
        for (int c = 0; c < s1.u.components(); ++c) {
            const double z = s1.u.at(c, i) - s2.u.at(c, i);
            zsq += z * z;
        }
        z_term += std::max(0.0, s1.rho.at(0, i)) * zsq;
    }
    double cell = 1.0;
    for (int a = 0; a < s1.rho.grid().dim; ++a)
        cell *= s1.rho.grid().h();
    z_term *= cell;

    const PeriodicField theta = s1.rho - s2.rho;
    const double theta_norm = lp_norm(theta, 1.5);
    const PeriodicField pi = pressure_field(p, s1.rho) - pressure_field(p, s2.rho);
    const double pi_norm = lp_norm(pi, 2.0);
    return z_term + theta_norm * theta_norm + pi_norm * pi_norm;
}

std::vector<DiagnosticsRecord> records_from_trajectory(
    const FluidParams& p, const std::vector<State>& states,
    const std::function<PeriodicField(double)>& f_ext, const std::vector<int>& fp_iters) {
    std::vector<DiagnosticsRecord> out;
    const size_t m = states.size();
    if (m == 0)
        return out;
    const auto ledger = energy_ledger(p, states, f_ext);
    out.reserve(m);
    for (size_t k = 0; k < m; ++k) {
        PeriodicField u_t(states[k].u.grid(), Rank::vector);
        if (m > 1) {
            const size_t lo = (k == 0) ? 0 : k - 1;
            const size_t hi = (k + 1 == m) ? k : k + 1;
            u_t = states[hi].u - states[lo].u;
            u_t *= 1.0 / (states[hi].t - states[lo].t);
        }
        DiagnosticsRecord rec;
        rec.t = states[k].t;
        rec.mass = total_mass(states[k]);
        rec.energy = total_energy(p, states[k]);
        rec.dissipation = dissipation(p, states[k].u);
        rec.psi = psi(p, states[k], u_t);
        rec.j_min = j_integrand_min(p, states[k], u_t);
        rec.fp_iters = (k < fp_iters.size()) ? fp_iters[k] : 0;
        rec.energy_residual = (k == 0) ? 0.0 : ledger[k - 1];
        out.push_back(rec);
    }
    return out;
}

} // namespace viscoplast::diag
