#include "viscoplast/transport.hpp"

#include <algorithm>
#include <cmath>

namespace viscoplast::transport {

namespace {

// -div(rho u), dealiased product
PeriodicField continuity_rhs(const PeriodicField& rho, const PeriodicField& u) {
    const PeriodicGrid& g = rho.grid();
    const std::int64_t nn = g.num_nodes();
    PeriodicField flux(g, Rank::vector);
    for (int c = 0; c < g.dim; ++c) {
        double* fc = flux.component(c);
        const double* uc = u.component(c);
        const double* r = rho.component(0);
        for (std::int64_t i = 0; i < nn; ++i)
            fc[i] = r[i] * uc[i];
    }
    PeriodicField out = divergence(dealias(flux));
    out *= -1.0;
    return out;
}

} // namespace

PeriodicField advance_density(const PeriodicField& rho, const PeriodicField& u, double dt) {
    if (rho.rank() != Rank::scalar || u.rank() != Rank::vector)
        throw Error("advance_density expects scalar rho and vector u");
    if (!(dt > 0.0))
        throw Error("advance_density requires dt > 0");
    const double umax = max_abs(u);
    if (umax > 0.0) {
        const double dt_max = 0.5 * rho.grid().h() / umax;
        if (dt > dt_max)
            throw CFLViolation(dt, dt_max);
    }
    const PeriodicField k1 = continuity_rhs(rho, u);
    PeriodicField rho1 = rho;
    axpy(dt, k1, rho1);
    const PeriodicField k2 = continuity_rhs(rho1, u);
    PeriodicField out = rho;
    axpy(0.5 * dt, k1, out);
    axpy(0.5 * dt, k2, out);
    return out;
}

double clip_negative(PeriodicField& rho) {
    double clipped = 0.0;
    for (double& v : rho.values())
        if (v < 0.0) {
            clipped -= v;
            v = 0.0;
        }
    double cell = 1.0;
    for (int a = 0; a < rho.grid().dim; ++a)
        cell *= rho.grid().h();
    return clipped * cell;
}

BoundsReport density_bounds_check(const DensityPath& path,
                                  const std::vector<PeriodicField>& u_path,
                                  const PeriodicField& rho0) {
    if (path.snapshots.size() != u_path.size() || path.snapshots.size() != path.times.size())
        throw Error("density_bounds_check: mismatched path lengths");
    const size_t m = path.snapshots.size();
    double rho_min = rho0.values()[0];
    double rho_max = rho0.values()[0];
    for (double v : rho0.values()) {
        rho_min = std::min(rho_min, v);
        rho_max = std::max(rho_max, v);
    }

    BoundsReport rep;
    rep.lower.resize(m);
    rep.upper.resize(m);
    double integral_div = 0.0;
    double prev_div_inf = 0.0;
    for (size_t k = 0; k < m; ++k) {
        const double div_inf = lp_norm(divergence(u_path[k]), kInfNorm);
        if (k > 0)
            integral_div += 0.5 * (path.times[k] - path.times[k - 1]) * (prev_div_inf + div_inf);
        prev_div_inf = div_inf;
        rep.lower[k] = rho_min * std::exp(-integral_div);
        rep.upper[k] = rho_max * std::exp(integral_div);

        double lo = path.snapshots[k].values()[0];
        double hi = lo;
        for (double v : path.snapshots[k].values()) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        rep.max_violation = std::max(rep.max_violation, rep.lower[k] - lo);
        rep.max_violation = std::max(rep.max_violation, hi - rep.upper[k]);
    }
    rep.max_violation = std::max(rep.max_violation, 0.0);
    return rep;
}

std::vector<double> pressure_residual(const DensityPath& rho_path,
                                      const std::vector<PeriodicField>& u_path,
                                      const FluidParams& params) {
    const size_t m = rho_path.snapshots.size();
    if (m < 3)
        return {};
    auto pressure = [&](const PeriodicField& rho) {
        PeriodicField p(rho.grid(), Rank::scalar);
        for (std::int64_t i = 0; i < rho.num_nodes(); ++i)
            p.at(0, i) = params.a * std::pow(std::max(0.0, rho.at(0, i)), params.gamma);
        return p;
    };
    std::vector<double> res;
    res.reserve(m - 2);
    for (size_t k = 1; k + 1 < m; ++k) {
        const PeriodicGrid& g = rho_path.snapshots[k].grid();
        const std::int64_t nn = g.num_nodes();
        const PeriodicField p_prev = pressure(rho_path.snapshots[k - 1]);
        const PeriodicField p_next = pressure(rho_path.snapshots[k + 1]);
        const PeriodicField p_k = pressure(rho_path.snapshots[k]);
        const double two_dt = rho_path.times[k + 1] - rho_path.times[k - 1];

        PeriodicField flux(g, Rank::vector);
        for (int c = 0; c < g.dim; ++c)
            for (std::int64_t i = 0; i < nn; ++i)
                flux.at(c, i) = p_k.at(0, i) * u_path[k].at(c, i);
        const PeriodicField div_pu = divergence(dealias(flux));
        const PeriodicField div_u = divergence(u_path[k]);

        PeriodicField r(g, Rank::scalar);
        for (std::int64_t i = 0; i < nn; ++i)
            r.at(0, i) = (p_next.at(0, i) - p_prev.at(0, i)) / two_dt + div_pu.at(0, i) +
                         (params.gamma - 1.0) * p_k.at(0, i) * div_u.at(0, i);
        res.push_back(lp_norm(r, 2.0));
    }
    return res;
}

} // namespace viscoplast::transport
