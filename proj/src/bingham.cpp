#include "viscoplast/bingham.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "viscoplast/verify_suite.hpp"

namespace viscoplast::bingham {

double default_plug_threshold(double delta_final, double max_strain) {
    return std::max(10.0 * delta_final, 1e-4 * max_strain);
}

PlugRegion detect_plugs(const PeriodicField& u, double threshold) {
    if (u.grid().dim != 1)
        throw Error("detect_plugs requires a 1D field");
    if (!(threshold > 0.0))
        throw Error("detect_plugs requires threshold > 0");
    const PeriodicField s = derivative(u, 0);
    const int n = u.grid().n;
    const double h = u.grid().h();
    std::vector<bool> marked(static_cast<size_t>(n));
    bool all = true;
    for (int i = 0; i < n; ++i) {
        marked[static_cast<size_t>(i)] = std::abs(s.at(0, i)) < threshold;
        all = all && marked[static_cast<size_t>(i)];
    }

    PlugRegion region;
    region.threshold = threshold;
    if (all) {
        region.intervals.emplace_back(0.0, u.grid().length);
        return region;
    }

    // maximal runs of marked nodes, wrapping across the periodic seam
    std::vector<std::pair<int, int>> runs;
    int i = 0;
    while (i < n) {
        if (!marked[static_cast<size_t>(i)]) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && marked[static_cast<size_t>(j + 1)])
            ++j;
        runs.emplace_back(i, j);
        i = j + 1;
    }
    if (runs.size() >= 2 && runs.front().first == 0 && runs.back().second == n - 1) {
        // wrapped run: split representation stays sorted and disjoint
        // (already split: [0, j0] and [i_last, n-1])
    }
    for (const auto& [lo, hi] : runs)
        region.intervals.emplace_back(lo * h, hi * h);
    return region;
}

YieldReport verify_yield(const FluidParams& p, const PeriodicField& u, double delta_final,
                         const PlugRegion& plugs) {
    if (u.grid().dim != 1)
        throw Error("verify_yield requires a 1D field");
    const PeriodicField s = derivative(u, 0);
    const int n = u.grid().n;
    const double h = u.grid().h();

    YieldReport rep;
    bool first_flow = true;
    for (int i = 0; i < n; ++i) {
        const double si = s.at(0, i);
        const double stress =
            p.mu * si + p.tau_star * si / std::sqrt(si * si + delta_final * delta_final);
        const double x = i * h;
        if (plugs.contains(x)) {
            rep.has_plug = true;
            rep.max_plug_stress_excess =
                std::max(rep.max_plug_stress_excess, std::abs(stress) - p.tau_star);
        } else {
            rep.has_flow = true;
            const double limit_stress = p.mu * si + p.tau_star * (si > 0.0 ? 1.0 : -1.0);
            rep.max_flow_law_residual =
                std::max(rep.max_flow_law_residual, std::abs(stress - limit_stress));
            if (first_flow || std::abs(si) < rep.min_flow_strain) {
                rep.min_flow_strain = std::abs(si);
                first_flow = false;
            }
        }
    }
    rep.max_plug_stress_excess = std::max(rep.max_plug_stress_excess, 0.0);
    return rep;
}

ContinuationResult continuation(const FluidParams& p_base, const PeriodicField& rho0,
                                const PeriodicField& g, const std::vector<double>& schedule,
                                const ContinuationConfig& cfg) {
    if (rho0.grid().dim != 1)
        throw ConfigError("bingham", "continuation requires a 1D grid");
    if (schedule.empty())
        throw ConfigError("schedule.deltas", "schedule must be nonempty");
    for (size_t k = 0; k < schedule.size(); ++k) {
        if (!(schedule[k] > 0.0))
            throw ConfigError("schedule.deltas", "deltas must be > 0");
        if (k > 0 && !(schedule[k] < schedule[k - 1]))
            throw ConfigError("schedule.deltas", "schedule must be strictly decreasing");
    }

    const powerlaw::GalerkinSpace space(rho0.grid(), cfg.galerkin_modes);

    ContinuationResult result;
    result.deltas = schedule;

    auto run_leg = [&](double delta, const PeriodicField* warm) {
        FluidParams p = p_base;
        p.q = 1.0; // the regularized Bingham stress is the q = 1 law
        p.delta = delta;

        LegResult leg;
        leg.delta = delta;
        try {
            const PeriodicField u0 = elliptic::compat_init(p, rho0, g, cfg.newton_tol,
                                                           cfg.newton_max_iter, warm);
            powerlaw::RunOptions opts = cfg.run;
            if (!(opts.dt > 0.0))
                opts.dt = 0.5 * powerlaw::stable_dt(p, space, rho0, u0);
            leg.run = powerlaw::run(p, space, rho0, u0, cfg.f_ext, opts, &g);
            if (leg.run.status != powerlaw::RunStatus::completed) {
                leg.failed = true;
                leg.error = leg.run.error;
            } else {
                const State& fin = leg.run.states.back();
                const double max_strain = max_abs(derivative(fin.u, 0));
                const double thr = (cfg.plug_threshold > 0.0)
                                       ? cfg.plug_threshold
                                       : default_plug_threshold(delta, max_strain);
                leg.plugs = detect_plugs(fin.u, thr);
                leg.yield = verify_yield(p, fin.u, delta, leg.plugs);
            }
        } catch (const Error& e) {
            leg.failed = true;
            leg.error = e.what();
        }
        return leg;
    };

    if (cfg.warm_start) {
        // data dependency across legs: sequential
        PeriodicField warm(rho0.grid(), Rank::vector);
        bool have_warm = false;
        for (double delta : schedule) {
            LegResult leg = run_leg(delta, have_warm ? &warm : nullptr);
            if (!leg.failed) {
                warm = leg.run.states.front().u;
                have_warm = true;
            }
            result.legs.push_back(std::move(leg));
        }
    } else {
        // cold start: legs are independent and run concurrently
        const int workers = std::max(1, std::min<int>(cli::max_workers(),
                                                      static_cast<int>(schedule.size())));
        result.legs.resize(schedule.size());
        if (workers == 1) {
            for (size_t k = 0; k < schedule.size(); ++k)
                result.legs[k] = run_leg(schedule[k], nullptr);
        } else {
            std::vector<std::future<LegResult>> futures;
            futures.reserve(schedule.size());
            for (size_t k = 0; k < schedule.size(); ++k)
                futures.push_back(std::async(std::launch::async, run_leg, schedule[k],
                                             nullptr));
            for (size_t k = 0; k < schedule.size(); ++k)
                result.legs[k] = futures[k].get();
        }
    }

    for (size_t k = 0; k + 1 < result.legs.size(); ++k) {
        const LegResult& a = result.legs[k];
        const LegResult& b = result.legs[k + 1];
        if (a.failed || b.failed)
            continue;
        const PeriodicField diff = a.run.states.back().u - b.run.states.back().u;
        result.cauchy_gaps.push_back(std::sqrt(inner(diff, diff)));
    }
    return result;
}

} // namespace viscoplast::bingham
