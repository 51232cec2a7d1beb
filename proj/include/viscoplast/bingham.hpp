#pragma once

#include <string>
#include <functional>
#include <utility>
#include <vector>

#include "viscoplast/powerlaw.hpp"

namespace viscoplast::bingham {

/// Grid-aligned intervals where |u_x| < threshold (the discrete stand-in for
/// the rigid set {u_x = 0}). Intervals are disjoint, sorted, and inside
/// [0, length]; a region wrapping the periodic seam is split at x = 0.
struct PlugRegion {
    std::vector<std::pair<double, double>> intervals;
    double threshold = 0.0;

    bool contains(double x) const {
        for (const auto& [lo, hi] : intervals)
            if (x >= lo - 1e-14 && x <= hi + 1e-14)
                return true;
        return false;
    }
    bool empty() const { return intervals.empty(); }
};

/// Default strain-rate cutoff: below O(delta) the regularized law cannot
/// distinguish plug from creep.
double default_plug_threshold(double delta_final, double max_strain);

PlugRegion detect_plugs(const PeriodicField& u, double threshold);

struct YieldReport {
    double max_plug_stress_excess = 0.0; // max(|S^delta| - tau_star, 0) inside plugs
    double max_flow_law_residual = 0.0;  // |S^delta - (mu u_x + tau* sign(u_x))| outside
    double min_flow_strain = 0.0;        // min |u_x| outside plugs
    bool has_plug = false;
    bool has_flow = false;
};

/// Checks the limit constitutive law on a regularized solution:
/// S^delta = mu u_x + tau_star u_x / sqrt(u_x^2 + delta^2).
YieldReport verify_yield(const FluidParams& p, const PeriodicField& u, double delta_final,
                         const PlugRegion& plugs);

struct LegResult {
    double delta = 0.0;
    bool failed = false;
    std::string error;
    powerlaw::RunResult run;
    PlugRegion plugs;  // on the final state
    YieldReport yield; // ditto
};

struct ContinuationResult {
    std::vector<double> deltas;
    std::vector<LegResult> legs;
    /// ||u_{delta_k} - u_{delta_{k+1}}||_L2 between consecutive successful
    /// final states.
    std::vector<double> cauchy_gaps;
};

struct ContinuationConfig {
    powerlaw::RunOptions run; // run.dt = 0 picks 0.5 * stable_dt per leg
    std::function<PeriodicField(double)> f_ext; // external body force, may be empty
    double newton_tol = 1e-10;
    int newton_max_iter = 80;
    bool warm_start = true;      // previous leg's u0 seeds the compat solve
    double plug_threshold = 0.0; // 0 -> default_plug_threshold per leg
    int galerkin_modes = 0;      // 0 -> n/3
};

/// Solves the regularized 1D system for a decreasing delta schedule (q = 1).
/// Each leg starts from its own compatibility solve; legs that blow up are
/// recorded as failed without aborting the continuation.
ContinuationResult continuation(const FluidParams& p_base, const PeriodicField& rho0,
                                const PeriodicField& g, const std::vector<double>& schedule,
                                const ContinuationConfig& cfg);

} // namespace viscoplast::bingham
