#include "viscoplast/dispatch.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>

#include <nlohmann/json.hpp>

#include "viscoplast/bingham.hpp"
#include "viscoplast/io.hpp"
#include "viscoplast/verify_suite.hpp"

namespace viscoplast::cli {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::function<PeriodicField(double)> make_forcing(const RunConfig& cfg,
                                                  const PeriodicGrid& grid) {
    if (!cfg.init.f_ext.present)
        return {};
    const PeriodicField base = make_vector_profile(grid, cfg.init.f_ext.profile);
    const TimeFactorSpec tf = cfg.init.f_ext.time_factor;
    return [base, tf](double t) {
        PeriodicField f = base;
        f *= eval_time_factor(tf, t);
        return f;
    };
}

void write_manifest(const RunConfig& cfg, const json& resolved, double seconds) {
    json manifest;
    manifest["config"] = serialize_config(cfg);
    manifest["resolved"] = resolved;
    manifest["numerics"] = {{"derivative", "spectral (trigonometric interpolant)"},
                            {"quadrature", "rectangle rule"},
                            {"dealiasing", "2/3 rule on pointwise nonlinear products"},
                            {"transport", "SSP two-stage, conservative flux form"},
                            {"momentum", "per-step fixed point, midpoint sampling"}};
    manifest["versions"] = {{"viscoplast", kVersion},
                            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) +
                                                  "." +
                                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR)}};
    manifest["timings"] = {{"wall_seconds", seconds}};
    io::write_text_file(cfg.out_dir + "/manifest.json", manifest.dump(2) + "\n");
}

json plug_intervals_json(const bingham::PlugRegion& region) {
    json arr = json::array();
    for (const auto& [lo, hi] : region.intervals)
        arr.push_back({lo, hi});
    return arr;
}

int run_elliptic(const RunConfig& cfg, json& resolved) {
    const PeriodicGrid grid(cfg.grid.dim, cfg.grid.n, cfg.grid.length);
    if (!cfg.init.f_ext.present)
        throw ConfigError("init.f_ext", "elliptic needs a right-hand side profile");
    const PeriodicField f = mean_zero_project(make_vector_profile(grid, cfg.init.f_ext.profile));
    elliptic::EllipticProblem prob{cfg.params, f};
    const auto sol =
        elliptic::solve(prob, cfg.solver.newton_tol, cfg.solver.newton_max_iter);

    json report;
    report["params"] = serialize_config(cfg)["params"];
    report["n"] = cfg.grid.n;
    report["dim"] = cfg.grid.dim;
    report["residual"] = sol.residual_norm;
    report["newton_iters"] = sol.newton_iters;
    if (grid.dim == 1) {
        json w2p = json::array();
        for (double pe : {2.0, 4.0, 6.0}) {
            const auto rep = elliptic::verify_w2p_1d(cfg.params, sol.u, f, pe);
            w2p.push_back({{"p", pe},
                           {"lhs", rep.lhs},
                           {"rhs", rep.rhs},
                           {"satisfied", rep.satisfied}});
        }
        report["w2p_check"] = w2p;
    } else {
        const auto rep = elliptic::verify_h2(cfg.params, sol.u, f);
        report["h2_check"] = {{"curl_term", rep.curl_term},
                              {"div_term", rep.div_term},
                              {"rhs_bound", rep.rhs_bound},
                              {"satisfied", rep.satisfied}};
    }
    io::write_text_file(cfg.out_dir + "/elliptic_report.json", report.dump(2) + "\n");
    io::write_field_binary(sol.u, cfg.out_dir + "/u.vpf");
    resolved["residual"] = sol.residual_norm;
    if (!cfg.quiet)
        std::cout << "elliptic: residual " << sol.residual_norm << " after "
                  << sol.newton_iters << " Newton iterations\n";
    return kExitOk;
}

int run_powerlaw(const RunConfig& cfg, json& resolved) {
    const PeriodicGrid grid(cfg.grid.dim, cfg.grid.n, cfg.grid.length);
    const PeriodicField rho0 = make_scalar_profile(grid, cfg.init.rho0);
    const powerlaw::GalerkinSpace space(grid, cfg.solver.m_modes);

    PeriodicField u0(grid, Rank::vector);
    PeriodicField g_field(grid, Rank::vector);
    bool has_g = false;
    if (cfg.init.g) {
        g_field = make_vector_profile(grid, *cfg.init.g);
        has_g = true;
        u0 = elliptic::compat_init(cfg.params, rho0, g_field, cfg.solver.newton_tol,
                                   cfg.solver.newton_max_iter);
    } else if (cfg.init.u0) {
        u0 = make_vector_profile(grid, *cfg.init.u0);
    }

    powerlaw::RunOptions opts;
    opts.dt = cfg.time.dt > 0.0 ? cfg.time.dt
                                : 0.5 * powerlaw::stable_dt(cfg.params, space, rho0, u0);
    opts.t_end = cfg.time.t_end;
    opts.output_every = cfg.time.output_every;
    opts.step.fp_tol = cfg.solver.fp_tol;
    opts.step.fp_max = cfg.solver.fp_max;
    opts.step.rho_floor = cfg.solver.rho_floor;
    opts.psi_max = cfg.solver.psi_max;
    resolved["dt"] = opts.dt;
    resolved["m_modes"] = space.m;
    resolved["rho_floor"] = opts.step.rho_floor;
    resolved["psi_max"] = opts.psi_max;

    const auto f_ext = make_forcing(cfg, grid);
    const auto result = powerlaw::run(cfg.params, space, rho0, u0, f_ext, opts,
                                      has_g ? &g_field : nullptr);

    io::write_trajectory_csv(result.states, cfg.out_dir + "/trajectory.csv");
    io::write_diagnostics_csv(result.records, cfg.out_dir + "/diagnostics.csv");
    io::write_field_binary(result.states.back().rho, cfg.out_dir + "/final_rho.vpf");
    io::write_field_binary(result.states.back().u, cfg.out_dir + "/final_u.vpf");

    json summary;
    summary["status"] = result.status == powerlaw::RunStatus::completed ? "completed"
                        : result.status == powerlaw::RunStatus::blowup ? "blowup"
                                                                       : "diverged";
    summary["t_stop"] = result.t_stop;
    summary["error"] = result.error;
    summary["warnings"] = result.warnings;
    summary["total_clipped_mass"] = result.total_clipped_mass;
    summary["floor_activations"] = result.floor_activations;
    if (!result.records.empty()) {
        const double m0 = result.records.front().mass;
        double drift = 0.0;
        for (const auto& r : result.records)
            drift = std::max(drift, std::abs(r.mass - m0) / std::max(std::abs(m0), 1e-30));
        summary["mass_drift"] = drift;
        summary["final_energy"] = result.records.back().energy;
        summary["final_psi"] = result.records.back().psi;
    }
    io::write_text_file(cfg.out_dir + "/summary.json", summary.dump(2) + "\n");
    if (!cfg.quiet)
        std::cout << "powerlaw: " << summary["status"].get<std::string>() << " at t="
                  << result.t_stop << " (" << result.states.size() << " snapshots)\n";
    return result.status == powerlaw::RunStatus::completed ? kExitOk : kExitNumerical;
}

int run_bingham(const RunConfig& cfg, json& resolved) {
    const PeriodicGrid grid(cfg.grid.dim, cfg.grid.n, cfg.grid.length);
    if (grid.dim != 1)
        throw ConfigError("grid.dim", "bingham continuation is one-dimensional");
    if (cfg.schedule.deltas.empty())
        throw ConfigError("schedule.deltas", "bingham needs a delta schedule");
    if (!cfg.init.g)
        throw ConfigError("init.g", "bingham needs compatibility data g");

    const PeriodicField rho0 = make_scalar_profile(grid, cfg.init.rho0);
    const PeriodicField g_field = make_vector_profile(grid, *cfg.init.g);

    bingham::ContinuationConfig bc;
    bc.run.dt = cfg.time.dt;
    bc.run.t_end = cfg.time.t_end;
    bc.run.output_every = cfg.time.output_every;
    bc.run.step.fp_tol = cfg.solver.fp_tol;
    bc.run.step.fp_max = cfg.solver.fp_max;
    bc.run.step.rho_floor = cfg.solver.rho_floor;
    bc.run.psi_max = cfg.solver.psi_max;
    bc.f_ext = make_forcing(cfg, grid);
    bc.newton_tol = cfg.solver.newton_tol;
    bc.newton_max_iter = cfg.solver.newton_max_iter;
    bc.warm_start = cfg.schedule.warm_start;
    bc.galerkin_modes = cfg.solver.m_modes;

    const auto result =
        bingham::continuation(cfg.params, rho0, g_field, cfg.schedule.deltas, bc);

    json legs = json::array();
    bool all_ok = true;
    size_t gap_idx = 0;
    for (size_t k = 0; k < result.legs.size(); ++k) {
        const auto& leg = result.legs[k];
        json jl;
        jl["delta"] = leg.delta;
        jl["failed"] = leg.failed;
        jl["error"] = leg.error;
        if (!leg.failed) {
            io::write_trajectory_csv(leg.run.states, cfg.out_dir + "/trajectory_delta" +
                                                         std::to_string(k) + ".csv");
            jl["plug_intervals"] = plug_intervals_json(leg.plugs);
            jl["plug_threshold"] = leg.plugs.threshold;
            jl["plug_stress_excess"] = leg.yield.max_plug_stress_excess;
            jl["flow_law_residual"] = leg.yield.max_flow_law_residual;
            jl["min_flow_strain"] = leg.yield.min_flow_strain;
            if (k + 1 < result.legs.size() && !result.legs[k + 1].failed &&
                gap_idx < result.cauchy_gaps.size())
                jl["cauchy_gap"] = result.cauchy_gaps[gap_idx++];
        } else {
            all_ok = false;
        }
        legs.push_back(jl);
    }
    json summary;
    summary["deltas"] = result.deltas;
    summary["legs"] = legs;
    summary["cauchy_gaps"] = result.cauchy_gaps;
    io::write_text_file(cfg.out_dir + "/summary.json", summary.dump(2) + "\n");
    resolved["legs"] = static_cast<int>(result.legs.size());
    if (!cfg.quiet)
        std::cout << "bingham: " << result.legs.size() << " legs, "
                  << result.cauchy_gaps.size() << " cauchy gaps\n";
    return all_ok ? kExitOk : kExitNumerical;
}

int run_verify(const RunConfig& cfg, json& resolved) {
    const auto results = run_verify_suite(cfg.seed);
    json checks = json::array();
    bool all_pass = true;
    size_t width = 0;
    for (const auto& r : results)
        width = std::max(width, r.name.size());
    for (const auto& r : results) {
        checks.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        all_pass = all_pass && r.pass;
        if (!cfg.quiet)
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
                      << std::string(width - r.name.size() + 2, ' ') << r.detail << "\n";
    }
    json report;
    report["seed"] = cfg.seed;
    report["checks"] = checks;
    report["all_pass"] = all_pass;
    io::write_text_file(cfg.out_dir + "/verify_report.json", report.dump(2) + "\n");
    resolved["all_pass"] = all_pass;
    return all_pass ? kExitOk : kExitNumerical;
}

} // namespace

int dispatch(const RunConfig& cfg) {
    Timer timer;
    std::filesystem::create_directories(cfg.out_dir);
    json resolved;
    resolved["seed"] = cfg.seed;
    int code = kExitOk;
    try {
        if (cfg.subcommand == "elliptic")
            code = run_elliptic(cfg, resolved);
        else if (cfg.subcommand == "powerlaw")
            code = run_powerlaw(cfg, resolved);
        else if (cfg.subcommand == "bingham")
            code = run_bingham(cfg, resolved);
        else if (cfg.subcommand == "verify")
            code = run_verify(cfg, resolved);
        else
            throw ConfigError("subcommand", "unknown subcommand '" + cfg.subcommand + "'");
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        write_manifest(cfg, resolved, timer.seconds());
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        resolved["error"] = e.what();
        write_manifest(cfg, resolved, timer.seconds());
        return kExitNumerical;
    }
    write_manifest(cfg, resolved, timer.seconds());
    return code;
}

} // namespace viscoplast::cli
