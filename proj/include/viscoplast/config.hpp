#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "viscoplast/params.hpp"
#include "viscoplast/profiles.hpp"

namespace viscoplast::cli {

struct GridConfig {
    int dim = 1;
    int n = 64;
    double length = 6.283185307179586476925286766559;
    bool operator==(const GridConfig&) const = default;
};

struct TimeConfig {
    double dt = 0.0; // 0 -> resolved at run time from the stability heuristic
    double t_end = 0.2;
    int output_every = 1;
    bool operator==(const TimeConfig&) const = default;
};

struct ForcingConfig {
    bool present = false;
    std::vector<ProfileSpec> profile; // one per component
    TimeFactorSpec time_factor;
    bool operator==(const ForcingConfig&) const = default;
};

struct InitConfig {
    ProfileSpec rho0;
    std::optional<std::vector<ProfileSpec>> g;  // compatibility data
    std::optional<std::vector<ProfileSpec>> u0; // direct initial velocity
    ForcingConfig f_ext;
    bool operator==(const InitConfig&) const = default;
};

struct SolverConfig {
    double newton_tol = 1e-10;
    int newton_max_iter = 80;
    double fp_tol = 1e-10;
    int fp_max = 60;
    double rho_floor = 1e-8;
    double psi_max = 1e6;
    int m_modes = 0; // 0 -> n/3
    bool operator==(const SolverConfig&) const = default;
};

struct ScheduleConfig {
    std::vector<double> deltas;
    bool warm_start = true;
    bool operator==(const ScheduleConfig&) const = default;
};

struct RunConfig {
    std::string subcommand;
    FluidParams params;
    GridConfig grid;
    TimeConfig time;
    InitConfig init;
    SolverConfig solver;
    ScheduleConfig schedule;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool quiet = false;
    bool operator==(const RunConfig&) const = default;
};

/// Parse and validate a config file; defaults are filled so that
/// serialize_config echoes the complete effective configuration.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_json(const nlohmann::json& j);

nlohmann::json serialize_config(const RunConfig& cfg);

} // namespace viscoplast::cli
