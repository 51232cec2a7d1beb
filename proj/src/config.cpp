#include "viscoplast/config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "viscoplast/errors.hpp"

namespace viscoplast::cli {

using nlohmann::json;

namespace {

void require_keys(const json& j, const std::string& path,
                  const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key))
            throw ConfigError(path + "." + key, "unknown field");
    }
}

double get_number(const json& j, const std::string& path, const std::string& key,
                  std::optional<double> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback)
            return *fallback;
        throw ConfigError(path + "." + key, "missing required number");
    }
    if (!j.at(key).is_number())
        throw ConfigError(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& path, const std::string& key, int fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number_integer())
        throw ConfigError(path + "." + key, "expected an integer");
    return j.at(key).get<int>();
}

ProfileSpec parse_profile(const json& j, const std::string& path) {
    if (!j.is_object())
        throw ConfigError(path, "expected a profile object");
    ProfileSpec spec;
    for (const auto& [key, value] : j.items()) {
        if (key == "type") {
            if (!value.is_string())
                throw ConfigError(path + ".type", "expected a string");
            spec.type = value.get<std::string>();
        } else if (key == "axis") {
            if (!value.is_number_integer())
                throw ConfigError(path + ".axis", "expected an integer");
            spec.axis = value.get<int>();
        } else {
            if (!value.is_number())
                throw ConfigError(path + "." + key, "expected a number");
            spec.params[key] = value.get<double>();
        }
    }
    return normalize_profile(spec, path);
}

std::vector<ProfileSpec> parse_profile_vector(const json& j, const std::string& path,
                                              int dim) {
    std::vector<ProfileSpec> specs;
    if (j.is_object()) {
        specs.push_back(parse_profile(j, path));
    } else if (j.is_array()) {
        int c = 0;
        for (const auto& item : j)
            specs.push_back(parse_profile(item, path + "[" + std::to_string(c++) + "]"));
    } else {
        throw ConfigError(path, "expected a profile object or array");
    }
    if (static_cast<int>(specs.size()) == 1 && dim > 1) {
        // single profile drives the first component; others rest
        while (static_cast<int>(specs.size()) < dim) {
            ProfileSpec zero;
            zero.type = "const";
            zero.params["value"] = 0.0;
            specs.push_back(zero);
        }
    }
    if (static_cast<int>(specs.size()) != dim)
        throw ConfigError(path, "need one component profile per dimension");
    return specs;
}

json profile_to_json(const ProfileSpec& spec) {
    json j;
    j["type"] = spec.type;
    j["axis"] = spec.axis;
    for (const auto& [name, value] : spec.params)
        j[name] = value;
    return j;
}

json profiles_to_json(const std::vector<ProfileSpec>& specs) {
    json arr = json::array();
    for (const auto& s : specs)
        arr.push_back(profile_to_json(s));
    return arr;
}

} // namespace

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("JSON parse failure: ") + e.what());
    }
    return parse_config_json(j);
}

RunConfig parse_config_json(const json& j) {
    if (!j.is_object())
        throw ConfigError("config", "top level must be a JSON object");
    require_keys(j, "config",
                 {"subcommand", "params", "grid", "time", "init", "solver", "schedule",
                  "output", "seed", "quiet"});

    RunConfig cfg;
    if (j.contains("subcommand")) {
        if (!j.at("subcommand").is_string())
            throw ConfigError("config.subcommand", "expected a string");
        cfg.subcommand = j.at("subcommand").get<std::string>();
    }

    if (j.contains("params")) {
        const json& p = j.at("params");
        require_keys(p, "params", {"mu", "lambda", "tau_star", "delta", "q", "a", "gamma"});
        cfg.params.mu = get_number(p, "params", "mu", cfg.params.mu);
        cfg.params.lambda = get_number(p, "params", "lambda", cfg.params.lambda);
        cfg.params.tau_star = get_number(p, "params", "tau_star", cfg.params.tau_star);
        cfg.params.delta = get_number(p, "params", "delta", cfg.params.delta);
        cfg.params.q = get_number(p, "params", "q", cfg.params.q);
        cfg.params.a = get_number(p, "params", "a", cfg.params.a);
        cfg.params.gamma = get_number(p, "params", "gamma", cfg.params.gamma);
    }
    cfg.params.validate();

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        require_keys(g, "grid", {"dim", "n", "length"});
        cfg.grid.dim = get_int(g, "grid", "dim", cfg.grid.dim);
        cfg.grid.n = get_int(g, "grid", "n", cfg.grid.n);
        cfg.grid.length = get_number(g, "grid", "length", cfg.grid.length);
    }
    PeriodicGrid grid_check(cfg.grid.dim, cfg.grid.n, cfg.grid.length);

    if (j.contains("time")) {
        const json& t = j.at("time");
        require_keys(t, "time", {"dt", "t_end", "output_every"});
        cfg.time.dt = get_number(t, "time", "dt", cfg.time.dt);
        cfg.time.t_end = get_number(t, "time", "t_end", cfg.time.t_end);
        cfg.time.output_every = get_int(t, "time", "output_every", cfg.time.output_every);
    }
    if (cfg.time.dt < 0.0)
        throw ConfigError("time.dt", "dt must be >= 0 (0 selects the stability heuristic)");
    if (!(cfg.time.t_end > 0.0))
        throw ConfigError("time.t_end", "t_end must be > 0");
    if (cfg.time.output_every < 1)
        throw ConfigError("time.output_every", "output_every must be >= 1");

    // default initial data: unit density at rest
    cfg.init.rho0.type = "const";
    cfg.init.rho0.params = {{"value", 1.0}};
    if (j.contains("init")) {
        const json& init = j.at("init");
        require_keys(init, "init", {"rho0", "g", "u0", "f_ext"});
        if (init.contains("rho0"))
            cfg.init.rho0 = parse_profile(init.at("rho0"), "init.rho0");
        if (init.contains("g"))
            cfg.init.g = parse_profile_vector(init.at("g"), "init.g", cfg.grid.dim);
        if (init.contains("u0"))
            cfg.init.u0 = parse_profile_vector(init.at("u0"), "init.u0", cfg.grid.dim);
        if (cfg.init.g && cfg.init.u0)
            throw ConfigError("init", "give either g (compatibility data) or u0, not both");
        if (init.contains("f_ext")) {
            const json& f = init.at("f_ext");
            require_keys(f, "init.f_ext", {"profile", "time_factor"});
            if (!f.contains("profile"))
                throw ConfigError("init.f_ext.profile", "missing forcing profile");
            cfg.init.f_ext.present = true;
            cfg.init.f_ext.profile =
                parse_profile_vector(f.at("profile"), "init.f_ext.profile", cfg.grid.dim);
            if (f.contains("time_factor")) {
                const json& tf = f.at("time_factor");
                require_keys(tf, "init.f_ext.time_factor", {"type", "omega", "t0"});
                TimeFactorSpec spec;
                if (tf.contains("type"))
                    spec.type = tf.at("type").get<std::string>();
                spec.omega = get_number(tf, "init.f_ext.time_factor", "omega", 0.0);
                spec.t0 = get_number(tf, "init.f_ext.time_factor", "t0", 1.0);
                cfg.init.f_ext.time_factor =
                    normalize_time_factor(spec, "init.f_ext.time_factor");
            }
        }
    } else {
        cfg.init.rho0 = normalize_profile(cfg.init.rho0, "init.rho0");
    }
    cfg.init.rho0 = normalize_profile(cfg.init.rho0, "init.rho0");

    if (j.contains("solver")) {
        const json& s = j.at("solver");
        require_keys(s, "solver",
                     {"newton_tol", "newton_max_iter", "fp_tol", "fp_max", "rho_floor",
                      "psi_max", "m_modes"});
        cfg.solver.newton_tol = get_number(s, "solver", "newton_tol", cfg.solver.newton_tol);
        cfg.solver.newton_max_iter =
            get_int(s, "solver", "newton_max_iter", cfg.solver.newton_max_iter);
        cfg.solver.fp_tol = get_number(s, "solver", "fp_tol", cfg.solver.fp_tol);
        cfg.solver.fp_max = get_int(s, "solver", "fp_max", cfg.solver.fp_max);
        cfg.solver.rho_floor = get_number(s, "solver", "rho_floor", cfg.solver.rho_floor);
        cfg.solver.psi_max = get_number(s, "solver", "psi_max", cfg.solver.psi_max);
        cfg.solver.m_modes = get_int(s, "solver", "m_modes", cfg.solver.m_modes);
    }
    if (!(cfg.solver.newton_tol > 0.0))
        throw ConfigError("solver.newton_tol", "must be > 0");
    if (!(cfg.solver.fp_tol > 0.0))
        throw ConfigError("solver.fp_tol", "must be > 0");
    if (!(cfg.solver.rho_floor > 0.0))
        throw ConfigError("solver.rho_floor", "must be > 0");
    if (cfg.solver.m_modes < 0 || cfg.solver.m_modes >= cfg.grid.n / 2)
        if (cfg.solver.m_modes != 0)
            throw ConfigError("solver.m_modes", "must stay below n/2 (0 selects n/3)");

    if (j.contains("schedule")) {
        const json& s = j.at("schedule");
        require_keys(s, "schedule", {"deltas", "warm_start"});
        if (s.contains("deltas")) {
            if (!s.at("deltas").is_array())
                throw ConfigError("schedule.deltas", "expected an array of numbers");
            for (const auto& d : s.at("deltas")) {
                if (!d.is_number())
                    throw ConfigError("schedule.deltas", "expected numbers");
                cfg.schedule.deltas.push_back(d.get<double>());
            }
        }
        if (s.contains("warm_start"))
            cfg.schedule.warm_start = s.at("warm_start").get<bool>();
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        require_keys(o, "output", {"dir"});
        if (o.contains("dir"))
            cfg.out_dir = o.at("dir").get<std::string>();
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned())
            throw ConfigError("config.seed", "expected an unsigned integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("quiet"))
        cfg.quiet = j.at("quiet").get<bool>();

    return cfg;
}

json serialize_config(const RunConfig& cfg) {
    json j;
    j["subcommand"] = cfg.subcommand;
    j["params"] = {{"mu", cfg.params.mu},          {"lambda", cfg.params.lambda},
                   {"tau_star", cfg.params.tau_star}, {"delta", cfg.params.delta},
                   {"q", cfg.params.q},            {"a", cfg.params.a},
                   {"gamma", cfg.params.gamma}};
    j["grid"] = {{"dim", cfg.grid.dim}, {"n", cfg.grid.n}, {"length", cfg.grid.length}};
    j["time"] = {{"dt", cfg.time.dt},
                 {"t_end", cfg.time.t_end},
                 {"output_every", cfg.time.output_every}};
    json init;
    init["rho0"] = profile_to_json(cfg.init.rho0);
    if (cfg.init.g)
        init["g"] = profiles_to_json(*cfg.init.g);
    if (cfg.init.u0)
        init["u0"] = profiles_to_json(*cfg.init.u0);
    if (cfg.init.f_ext.present) {
        init["f_ext"] = {{"profile", profiles_to_json(cfg.init.f_ext.profile)},
                         {"time_factor",
                          {{"type", cfg.init.f_ext.time_factor.type},
                           {"omega", cfg.init.f_ext.time_factor.omega},
                           {"t0", cfg.init.f_ext.time_factor.t0}}}};
    }
    j["init"] = init;
    j["solver"] = {{"newton_tol", cfg.solver.newton_tol},
                   {"newton_max_iter", cfg.solver.newton_max_iter},
                   {"fp_tol", cfg.solver.fp_tol},
                   {"fp_max", cfg.solver.fp_max},
                   {"rho_floor", cfg.solver.rho_floor},
                   {"psi_max", cfg.solver.psi_max},
                   {"m_modes", cfg.solver.m_modes}};
    j["schedule"] = {{"deltas", cfg.schedule.deltas},
                     {"warm_start", cfg.schedule.warm_start}};
    j["output"] = {{"dir", cfg.out_dir}};
    j["seed"] = cfg.seed;
    j["quiet"] = cfg.quiet;
    return j;
}

} // namespace viscoplast::cli
