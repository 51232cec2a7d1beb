#include "viscoplast/profiles.hpp"

#include <cmath>
#include <set>

#include "viscoplast/errors.hpp"

namespace viscoplast::cli {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct RegistryEntry {
    std::set<std::string> required;
    std::map<std::string, double> defaults;
};

const std::map<std::string, RegistryEntry>& registry() {
    static const std::map<std::string, RegistryEntry> reg = {
        {"const", {{"value"}, {}}},
        {"sine", {{"amplitude"}, {{"mode", 1.0}, {"phase", 0.0}, {"offset", 0.0}}}},
        {"two_mode",
         {{"a1", "a2"},
          {{"k1", 1.0}, {"k2", 2.0}, {"phase1", 0.0}, {"phase2", 0.0}, {"offset", 0.0}}}},
        {"sine_bump",
         {{"amplitude"}, {{"center", 0.0}, {"sharpness", 4.0}, {"offset", 0.0}}}},
    };
    return reg;
}

} // namespace

ProfileSpec normalize_profile(const ProfileSpec& spec, const std::string& field_path) {
    auto it = registry().find(spec.type);
    if (it == registry().end())
        throw ConfigError(field_path + ".type", "unknown profile '" + spec.type + "'");
    const RegistryEntry& entry = it->second;
    ProfileSpec out = spec;
    for (const auto& name : entry.required)
        if (!out.params.count(name))
            throw ConfigError(field_path + "." + name,
                              "profile '" + spec.type + "' requires parameter '" + name + "'");
    for (const auto& [name, value] : entry.defaults)
        out.params.try_emplace(name, value);
    for (const auto& [name, value] : out.params) {
        (void)value;
        if (!entry.required.count(name) && !entry.defaults.count(name))
            throw ConfigError(field_path + "." + name,
                              "profile '" + spec.type + "' has no parameter '" + name + "'");
    }
    if (out.axis < 0 || out.axis > 2)
        throw ConfigError(field_path + ".axis", "axis must be 0, 1 or 2");
    return out;
}

double eval_profile(const ProfileSpec& spec, const PeriodicGrid& grid,
                    const std::array<double, 3>& x) {
    const double theta = kTwoPi / grid.length * x[static_cast<size_t>(spec.axis)];
    const auto get = [&](const char* name) { return spec.params.at(name); };
    if (spec.type == "const")
        return get("value");
    if (spec.type == "sine")
        return get("offset") + get("amplitude") * std::sin(get("mode") * theta + get("phase"));
    if (spec.type == "two_mode")
        return get("offset") + get("a1") * std::sin(get("k1") * theta + get("phase1")) +
               get("a2") * std::cos(get("k2") * theta + get("phase2"));
    if (spec.type == "sine_bump") {
        const double c = kTwoPi / grid.length * get("center");
        return get("offset") +
               get("amplitude") * std::exp(get("sharpness") * (std::cos(theta - c) - 1.0));
    }
    throw ConfigError("profile.type", "unknown profile '" + spec.type + "'");
}

PeriodicField make_scalar_profile(const PeriodicGrid& grid, const ProfileSpec& spec) {
    const ProfileSpec s = normalize_profile(spec, "profile");
    return make_scalar(grid, [&](const std::array<double, 3>& x) {
        return eval_profile(s, grid, x);
    });
}

PeriodicField make_vector_profile(const PeriodicGrid& grid,
                                  const std::vector<ProfileSpec>& specs) {
    if (static_cast<int>(specs.size()) != grid.dim)
        throw ConfigError("profile", "need one component profile per dimension");
    std::vector<ProfileSpec> normalized;
    normalized.reserve(specs.size());
    for (const auto& s : specs)
        normalized.push_back(normalize_profile(s, "profile"));
    PeriodicField out(grid, Rank::vector);
    for (std::int64_t node = 0; node < grid.num_nodes(); ++node) {
        const auto x = grid.coords(node);
        for (int c = 0; c < grid.dim; ++c)
            out.at(c, node) = eval_profile(normalized[static_cast<size_t>(c)], grid, x);
    }
    return out;
}

TimeFactorSpec normalize_time_factor(const TimeFactorSpec& spec,
                                     const std::string& field_path) {
    if (spec.type != "const" && spec.type != "cos" && spec.type != "ramp")
        throw ConfigError(field_path + ".type",
                          "unknown time factor '" + spec.type + "'");
    if (spec.type == "ramp" && !(spec.t0 > 0.0))
        throw ConfigError(field_path + ".t0", "ramp requires t0 > 0");
    return spec;
}

double eval_time_factor(const TimeFactorSpec& spec, double t) {
    if (spec.type == "cos")
        return std::cos(spec.omega * t);
    if (spec.type == "ramp")
        return std::min(t / spec.t0, 1.0);
    return 1.0;
}

} // namespace viscoplast::cli
