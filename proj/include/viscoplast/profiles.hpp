#pragma once

#include <map>
#include <string>
#include <vector>

#include "viscoplast/field.hpp"

namespace viscoplast::cli {

/// One entry of the analytic profile registry. Registered types:
///   const     : value
///   sine      : offset + amplitude * sin(mode * 2 pi / L * x_axis + phase)
///   two_mode  : offset + a1 * sin(k1 t + phase1) + a2 * cos(k2 t + phase2),
///               t = 2 pi / L * x_axis
///   sine_bump : offset + amplitude * exp(sharpness * (cos(2 pi / L * (x_axis - center)) - 1))
/// Unknown types or parameters are configuration errors.
struct ProfileSpec {
    std::string type = "const";
    std::map<std::string, double> params; // numeric parameters, defaults filled
    int axis = 0;

    bool operator==(const ProfileSpec&) const = default;
};

/// Validates a profile against the registry and fills defaults.
ProfileSpec normalize_profile(const ProfileSpec& spec, const std::string& field_path);

double eval_profile(const ProfileSpec& spec, const PeriodicGrid& grid,
                    const std::array<double, 3>& x);

PeriodicField make_scalar_profile(const PeriodicGrid& grid, const ProfileSpec& spec);

/// One profile per component.
PeriodicField make_vector_profile(const PeriodicGrid& grid,
                                  const std::vector<ProfileSpec>& specs);

/// Separable time modulation for forcing: factor(t) in {const: 1, cos:
/// cos(omega t), ramp: min(t / t0, 1)}.
struct TimeFactorSpec {
    std::string type = "const";
    double omega = 0.0;
    double t0 = 1.0;

    bool operator==(const TimeFactorSpec&) const = default;
};

TimeFactorSpec normalize_time_factor(const TimeFactorSpec& spec, const std::string& field_path);

double eval_time_factor(const TimeFactorSpec& spec, double t);

} // namespace viscoplast::cli
