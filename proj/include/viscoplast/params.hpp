#pragma once

#include "viscoplast/errors.hpp"

namespace viscoplast {

/// Physical and regularization constants of the stress law
///   S_delta = 2 mu D + lambda tr(D) I + tau_star (|D|^2 + delta^2)^{(q-2)/2} D,
/// together with the barotropic pressure p = a rho^gamma.
///
/// Admissibility: mu > 0, 2 mu + lambda > 0, tau_star >= 0, delta >= 0,
/// q >= 1, a > 0, gamma > 1.
struct FluidParams {
    double mu = 1.0;       // shear viscosity
    double lambda = 0.0;   // second (Lame) viscosity
    double tau_star = 0.0; // yield stress
    double delta = 0.0;    // regularization parameter
    double q = 2.0;        // power-law index
    double a = 1.0;        // pressure coefficient
    double gamma = 1.4;    // adiabatic exponent

    void validate() const {
        if (!(mu > 0.0))
            throw ConfigError("params.mu", "mu must be > 0");
        if (!(2.0 * mu + lambda > 0.0))
            throw ConfigError("params.lambda",
                              "2*mu + lambda must be > 0 (strong ellipticity)");
        if (!(tau_star >= 0.0))
            throw ConfigError("params.tau_star", "tau_star must be >= 0");
        if (!(delta >= 0.0))
            throw ConfigError("params.delta", "delta must be >= 0");
        if (!(q >= 1.0))
            throw ConfigError("params.q", "q must be >= 1");
        if (!(a > 0.0))
            throw ConfigError("params.a", "a must be > 0");
        if (!(gamma > 1.0))
            throw ConfigError("params.gamma", "gamma must be > 1");
    }

    bool operator==(const FluidParams&) const = default;
};

} // namespace viscoplast
