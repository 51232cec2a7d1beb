#pragma once

#include "viscoplast/field.hpp"

namespace viscoplast {

/// (rho, u) pair on a grid at one time instant; the pressure p = a rho^gamma
/// is derived, never evolved independently.
struct State {
    PeriodicField rho; // scalar, >= 0 after the clipping policy
    PeriodicField u;   // vector, supported in the retained Galerkin modes
    double t = 0.0;
};

} // namespace viscoplast
