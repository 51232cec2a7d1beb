#pragma once

#include <stdexcept>
#include <string>

namespace viscoplast {

/// Base class for all viscoplast errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation of (|D|^2 + delta^2)^{(q-2)/2} (or a derived power) at an
/// undefined point: q below the critical exponent with B = 0.
class SingularEvaluation : public Error {
  public:
    explicit SingularEvaluation(const std::string& what) : Error(what) {}
};

/// Iterative solver exceeded its iteration budget.
class NonConvergence : public Error {
  public:
    NonConvergence(const std::string& what, int iters, double residual)
        : Error(what + " (iters=" + std::to_string(iters) +
                ", residual=" + std::to_string(residual) + ")"),
          iters(iters), residual(residual) {}
    int iters;
    double residual;
};

/// Advective CFL bound dt <= 0.5 h / max|u| violated.
class CFLViolation : public Error {
  public:
    CFLViolation(double dt, double dt_max)
        : Error("CFL violation: dt=" + std::to_string(dt) +
                " exceeds bound " + std::to_string(dt_max)),
          dt(dt), dt_max(dt_max) {}
    double dt;
    double dt_max;
};

/// Density handed to the mass operator fell below the configured floor.
class VacuumFloor : public Error {
  public:
    VacuumFloor(double rho_min, double floor)
        : Error("density minimum " + std::to_string(rho_min) +
                " below floor " + std::to_string(floor)),
          rho_min(rho_min), floor(floor) {}
    double rho_min;
    double floor;
};

/// Per-step Picard iteration failed to contract; the step size must shrink.
class FixedPointDiverged : public Error {
  public:
    FixedPointDiverged(int iter, double delta)
        : Error("fixed-point iteration diverged (iter=" + std::to_string(iter) +
                ", delta=" + std::to_string(delta) + ")"),
          iter(iter), delta(delta) {}
    int iter;
    double delta;
};

/// Blowup guard tripped: psi(t) exceeded psi_max.
class Blowup : public Error {
  public:
    Blowup(double t, double psi)
        : Error("blowup guard: psi=" + std::to_string(psi) +
                " at t=" + std::to_string(t)),
          t(t), psi(psi) {}
    double t;
    double psi;
};

/// Two fields on different grids were combined.
class GridMismatch : public Error {
  public:
    explicit GridMismatch(const std::string& what) : Error(what) {}
};

/// Invalid or inconsistent run configuration; carries the offending field path.
class ConfigError : public Error {
  public:
    ConfigError(const std::string& field_path, const std::string& reason)
        : Error("config error at '" + field_path + "': " + reason),
          field_path(field_path), reason(reason) {}
    std::string field_path;
    std::string reason;
};

} // namespace viscoplast
