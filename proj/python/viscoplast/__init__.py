"""Numerical laboratory for compressible Power Law and Bingham fluids.

The heavy lifting lives in the C++ core; this package re-exports the
pybind11 module.
"""

from ._core import (  # noqa: F401
    FluidParams,
    ViscoplastError,
    advance_density,
    beta_fn,
    beta_prime,
    compat_init,
    derivative,
    detect_plugs,
    elliptic_apply,
    elliptic_solve,
    flux_F,
    has_uniform_lp_regularity,
    is_strongly_elliptic,
    j_quadratic,
    lp_norm,
    mean_zero_project,
    monotonicity_gap,
    powerlaw_run,
    rate_of_strain,
    sobolev_norm,
    stress_bingham_1d,
    stress_delta,
    stress_delta_1d,
    symbol_form,
    verify_h2,
    verify_w2p_1d,
    verify_yield,
)

__version__ = "0.1.0"
