"""Exact determinant-decay analysis for a two-user lattice space-time code.

Submodules:

* ``exact_ring``: exact arithmetic in Z[i, tau], tau = (1 + sqrt5)/2
* ``codes``: the composite two-user matrix and its determinant
* ``decay_search``: symmetry-reduced exact minimum determinant search
* ``sequences``: small-determinant witnesses from powers of 2 - sqrt5
* ``bounds``: approximation bounds, exponent fits, DMT condition
* ``serialize`` / ``cli``: CSV and JSON records, command-line front end
"""
__version__ = "0.1.0"

from .bounds import (
    DmtQuery,
    dmt_optimality,
    dmt_threshold,
    fit_exponent,
    liouville_effective_constant,
    tau_convergents,
    verify_bounds,
)
from .codes import DEFAULT_CONFIG, CodeConfig, UserCoords, bb_determinant, det_abs_squared
from .decay_search import BudgetExceeded, DecayRecord, decay, decay_series, enumerate_orbit_reps
from .exact_ring import GaloisMap, QuadInt, RingElem, abs_squared, apply_galois, cmp_quad
from .sequences import factor_z5n, m_factor, table1, unbalanced_series, z_element

__all__ = [
    "__version__",
    "BudgetExceeded",
    "CodeConfig",
    "DEFAULT_CONFIG",
    "DecayRecord",
    "DmtQuery",
    "GaloisMap",
    "QuadInt",
    "RingElem",
    "UserCoords",
    "abs_squared",
    "apply_galois",
    "bb_determinant",
    "cmp_quad",
    "decay",
    "decay_series",
    "det_abs_squared",
    "dmt_optimality",
    "dmt_threshold",
    "enumerate_orbit_reps",
    "factor_z5n",
    "fit_exponent",
    "liouville_effective_constant",
    "m_factor",
    "table1",
    "tau_convergents",
    "unbalanced_series",
    "verify_bounds",
    "z_element",
]
