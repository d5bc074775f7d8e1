"""Exact and numerical verification of moduli of representations for PSL2(q) and Sz(q)."""

from ._core import (
    __version__,
    character_table,
    moduli_dimension,
    piterman,
    realize_rho0,
    rho0_claims,
    smith_invariants,
    verify,
)

__all__ = [
    "__version__",
    "character_table",
    "moduli_dimension",
    "piterman",
    "realize_rho0",
    "rho0_claims",
    "smith_invariants",
    "verify",
]
