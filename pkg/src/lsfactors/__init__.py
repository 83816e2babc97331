"""Exact local factors for quasi-split unitary groups and restriction-of-scalars GL(n).

Everything is computed in exact arithmetic: Laurent polynomials over Q in the
substitution variable t = q^(-s) and in named Satake parameters, with rational
functions kept in a canonical reduced form so that the classical identities
(functional equations, multiplicativity of the local coefficient, base-change
compatibility) can be verified as structural equalities rather than floating
point near-misses.
"""

from . import basechange, exactalg, globalfield, lgroup, localfactors, rootdata, weyl

__version__ = "0.1.0"

__all__ = [
    "basechange",
    "exactalg",
    "globalfield",
    "lgroup",
    "localfactors",
    "rootdata",
    "weyl",
]
