"""Generalized Bregman distances, their envelopes and proximity operators on the real line."""
from .scalar import (
    DEFAULT_TOL,
    ContractViolation,
    DomainError,
    EmptyDomainError,
    ExtReal,
    Tolerance,
    lambert_w,
)
from .convex import ConvexFunction1D, Interval, abs_shift, boltzmann_shannon, energy, indicator, linear
from .representatives import (
    MonotoneOperator1D,
    Representative,
    fenchel_young,
    fitzpatrick_id,
    fitzpatrick_log,
    identity_operator,
    log_operator,
    sigma_id,
    sigma_log,
)
from .distances import DISTANCES, GbdSpec, Mode, bregman_classic, gbd_eval, named_spec
from .oracle import SearchWindow, brute_interval_argmin, brute_min
from .envelopes import EnvelopeQuery, ProxResult, Side, envelope, make_query, prox

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL", "ContractViolation", "DomainError", "EmptyDomainError", "ExtReal", "Tolerance",
    "lambert_w", "ConvexFunction1D", "Interval", "abs_shift", "boltzmann_shannon", "energy",
    "indicator", "linear", "MonotoneOperator1D", "Representative", "fenchel_young",
    "fitzpatrick_id", "fitzpatrick_log", "identity_operator", "log_operator", "sigma_id",
    "sigma_log", "DISTANCES", "GbdSpec", "Mode", "bregman_classic", "gbd_eval", "named_spec",
    "SearchWindow", "brute_interval_argmin", "brute_min", "EnvelopeQuery", "ProxResult", "Side",
    "envelope", "make_query", "prox",
]
