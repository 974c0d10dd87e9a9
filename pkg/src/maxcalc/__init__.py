"""Bookkeeping engine for maximal real varieties.

Profiles record mod-2 Betti data and tri-state facts; construction rules
propagate maximality and log a citable proof trace.
"""

from .constructions import RULES, apply_rule
from .errors import EngineError
from .generators import catalog, make_curve, make_point, make_projective_space, make_surface
from .poincare import GradedDims, goettsche_series
from .profiles import Truth, VarietyProfile
from .script import parse, run
from .session import Session

__all__ = [
    "RULES",
    "apply_rule",
    "EngineError",
    "catalog",
    "make_curve",
    "make_point",
    "make_projective_space",
    "make_surface",
    "GradedDims",
    "goettsche_series",
    "Truth",
    "VarietyProfile",
    "parse",
    "run",
    "Session",
]
