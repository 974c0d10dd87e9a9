"""Variety profiles: cohomological fingerprints plus a tri-state fact lattice.

A profile stands in for a real variety ``(X, sigma)``.  It records the mod-2
Betti numbers of ``X(C)``, whatever is known about the mod-2 Betti numbers of
the real locus, and a set of yes/no/unknown facts, each carrying the citation
that established it.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum

from .errors import FactContradiction, ProfileError, SmithThomViolation
from .poincare import GradedDims, total

__all__ = [
    "Truth",
    "TriState",
    "UNKNOWN",
    "FACTS",
    "VarietyProfile",
    "SmithThom",
    "smith_thom_check",
    "assert_fact",
    "derive_implications",
    "settle_by_totals",
]


class Truth(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def parse(cls, v) -> Truth:
        if isinstance(v, Truth):
            return v
        if isinstance(v, bool):
            return cls.YES if v else cls.NO
        if v is None:
            return cls.UNKNOWN
        return cls(str(v).lower())

    def __bool__(self):
        raise TypeError("Truth is tri-state; compare against Truth.YES / Truth.NO explicitly")


@dataclass(frozen=True)
class TriState:
    value: Truth = Truth.UNKNOWN
    provenance: str | None = None

    @property
    def yes(self) -> bool:
        return self.value is Truth.YES

    @property
    def no(self) -> bool:
        return self.value is Truth.NO

    @property
    def known(self) -> bool:
        return self.value is not Truth.UNKNOWN

    def __str__(self):
        if self.provenance:
            return f"{self.value.value} [{self.provenance}]"
        return self.value.value


UNKNOWN = TriState()

FACTS = (
    "real_nonempty",
    "b1_zero",
    "h2_torsion_free",
    "h1_torsion_free",
    "c1_maximal",
    "k_maximal",
    "r_rational",
    "tate_motive",
    "equivariantly_formal",
    "maximal",
)

SMITH_THOM = "thm:SmithThom"
CRITERION = "prop:MaximalCriterion"


@dataclass(frozen=True)
class VarietyProfile:
    id: str
    dim: int
    complex_betti: GradedDims | None = None
    real_total: int | None = None
    real_betti: GradedDims | None = None
    real_components: int | None = None
    real_nonempty: TriState = UNKNOWN
    b1_zero: TriState = UNKNOWN
    h2_torsion_free: TriState = UNKNOWN
    h1_torsion_free: TriState = UNKNOWN
    c1_maximal: TriState = UNKNOWN
    k_maximal: TriState = UNKNOWN
    r_rational: TriState = UNKNOWN
    tate_motive: TriState = UNKNOWN
    equivariantly_formal: TriState = UNKNOWN
    maximal: TriState = UNKNOWN

    def __post_init__(self):
        if self.dim < 0:
            raise ProfileError(f"{self.id}: negative dimension")
        if self.real_betti is not None:
            if self.real_total is None:
                object.__setattr__(self, "real_total", total(self.real_betti))
            elif self.real_total != total(self.real_betti):
                raise ProfileError(f"{self.id}: real_total {self.real_total} != total(real_betti)")
        if self.real_total is not None and self.real_total < 0:
            raise ProfileError(f"{self.id}: negative real_total")
        if self.real_components is not None and self.real_components < 1:
            raise ProfileError(f"{self.id}: real_components must be positive")
        if self.maximal.value is not self.equivariantly_formal.value:
            raise ProfileError(f"{self.id}: maximal and equivariantly_formal disagree")
        if self.real_nonempty.no and (self.real_total or self.real_components):
            raise ProfileError(f"{self.id}: empty real locus with nonzero real data")
        if self.real_nonempty.yes and self.real_total == 0:
            raise ProfileError(f"{self.id}: nonempty real locus with real_total 0")
        ct = self.complex_total
        if self.maximal.yes:
            if ct is not None and self.real_total is not None and self.real_total != ct:
                raise ProfileError(f"{self.id}: maximal but totals differ ({ct} vs {self.real_total})")
            if not self.real_nonempty.yes and ct != 0:
                raise ProfileError(f"{self.id}: maximal with real locus not known nonempty")
        if self.maximal.no and ct is not None and self.real_total == ct:
            raise ProfileError(f"{self.id}: totals equal but maximal recorded as no")

    @property
    def complex_total(self) -> int | None:
        return None if self.complex_betti is None else total(self.complex_betti)

    def fact(self, name: str) -> TriState:
        if name not in FACTS:
            raise KeyError(f"unknown fact {name!r}")
        return getattr(self, name)

    def replace(self, **changes) -> VarietyProfile:
        return dataclasses.replace(self, **changes)


class SmithThom(Enum):
    CONSISTENT = "consistent"
    MAXIMAL = "maximal"
    STRICT = "strict"
    UNDETERMINED = "undetermined"


def smith_thom_check(p: VarietyProfile) -> SmithThom:
    """Compare the real and complex totals; raise on ``real > complex``.

    ``CONSISTENT`` means a real total is recorded but there is no complex
    table to compare it with.
    """
    if p.real_total is None:
        return SmithThom.UNDETERMINED
    ct = p.complex_total
    if ct is None:
        return SmithThom.CONSISTENT
    if p.real_total > ct:
        raise SmithThomViolation(f"{p.id}: real total {p.real_total} exceeds complex total {ct}")
    return SmithThom.MAXIMAL if p.real_total == ct else SmithThom.STRICT


def _contradiction(p, fact, old: TriState, new_value: Truth, provenance):
    raise FactContradiction(f"{fact}({p.id})", old.value.value, old.provenance, new_value.value, provenance)


def assert_fact(p: VarietyProfile, fact: str, v, provenance: str) -> VarietyProfile:
    """Record ``fact = v``; returns the updated profile.

    Setting ``maximal`` (or ``equivariantly_formal``) sets both, and a ``yes``
    back-fills the real total from the complex one.  Re-asserting a known
    value keeps the original provenance.
    """
    value = Truth.parse(v)
    if value is Truth.UNKNOWN:
        raise ValueError("only yes/no can be asserted")
    old = p.fact(fact)
    if old.known:
        if old.value is not value:
            _contradiction(p, fact, old, value, provenance)
        return p
    new = TriState(value, provenance)
    ct = p.complex_total

    if fact in ("maximal", "equivariantly_formal"):
        changes = {"maximal": new, "equivariantly_formal": new}
        if value is Truth.YES:
            if ct is not None:
                if p.real_total is None:
                    changes["real_total"] = ct
                elif p.real_total != ct:
                    raise FactContradiction(
                        f"maximal({p.id})", f"real_total={p.real_total}", SMITH_THOM,
                        f"maximal with complex total {ct}", provenance)
            if ct != 0:
                p = assert_fact(p, "real_nonempty", Truth.YES, provenance)
        elif ct is not None and p.real_total == ct:
            raise FactContradiction(
                f"maximal({p.id})", f"totals equal ({ct})", SMITH_THOM, "no", provenance)
        return p.replace(**changes)

    if fact == "real_nonempty":
        if value is Truth.NO:
            if p.real_total:
                raise FactContradiction(
                    f"real_nonempty({p.id})", f"real_total={p.real_total}", None, "no", provenance)
            if p.maximal.yes and ct != 0:
                _contradiction(p, "maximal", p.maximal, Truth.NO, provenance)
            return p.replace(real_nonempty=new, real_total=0, real_betti=None, real_components=None)
        if p.real_total == 0:
            raise FactContradiction(f"real_nonempty({p.id})", "real_total=0", None, "yes", provenance)
    return p.replace(**{fact: new})


def settle_by_totals(p: VarietyProfile, provenance: str = SMITH_THOM) -> VarietyProfile:
    """Decide ``maximal`` from the totals when both are known."""
    st = smith_thom_check(p)
    if st is SmithThom.MAXIMAL and not p.maximal.yes:
        return assert_fact(p, "maximal", Truth.YES, provenance)
    if st is SmithThom.STRICT and not p.maximal.no:
        return assert_fact(p, "maximal", Truth.NO, provenance)
    return p


RELATIONS = "lemma:RelationMaximalities"
RATIONAL_SURFACE = "lemma:KMaxRationalSurface"
TORSION_CAVEAT = "; H^3 2-torsion hypothesis proxied by h2_torsion_free"
KTHEORY_CAVEAT = "; K0/K1 maximality merged into k_maximal"


def derive_implications(p: VarietyProfile) -> VarietyProfile:
    """Close the facts of ``p`` under the maximality-variant implications.

    * totals equal / strictly smaller decides ``maximal``;
    * a c1-maximal surface with ``b1 = 0`` is maximal;
    * K-maximal with torsion-free cohomology is c1-maximal;
    * a maximal R-rational surface is K-maximal and c1-maximal.

    Iterates to a fixed point.
    """
    while True:
        q = settle_by_totals(p)
        if q.dim == 2 and q.c1_maximal.yes and q.b1_zero.yes and not q.maximal.yes:
            q = assert_fact(q, "maximal", Truth.YES, f"{RELATIONS} (ii)")
        if q.k_maximal.yes and q.h2_torsion_free.yes and not q.c1_maximal.yes:
            q = assert_fact(q, "c1_maximal", Truth.YES, f"{RELATIONS} (i){TORSION_CAVEAT}{KTHEORY_CAVEAT}")
        if q.dim == 2 and q.maximal.yes and q.r_rational.yes:
            if not q.k_maximal.yes:
                q = assert_fact(q, "k_maximal", Truth.YES, RATIONAL_SURFACE + KTHEORY_CAVEAT)
            if not q.c1_maximal.yes:
                q = assert_fact(q, "c1_maximal", Truth.YES, RATIONAL_SURFACE)
        if q == p:
            return p
        p = q
