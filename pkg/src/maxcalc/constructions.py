"""Construction rules that propagate maximality.

Each rule consumes profiles and returns new ones.  Rules that come with a
Betti formula (products, projective and flag bundles, blow-ups, Hilbert
schemes of surfaces, rank-2 bundle moduli) compute complex Betti tables;
the rest only propagate the ``maximal`` flag and the dimension.  When a
profile is maximal and its complex table is known, the real total is forced.

:data:`RULES` maps rule ids to :class:`Rule` records carrying the citation
(a label key of the source theorem) and the side conditions the engine
cannot check, which end up in the proof trace.
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Callable, Sequence

from . import generators
from .errors import NotCoprime, ProfileError, RuleNotApplicable
from .poincare import (
    ZERO,
    GradedDims,
    curve_moduli_poincare_rank2,
    flag_poincare,
    goettsche_coefficient,
    mul,
    shift,
)
from .profiles import (
    TriState,
    Truth,
    VarietyProfile,
    assert_fact,
    derive_implications,
    settle_by_totals,
    smith_thom_check,
)

YES, NO = Truth.YES, Truth.NO

__all__ = [
    "Rule",
    "Derivation",
    "RULES",
    "product",
    "projective_bundle",
    "flag_bundle",
    "blow_up",
    "hilbert_square_rules",
    "hilbert_scheme_surface",
    "bundle_moduli",
    "apply_rule",
]


@dataclass(frozen=True)
class Derivation:
    profiles: tuple[VarietyProfile, ...]
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class Rule:
    rule_id: str
    citation: str
    fn: Callable[..., Derivation]
    arity: int | None  # None: one or more inputs
    assumptions: tuple[str, ...] = ()
    generator: bool = False
    signature: inspect.Signature = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "signature", inspect.signature(self.fn))


def _finish(p: VarietyProfile) -> VarietyProfile:
    smith_thom_check(p)
    return derive_implications(settle_by_totals(p))


def _assemble(id, dim, complex_betti=None, real_total=None, real_betti=None,
              real_components=None, facts=()) -> VarietyProfile:
    """Build a profile, then assert ``facts`` (``(name, value, provenance)``) in order."""
    p = VarietyProfile(id=id, dim=dim, complex_betti=complex_betti, real_total=real_total,
                       real_betti=real_betti, real_components=real_components)
    smith_thom_check(p)
    for name, value, src in sorted(facts, key=lambda f: f[0] != "real_nonempty"):
        if value is not Truth.UNKNOWN:
            p = assert_fact(p, name, value, src)
    return _finish(p)


def _all(values) -> Truth:
    values = list(values)
    if any(v is NO for v in values):
        return NO
    if all(v is YES for v in values):
        return YES
    return Truth.UNKNOWN


def _yes_only(values) -> Truth:
    return YES if all(v is YES for v in values) else Truth.UNKNOWN


def _need(cond: bool, rule: str, what: str):
    if not cond:
        raise RuleNotApplicable(rule, what)


def _recite(p: VarietyProfile, citation: str) -> VarietyProfile:
    if p.maximal.known:
        t = TriState(p.maximal.value, citation)
        p = p.replace(maximal=t, equivariantly_formal=t)
    return p


def _renamed(p: VarietyProfile, id: str | None) -> VarietyProfile:
    return p if id is None or id == p.id else p.replace(id=id)


def _genus(c: VarietyProfile, rule: str) -> int:
    if c.dim != 1:
        raise ProfileError(f"{rule}: {c.id} is not a curve (dim {c.dim})")
    _need(c.complex_betti is not None, rule, f"complex Betti numbers of {c.id}")
    return c.complex_betti[1] // 2


def _propagated(id: str, dim: int, citation: str, **extra) -> VarietyProfile:
    return _assemble(id, dim, facts=[("maximal", YES, citation)], **extra)


def _torus_poly(g: int) -> GradedDims:
    out = GradedDims.from_list([1])
    for _ in range(2 * g):
        out = mul(out, GradedDims.from_list([1, 1]))
    return out


# -- rules with Betti formulas ----------------------------------------------

PRODUCT = "lemma:Product"


def product(xs: Sequence[VarietyProfile], id: str | None = None) -> VarietyProfile:
    """Product of real varieties: Künneth on both sides, maximal iff every factor is."""
    xs = list(xs)
    if not xs:
        raise ValueError("product of an empty list")
    if len(xs) == 1:
        return _renamed(xs[0], id)
    id = id or "x".join(x.id for x in xs)

    def fold(vals):
        if any(v is None for v in vals):
            return None
        out = vals[0]
        for v in vals[1:]:
            out = mul(out, v)
        return out

    nonempty = _all(x.real_nonempty.value for x in xs)
    real_totals = [x.real_total for x in xs]
    if nonempty is NO or 0 in real_totals:
        real_total, real_betti, comps = 0, None, None
    else:
        real_total = None if None in real_totals else prod(real_totals)
        real_betti = fold([x.real_betti for x in xs])
        cs = [x.real_components for x in xs]
        comps = None if None in cs else prod(cs)
    return _assemble(
        id, sum(x.dim for x in xs),
        complex_betti=fold([x.complex_betti for x in xs]),
        real_total=real_total, real_betti=real_betti, real_components=comps,
        facts=[
            ("real_nonempty", nonempty, PRODUCT),
            ("maximal", _all(x.maximal.value for x in xs), PRODUCT),
            ("b1_zero", _all(x.b1_zero.value for x in xs), "Kunneth"),
            ("r_rational", _yes_only(x.r_rational.value for x in xs), PRODUCT),
            ("tate_motive", _yes_only(x.tate_motive.value for x in xs), PRODUCT),
        ],
    )


def _fibre_bundle(x: VarietyProfile, fibre_c: GradedDims, fibre_r: GradedDims,
                  citation: str, id: str) -> VarietyProfile:
    # Leray-Hirsch on X(C) and on X(R); the fibre has equal complex/real mod-2 totals
    scale = fibre_r.total()
    return _assemble(
        id, x.dim + fibre_c.degree // 2,
        complex_betti=None if x.complex_betti is None else mul(x.complex_betti, fibre_c),
        real_total=None if x.real_total is None else x.real_total * scale,
        real_betti=None if x.real_betti is None else mul(x.real_betti, fibre_r),
        real_components=x.real_components,
        facts=[
            ("real_nonempty", x.real_nonempty.value, citation),
            ("maximal", x.maximal.value, citation),
            ("b1_zero", x.b1_zero.value, citation),
            ("r_rational", _yes_only([x.r_rational.value]), citation),
            ("tate_motive", _yes_only([x.tate_motive.value]), citation),
        ],
    )


def projective_bundle(x: VarietyProfile, rank: int, id: str | None = None) -> VarietyProfile:
    """``P(E)`` for a real vector bundle ``E`` of the given rank over ``x``."""
    if rank < 1:
        raise ValueError("rank must be at least 1")
    if rank == 1:
        return _renamed(x, id)
    r = rank - 1
    fc = GradedDims(tuple((2 * i, 1) for i in range(r + 1)))
    fr = GradedDims(tuple((i, 1) for i in range(r + 1)))
    return _fibre_bundle(x, fc, fr, "prop:ProjBun", id or f"P_{rank}({x.id})")


def flag_bundle(x: VarietyProfile, dims: Sequence[int], id: str | None = None) -> VarietyProfile:
    """Relative flag variety of type ``d1 < ... < dk = n`` of a real bundle over ``x``."""
    fc = flag_poincare(dims, 2)
    if fc.degree == 0:
        return _renamed(x, id)
    fr = flag_poincare(dims, 1)
    tag = ",".join(map(str, dims))
    return _fibre_bundle(x, fc, fr, "rmk:FlagBundles", id or f"Fl({tag})({x.id})")


BLOWUP = "prop:Blowup"


def blow_up(x: VarietyProfile, y: VarietyProfile, codim: int, id: str | None = None) -> VarietyProfile:
    """Blow-up of ``x`` along the real subvariety ``y`` of codimension ``codim``.

    ``P(Bl) = P(X) + sum_{k=1}^{c-1} t^{2k} P(Y)``.  Maximal when both inputs
    are; when ``y`` has no real points the real locus is untouched.
    """
    if codim < 2 or y.dim + codim != x.dim:
        raise ProfileError(
            f"blow_up: dim({y.id})={y.dim} + codim {codim} must equal dim({x.id})={x.dim}, codim >= 2")
    id = id or f"Bl_{y.id}({x.id})"
    cb = None
    if x.complex_betti is not None and y.complex_betti is not None:
        cb = x.complex_betti
        for k in range(1, codim):
            cb = cb + shift(y.complex_betti, 2 * k)
    facts = [("b1_zero", _yes_only([x.b1_zero.value]), BLOWUP),
             ("r_rational", x.r_rational.value, "birational invariance"),
             ("tate_motive", _yes_only([x.tate_motive.value, y.tate_motive.value]), BLOWUP)]
    real = {}
    if x.maximal.yes and y.maximal.yes:
        facts.append(("maximal", YES, BLOWUP))
    elif y.real_nonempty.no:
        real = dict(real_total=x.real_total, real_betti=x.real_betti,
                    real_components=x.real_components)
        facts.append(("real_nonempty", x.real_nonempty.value, BLOWUP))
    return _assemble(id, x.dim, complex_betti=cb, facts=facts, **real)


# -- Hilbert squares and Hilbert schemes --------------------------------------

HILB23 = "thm:HilbertSquareCube"
LOSS = "rmk:LossOfMaximality"


def _diagonal_blowup(x: VarietyProfile, id: str) -> VarietyProfile:
    # X^{[1,2]} = Bl_diag(X x X); for curves the diagonal is a divisor
    xx = product([x, x], id=id)
    if x.dim == 1:
        return xx
    return blow_up(xx, x, x.dim, id=id)


def hilbert_square_forward(x: VarietyProfile, id: str | None = None) -> VarietyProfile:
    _need(x.maximal.yes, "hilbert_square", f"maximal({x.id})=yes")
    _need(x.dim >= 1, "hilbert_square", f"dim({x.id}) >= 1")
    return _recite(_diagonal_blowup(x, id or f"{x.id}^[1,2]"), HILB23 + " (i)")


def hilbert_square_backward(x2: VarietyProfile, x: VarietyProfile,
                            id: str | None = None) -> list[VarietyProfile]:
    """From a maximal ``X^[2]`` and a real point on ``X``: ``X``, ``X^[1,2]``,
    ``X^[2,3]`` and ``X^[3]`` are maximal."""
    _need(x2.maximal.yes, "hilbert_square", f"maximal({x2.id})=yes")
    _need(x.real_nonempty.yes, "hilbert_square", f"real_nonempty({x.id})=yes")
    _need(x.dim >= 1, "hilbert_square", f"dim({x.id}) >= 1")
    if x2.dim != 2 * x.dim:
        raise ProfileError(f"hilbert_square: dim({x2.id}) must be twice dim({x.id})")
    cite = HILB23 + " (ii)"
    base = id or f"{x.id}'"
    xm = _renamed(assert_fact(x, "maximal", YES, cite), base)
    xm = derive_implications(xm)
    x12 = _recite(_diagonal_blowup(xm, f"{base}.x12"), cite)
    d = x.dim
    if x2.complex_betti is not None:
        xx2 = product([xm, x2], id=f"{base}.x23")
        x23 = xx2 if d == 1 else blow_up(xx2, x12, d, id=f"{base}.x23")
        x23 = _recite(x23, cite)
    else:
        x23 = _propagated(f"{base}.x23", 3 * d, cite)
    x3 = _propagated(f"{base}.x3", 3 * d, cite + "; prop:SurjectionOddDegree (degree 3)")
    return [xm, x12, x23, x3]


def _surface_betti(s: VarietyProfile) -> tuple[int, ...] | None:
    if s.complex_betti is None or not (s.b1_zero.yes and s.h2_torsion_free.yes):
        return None
    return tuple(s.complex_betti[i] for i in range(5))


def hilbert_square_criterion(x: VarietyProfile, id: str | None = None) -> VarietyProfile:
    """``X^[2]`` of a maximal surface with ``b1 = 0`` is maximal iff ``X(R)`` is connected."""
    rule = "hilbert_square_criterion"
    _need(x.dim == 2, rule, f"dim({x.id})=2")
    _need(x.b1_zero.yes, rule, f"b1_zero({x.id})=yes")
    _need(x.maximal.yes, rule, f"maximal({x.id})=yes")
    _need(x.real_components is not None, rule, f"real_components({x.id}) known")
    b = _surface_betti(x)
    return _assemble(
        id or f"{x.id}^[2]", 4,
        complex_betti=None if b is None else goettsche_coefficient(*b, 2),
        facts=[("maximal", YES if x.real_components == 1 else NO, LOSS)],
    )


def hilbert_square_rules(x: VarietyProfile, direction: str, base: VarietyProfile | None = None,
                         id: str | None = None) -> list[VarietyProfile]:
    if direction == "forward":
        return [hilbert_square_forward(x, id)]
    if direction == "backward":
        if base is None:
            raise ValueError("backward direction needs the base variety")
        return hilbert_square_backward(x, base, id)
    if direction == "surface_criterion":
        return [hilbert_square_criterion(x, id)]
    raise ValueError(f"unknown direction {direction!r}")


HILBN = "thm:HilbertPower"


def _hilbert_scheme(s: VarietyProfile, n: int, id: str | None = None) -> Derivation:
    if s.dim != 2:
        raise ProfileError(f"hilbert_scheme: {s.id} is not a surface (dim {s.dim})")
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return Derivation((_renamed(s, id),), ("S^[1] = S",))
    b = _surface_betti(s)
    facts, notes = [], []
    if b is not None:
        facts += [("b1_zero", YES, HILBN), ("h2_torsion_free", YES, HILBN)]
    if b is not None and s.c1_maximal.yes:
        facts.append(("maximal", YES, HILBN))
        if s.r_rational.yes:
            notes.append("via cor:RealRationalSurface")
    elif s.tate_motive.yes:
        facts.append(("maximal", YES, "thm:SurfaceTate"))
        notes.append("via thm:SurfaceTate")
    else:
        notes.append("maximality not decided: needs b1=0, torsion-free H^2 and c1-maximality, or a Tate motive")
    p = _assemble(
        id or f"{s.id}^[{n}]", 2 * n,
        complex_betti=None if b is None else goettsche_coefficient(*b, n),
        facts=facts,
    )
    return Derivation((p,), tuple(notes))


def hilbert_scheme_surface(s: VarietyProfile, n: int, id: str | None = None) -> VarietyProfile:
    return _hilbert_scheme(s, n, id).profiles[0]


# -- moduli on curves -----------------------------------------------------------

VBAC = "thm:VBAC"
HIGGS = "thm:Higgs"


def _curve_moduli_facts(c: VarietyProfile, citation: str):
    if c.maximal.yes:
        return [("maximal", YES, citation)]
    if c.maximal.no and c.real_nonempty.yes:
        return [("maximal", NO, citation + " (converse)")]
    return []


def _check_rank_degree(rule, rank, degree):
    _need(rank > 0, rule, "rank > 0")
    if gcd(rank, degree) != 1:
        raise NotCoprime(rule, f"gcd(rank={rank}, degree={degree}) = 1")


def bundle_moduli(c: VarietyProfile, rank: int, degree: int, id: str | None = None) -> VarietyProfile:
    """Moduli of stable bundles of coprime rank and degree on the curve ``c``."""
    g = _genus(c, "bundle_moduli")
    _need(g >= 2, "bundle_moduli", "genus >= 2")
    _check_rank_degree("bundle_moduli", rank, degree)
    if rank == 1:
        cb = _torus_poly(g)
    elif rank == 2:
        cb = curve_moduli_poincare_rank2(g)
    else:
        cb = None
    return _assemble(
        id or f"M_{c.id}({rank},{degree})", rank * rank * (g - 1) + 1,
        complex_betti=cb,
        facts=_curve_moduli_facts(c, VBAC) + [
            ("h1_torsion_free", YES, "thm:AtiyahBott"),
            ("h2_torsion_free", YES, "thm:AtiyahBott"),
            ("b1_zero", NO, "b1 = 2g"),
        ],
    )


def _converse(rule: str, citation: str, m: VarietyProfile, c: VarietyProfile, id) -> VarietyProfile:
    _genus(c, rule)
    _need(m.maximal.yes, rule, f"maximal({m.id})=yes")
    _need(c.real_nonempty.yes, rule, f"real_nonempty({c.id})=yes")
    out = assert_fact(c, "maximal", YES, citation + " (converse)")
    return derive_implications(_renamed(out, id or f"{c.id}'"))


def bundle_moduli_converse(m, c, id=None):
    return _converse("bundle_moduli_converse", VBAC, m, c, id)


def higgs_moduli(c, rank, degree, id=None):
    g = _genus(c, "higgs_moduli")
    _need(g >= 2, "higgs_moduli", "genus >= 2")
    _check_rank_degree("higgs_moduli", rank, degree)
    return _assemble(id or f"H_{c.id}({rank},{degree})", 2 * rank * rank * (g - 1) + 2,
                     facts=_curve_moduli_facts(c, HIGGS))


def higgs_moduli_converse(h, c, id=None):
    return _converse("higgs_moduli_converse", HIGGS, h, c, id)


def parabolic_moduli(c, rank, degree, points, id=None):
    rule = "parabolic_moduli"
    g = _genus(c, rule)
    _need(g >= 2, rule, "genus >= 2")
    _need(c.maximal.yes, rule, f"maximal({c.id})=yes")
    _check_rank_degree(rule, rank, degree)
    _need(points >= 0, rule, "points >= 0")
    # full flags at each parabolic point add dim Fl(C^n) = n(n-1)/2
    dim = rank * rank * (g - 1) + 1 + points * rank * (rank - 1) // 2
    return _propagated(id or f"Mpar_{c.id}({rank},{degree},{points})", dim, "cor:Parabolic")


JACOBIAN = "cor:Jacobian"


def jacobian(c, id=None):
    g = _genus(c, "jacobian")
    id = id or f"J({c.id})"
    if c.maximal.yes:
        return _recite(generators.make_abelian_variety(g, 0, id=id), JACOBIAN)
    return _assemble(id, g, complex_betti=_torus_poly(g),
                     facts=[("real_nonempty", YES, "origin is a real point")]
                     + _curve_moduli_facts(c, JACOBIAN))


def jacobian_converse(j, c, id=None):
    return _converse("jacobian_converse", JACOBIAN, j, c, id)


def albanese(x, q=None, id=None, _name="Alb"):
    rule = "albanese"
    _need(x.maximal.yes, rule, f"maximal({x.id})=yes")
    _need(x.h1_torsion_free.yes, rule, f"h1_torsion_free({x.id})=yes")
    if x.complex_betti is not None:
        b1 = x.complex_betti[1]
        if q is not None and 2 * q != b1:
            raise ProfileError(f"albanese: q={q} but b1({x.id})={b1}")
        q = b1 // 2
    _need(q is not None, rule, "irregularity q (complex Betti unknown)")
    return _recite(generators.make_abelian_variety(q, 0, id=id or f"{_name}({x.id})"), "prop:AlbMax")


def picard(x, q=None, id=None):
    return albanese(x, q, id, _name="Pic0")


# -- propagation-only rules ---------------------------------------------------

FRANZ = "thm:Franz"


def sym_power(x, n, id=None):
    _need(x.maximal.yes, "sym_power", f"maximal({x.id})=yes")
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return _renamed(x, id)
    return _propagated(id or f"Sym^{n}({x.id})", n * x.dim, FRANZ)


def gamma_product(x, n, group="S_n", id=None):
    _need(x.maximal.yes, "gamma_product", f"maximal({x.id})=yes")
    if n < 1:
        raise ValueError("n must be positive")
    return _propagated(id or f"{x.id}^{n}/{group}", n * x.dim, FRANZ)


def flip_flop(x, center, id=None):
    _need(x.maximal.yes, "flip_flop", f"maximal({x.id})=yes")
    _need(center.maximal.yes, "flip_flop", f"maximal({center.id})=yes")
    return _propagated(id or f"flip_{center.id}({x.id})", x.dim, "rmk:FlipFlop")


def _fulton_macpherson(x, n, id=None) -> Derivation:
    _need(x.maximal.yes, "fulton_macpherson", f"maximal({x.id})=yes")
    _need(x.dim >= 1, "fulton_macpherson", f"dim({x.id}) >= 1")
    if n < 1:
        raise ValueError("n must be positive")
    id = id or f"{x.id}[{n}]"
    note = f"{2 ** n - n - 1} blow-ups"
    if n == 1:
        return Derivation((_renamed(x, id),), (note,))
    if n == 2:
        return Derivation((_recite(_diagonal_blowup(x, id), "prop:Configuration"),), (note,))
    return Derivation((_propagated(id, n * x.dim, "prop:Configuration"),), (note,))


def fulton_macpherson(x, n, id=None):
    return _fulton_macpherson(x, n, id).profiles[0]


def odd_degree_image(x, y, degree, id=None):
    rule = "odd_degree_image"
    _need(x.maximal.yes, rule, f"maximal({x.id})=yes")
    _need(degree % 2 == 1 and degree > 0, rule, "odd multisection degree")
    if y.dim > x.dim:
        raise ProfileError(f"{rule}: a surjection {x.id} -> {y.id} cannot raise dimension")
    out = assert_fact(y, "maximal", YES, "prop:SurjectionOddDegree")
    return _finish(_renamed(out, id or f"{y.id}'"))


def _intermediate_jacobian_rules(family, source_dims, fano_name, fano_dim, ij_dim, citation):
    def fano(x, id=None):
        _need(x.dim in source_dims, f"{family}_fano", f"dim({x.id}) in {source_dims}")
        _need(x.maximal.yes, f"{family}_fano", f"maximal({x.id})=yes")
        return _propagated(id or f"{fano_name}({x.id})", fano_dim, citation)

    def ij(x, id=None):
        _need(x.dim in source_dims, f"{family}_ij", f"dim({x.id}) in {source_dims}")
        _need(x.maximal.yes, f"{family}_ij", f"maximal({x.id})=yes")
        return _recite(generators.make_abelian_variety(ij_dim, 0, id=id or f"J({x.id})"), citation)

    return fano, ij


cubic3_fano, cubic3_ij = _intermediate_jacobian_rules("cubic3", (3,), "F", 2, 5, "prop:Cubic3")
cubic5_fano, cubic5_ij = _intermediate_jacobian_rules(
    "cubic5", (5,), "F2", 2, 21, "sec:IntermediateJacobian")
quartic3_fano, quartic3_ij = _intermediate_jacobian_rules(
    "quartic3", (3,), "Fc", 2, 30, "sec:IntermediateJacobian")
gushel_mukai_epw, gushel_mukai_ij = _intermediate_jacobian_rules(
    "gushel_mukai", (3, 5), "EPW", 2, 10, "sec:IntermediateJacobian")


P2_BETTI = GradedDims.from_list([1, 0, 1, 0, 1])


def _p2_sheaf_moduli(x, rank, c1, c2, id=None) -> Derivation:
    rule = "p2_sheaf_moduli"
    _need(x.dim == 2 and x.complex_betti == P2_BETTI and x.maximal.yes, rule,
          f"{x.id} is the maximal real projective plane")
    _need(rank > 0, rule, "rank > 0")
    if gcd(rank, c1, c1 * (c1 + 1) // 2 - c2) != 1:
        raise NotCoprime(rule, f"gcd(r, c1, c1(c1+1)/2 - c2) = 1 for ({rank},{c1},{c2})")
    id = id or f"M_P2({rank},{c1},{c2})"
    expdim = 2 * rank * c2 - (rank - 1) * c1 * c1 - rank * rank + 1
    cite = "thm:ModuliP2"
    if expdim < 0:
        # stable sheaves on P2 are unobstructed, so negative expected dimension means empty
        p = _assemble(id, 0, complex_betti=ZERO, real_total=0,
                      facts=[("real_nonempty", NO, cite), ("maximal", YES, cite)])
        return Derivation((p,), (f"expected dimension {expdim} < 0: empty moduli space",))
    p = _assemble(id, expdim, facts=[("maximal", YES, cite), ("tate_motive", YES, cite)])
    return Derivation((p,))


def p2_sheaf_moduli(x, rank, c1, c2, id=None):
    return _p2_sheaf_moduli(x, rank, c1, c2, id).profiles[0]


def _poisson_sheaf_moduli(s, rank, dim, id=None) -> Derivation:
    rule = "poisson_sheaf_moduli"
    if s.dim != 2:
        raise ProfileError(f"{rule}: {s.id} is not a surface")
    _need(rank > 0, rule, "rank(v) > 0")
    _need(dim >= 0, rule, "dim >= 0")
    _need(s.k_maximal.yes, rule, f"k_maximal({s.id})=yes")
    notes = ()
    if s.r_rational.yes and s.maximal.yes:
        notes = ("via cor:RationalPoisson",)
    p = _propagated(id or f"M_{s.id}(v,rk={rank})", dim, "thm:PoissonSurface")
    return Derivation((p,), notes)


def poisson_sheaf_moduli(s, rank, dim, id=None):
    return _poisson_sheaf_moduli(s, rank, dim, id).profiles[0]


# -- registry ---------------------------------------------------------------

def _one(f):
    def run(inputs, **kw):
        out = f(*inputs, **kw)
        if isinstance(out, Derivation):
            return out
        if isinstance(out, list):
            return Derivation(tuple(out))
        return Derivation((out,))
    run.__signature__ = inspect.Signature(
        [inspect.Parameter("inputs", inspect.Parameter.POSITIONAL_ONLY)]
        + [p for i, p in enumerate(inspect.signature(f).parameters.values())
           if i >= _n_inputs(f)])
    return run


def _n_inputs(f) -> int:
    return getattr(f, "_n_inputs", 1)


def _inputs(n):
    def deco(f):
        f._n_inputs = n
        return f
    return deco


def _hilbert_square(x, *rest, direction, id=None):
    if direction == "backward":
        if len(rest) != 1:
            raise ValueError("backward direction takes (X2, X)")
        return Derivation(tuple(hilbert_square_backward(x, rest[0], id)))
    if rest:
        raise ValueError(f"{direction} direction takes one input")
    return Derivation(tuple(hilbert_square_rules(x, direction, id=id)))


def _hilbert_square_run(inputs, direction, id=None):
    return _hilbert_square(*inputs, direction=direction, id=id)


def _product_run(inputs, id=None):
    return Derivation((product(inputs, id=id),))


def _gen(f):
    def run(inputs, **kw):
        return Derivation((f(**kw),))
    run.__signature__ = inspect.Signature(
        [inspect.Parameter("inputs", inspect.Parameter.POSITIONAL_ONLY)]
        + list(inspect.signature(f).parameters.values()))
    return run


def _custom(id, dim, betti=None, real_total=None, real_betti=None, components=None, **facts):
    return generators.make_custom(
        id, dim,
        complex_betti=None if betti is None else GradedDims.from_list(betti),
        real_total=real_total,
        real_betti=None if real_betti is None else GradedDims.from_list(real_betti),
        real_components=components,
        **facts,
    )


for _f, _n in [(blow_up, 2), (flip_flop, 2), (odd_degree_image, 2), (bundle_moduli_converse, 2),
               (higgs_moduli_converse, 2), (jacobian_converse, 2)]:
    _inputs(_n)(_f)

_BUNDLE = ("E is a holomorphic real vector bundle on the base",)

_rule_list = [
    Rule("point", "catalog", _gen(lambda id=None: generators.make_point(id)), 0, generator=True),
    Rule("projective_space", "catalog",
         _gen(lambda dim, id=None: generators.make_projective_space(dim, id)), 0, generator=True),
    Rule("curve", "catalog",
         _gen(lambda genus, circles, id=None: generators.make_curve(genus, circles, id)), 0,
         generator=True),
    Rule("abelian_variety", "catalog",
         _gen(lambda dim, lambda1, id=None: generators.make_abelian_variety(dim, lambda1, id)), 0,
         generator=True),
    Rule("surface", "catalog",
         _gen(lambda name, id=None, **kw: generators.make_surface(name, id, **kw)), 0,
         generator=True),
    Rule("custom", "user", _gen(_custom), 0, generator=True),
    Rule("blow_up_point", "lemma:KMaxRationalSurface",
         _one(lambda s, where, id=None: generators.blow_up_surface_point(s, where, id)), 1,
         generator=True),
    Rule("product", PRODUCT, _product_run, None),
    Rule("projective_bundle", "prop:ProjBun", _one(projective_bundle), 1, _BUNDLE),
    Rule("flag_bundle", "rmk:FlagBundles", _one(flag_bundle), 1, _BUNDLE),
    Rule("blow_up", BLOWUP, _one(blow_up), 2, ("the center is a smooth real subvariety",)),
    Rule("hilbert_square", HILB23, _hilbert_square_run, None,
         ("backward: the first input is the Hilbert square of the second",)),
    Rule("hilbert_square_criterion", LOSS, _one(hilbert_square_criterion), 1),
    Rule("hilbert_scheme", HILBN, _one(_hilbert_scheme), 1),
    Rule("bundle_moduli", VBAC, _one(bundle_moduli), 1),
    Rule("bundle_moduli_converse", VBAC, _one(bundle_moduli_converse), 2,
         ("the first input is a bundle moduli space of the second",)),
    Rule("higgs_moduli", HIGGS, _one(higgs_moduli), 1),
    Rule("higgs_moduli_converse", HIGGS, _one(higgs_moduli_converse), 2,
         ("the first input is a Higgs moduli space of the second",)),
    Rule("parabolic_moduli", "cor:Parabolic", _one(parabolic_moduli), 1,
         ("parabolic points lie in C(R)", "full flag type, generic weight")),
    Rule("jacobian", JACOBIAN, _one(jacobian), 1),
    Rule("jacobian_converse", JACOBIAN, _one(jacobian_converse), 2,
         ("the first input is the Jacobian of the second",)),
    Rule("albanese", "prop:AlbMax", _one(albanese), 1),
    Rule("picard", "prop:AlbMax", _one(picard), 1),
    Rule("sym_power", FRANZ, _one(sym_power), 1),
    Rule("gamma_product", FRANZ, _one(gamma_product), 1),
    Rule("flip_flop", "rmk:FlipFlop", _one(flip_flop), 2,
         ("standard flip or flop along the given real center",)),
    Rule("fulton_macpherson", "prop:Configuration", _one(_fulton_macpherson), 1),
    Rule("odd_degree_image", "prop:SurjectionOddDegree", _one(odd_degree_image), 2,
         ("a surjective proper real morphism from the first input onto the second "
          "with a rational multisection of the given degree",)),
    Rule("cubic3_fano", "prop:Cubic3", _one(cubic3_fano), 1, ("the input is a smooth real cubic threefold",)),
    Rule("cubic3_ij", "prop:Cubic3", _one(cubic3_ij), 1, ("the input is a smooth real cubic threefold",)),
    Rule("cubic5_fano", "sec:IntermediateJacobian", _one(cubic5_fano), 1,
         ("the input is a general real cubic fivefold",)),
    Rule("cubic5_ij", "sec:IntermediateJacobian", _one(cubic5_ij), 1,
         ("the input is a general real cubic fivefold",)),
    Rule("quartic3_fano", "sec:IntermediateJacobian", _one(quartic3_fano), 1,
         ("the input is a general real quartic threefold",)),
    Rule("quartic3_ij", "sec:IntermediateJacobian", _one(quartic3_ij), 1,
         ("the input is a general real quartic threefold",)),
    Rule("gushel_mukai_epw", "sec:IntermediateJacobian", _one(gushel_mukai_epw), 1,
         ("the input is a real Gushel-Mukai threefold or fivefold",)),
    Rule("gushel_mukai_ij", "sec:IntermediateJacobian", _one(gushel_mukai_ij), 1,
         ("the input is a real Gushel-Mukai threefold or fivefold",)),
    Rule("p2_sheaf_moduli", "thm:ModuliP2", _one(_p2_sheaf_moduli), 1),
    Rule("poisson_sheaf_moduli", "thm:PoissonSurface", _one(_poisson_sheaf_moduli), 1,
         ("S is a Poisson surface", "v is primitive with c1(v) anti-invariant under the real structure",
          "H is a real ample v-generic polarization")),
]

RULES: dict[str, Rule] = {r.rule_id: r for r in _rule_list}


def apply_rule(rule_id: str, inputs: Sequence[VarietyProfile], id: str | None = None,
               **params) -> list[VarietyProfile]:
    """Run one registry rule without recording a trace (see :class:`~maxcalc.session.Session`)."""
    from .errors import UnknownName

    rule = RULES.get(rule_id)
    if rule is None:
        raise UnknownName(f"unknown rule {rule_id!r}")
    return list(rule.fn(list(inputs), id=id, **params).profiles)
