"""Atomic variety profiles: points, projective spaces, curves, abelian varieties,
and a small catalog of real surfaces.

Every constructor returns a profile whose facts are closed under
:func:`~maxcalc.profiles.derive_implications`.
"""

from __future__ import annotations

from .errors import HarnackViolation, ProfileError, UnknownName
from .poincare import GradedDims, mul
from .profiles import (
    UNKNOWN,
    FACTS,
    TriState,
    Truth,
    VarietyProfile,
    assert_fact,
    derive_implications,
    settle_by_totals,
    smith_thom_check,
)

__all__ = [
    "make_point",
    "make_projective_space",
    "make_curve",
    "make_abelian_variety",
    "make_surface",
    "make_custom",
    "blow_up_surface_point",
    "SURFACE_NAMES",
    "catalog",
    "surface_betti",
]

CATALOG = "catalog"
HARNACK = "thm:SmithThom (Harnack-Klein bound)"
BLOWUP_POINT = "lemma:KMaxRationalSurface"

SURFACE_NAMES = ("P2", "P1xP1", "hirzebruch", "B1", "K3")


def _yes(src=CATALOG) -> TriState:
    return TriState(Truth.YES, src)


def _no(src=CATALOG) -> TriState:
    return TriState(Truth.NO, src)


def _finish(p: VarietyProfile) -> VarietyProfile:
    smith_thom_check(p)
    return derive_implications(settle_by_totals(p))


def make_projective_space(r: int, id: str | None = None) -> VarietyProfile:
    if r < 0:
        raise ValueError("dimension must be nonnegative")
    y = _yes()
    return _finish(VarietyProfile(
        id=id or f"P{r}",
        dim=r,
        complex_betti=GradedDims(tuple((2 * i, 1) for i in range(r + 1))),
        real_betti=GradedDims(tuple((i, 1) for i in range(r + 1))),
        real_components=1,
        real_nonempty=y,
        b1_zero=y,
        h1_torsion_free=y,
        h2_torsion_free=y,
        r_rational=y,
        tate_motive=y,
    ))


def make_point(id: str | None = None) -> VarietyProfile:
    return make_projective_space(0, id=id or "pt")


def make_curve(g: int, s: int, id: str | None = None) -> VarietyProfile:
    """Real curve of genus ``g`` whose real locus is ``s`` disjoint circles."""
    if g < 0 or s < 0:
        raise ValueError("genus and circle count must be nonnegative")
    if s > g + 1:
        raise HarnackViolation(f"a genus-{g} real curve has at most {g + 1} real circles, got {s}")
    src = f"{CATALOG}:curve"
    p = VarietyProfile(
        id=id or f"curve({g},{s})",
        dim=1,
        complex_betti=GradedDims(((0, 1), (1, 2 * g), (2, 1))),
        real_betti=GradedDims(((0, s), (1, s))) if s else None,
        real_total=None if s else 0,
        real_components=s or None,
        real_nonempty=_yes(src) if s else _no(src),
        b1_zero=_yes(src) if g == 0 else _no(src),
        h1_torsion_free=_yes(src),
        h2_torsion_free=_yes(src),
        r_rational=_yes(src) if (g == 0 and s > 0) else _no(src),
        tate_motive=_yes(src) if (g == 0 and s > 0) else UNKNOWN,
    )
    return _finish(settle_by_totals(p, HARNACK))


def make_abelian_variety(q: int, lambda1: int, id: str | None = None) -> VarietyProfile:
    """Real abelian variety of dimension ``q`` and first Comessatti characteristic ``lambda1``.

    The real locus is ``(R/Z)^q x (Z/2)^(q - lambda1)`` as a Lie group, i.e.
    ``2^(q - lambda1)`` real tori.
    """
    if q < 0 or not 0 <= lambda1 <= q:
        raise ValueError(f"need 0 <= lambda1 <= q, got q={q}, lambda1={lambda1}")
    src = f"{CATALOG}:abelian_variety"
    circle = GradedDims(((0, 1), (1, 1)))
    torus = GradedDims(((0, 1),))
    for _ in range(q):
        torus = mul(torus, circle)
    comps = 2 ** (q - lambda1)
    return _finish(VarietyProfile(
        id=id or f"A({q},{lambda1})",
        dim=q,
        complex_betti=mul(torus, torus),
        real_betti=GradedDims(tuple((d, comps * c) for d, c in torus)),
        real_components=comps,
        real_nonempty=_yes(src),
        b1_zero=_yes(src) if q == 0 else _no(src),
        h1_torsion_free=_yes(src),
        h2_torsion_free=_yes(src),
    ))


_TORUS = GradedDims(((0, 1), (1, 2), (2, 1)))


def make_surface(name: str, id: str | None = None, **params) -> VarietyProfile:
    """Catalog surfaces: ``P2``, ``P1xP1``, ``hirzebruch`` (``n``), ``B1``, ``K3``.

    ``K3`` needs ``real_total`` and, when the real locus is nonempty,
    ``components``; its maximality is decided by comparing totals.
    """
    src = f"{CATALOG}:{name}"
    y, n_ = _yes(src), _no(src)
    common = dict(real_nonempty=y, b1_zero=y, h1_torsion_free=y, h2_torsion_free=y)
    if name == "P2":
        _no_params(name, params)
        return make_projective_space(2, id=id or "P2")
    if name in ("P1xP1", "hirzebruch"):
        if name == "hirzebruch":
            n = params.pop("n", None)
            if n is None or n < 0:
                raise ValueError("hirzebruch needs n >= 0")
        _no_params(name, params)
        # real locus: torus for even n, Klein bottle for odd n; same mod-2 Betti numbers
        return _finish(VarietyProfile(
            id=id or (name if name == "P1xP1" else f"F{n}"),
            dim=2,
            complex_betti=GradedDims.from_list([1, 0, 2, 0, 1]),
            real_betti=_TORUS,
            real_components=1,
            r_rational=y,
            tate_motive=y,
            **common,
        ))
    if name == "B1":
        _no_params(name, params)
        # RP^2 plus four spheres
        real = GradedDims.from_list([1, 1, 1]) + GradedDims.from_list([4, 0, 4])
        return _finish(VarietyProfile(
            id=id or "B1",
            dim=2,
            complex_betti=GradedDims.from_list([1, 0, 9, 0, 1]),
            real_betti=real,
            real_components=5,
            r_rational=n_,
            k_maximal=TriState(Truth.NO, "rmk:LossOfMaximality"),
            c1_maximal=TriState(Truth.NO, "rmk:LossOfMaximality"),
            **common,
        ))
    if name == "K3":
        rt = params.pop("real_total", None)
        comps = params.pop("components", None)
        _no_params(name, params)
        if rt is None:
            raise ValueError("K3 needs real_total")
        if rt > 0 and comps is None:
            raise ValueError("K3 with nonempty real locus needs components")
        common["real_nonempty"] = y if rt else n_
        p = VarietyProfile(
            id=id or "K3",
            dim=2,
            complex_betti=GradedDims.from_list([1, 0, 22, 0, 1]),
            real_total=rt,
            real_components=comps if rt else None,
            r_rational=n_,
            **common,
        )
        return _finish(p)
    raise UnknownName(f"unknown surface {name!r}; known: {', '.join(SURFACE_NAMES)}")


def _no_params(name, params):
    if params:
        raise ValueError(f"{name} takes no parameters {sorted(params)}")


def make_custom(
    id: str,
    dim: int,
    complex_betti: GradedDims | None = None,
    real_total: int | None = None,
    real_betti: GradedDims | None = None,
    real_components: int | None = None,
    provenance: str = "user",
    **facts,
) -> VarietyProfile:
    """A user-described profile; ``facts`` maps fact names to yes/no."""
    p = VarietyProfile(
        id=id,
        dim=dim,
        complex_betti=complex_betti,
        real_total=real_total,
        real_betti=real_betti,
        real_components=real_components,
    )
    if real_components:
        p = assert_fact(p, "real_nonempty", Truth.YES, provenance)
    smith_thom_check(p)
    for name in FACTS:
        if name in facts:
            p = assert_fact(p, name, facts.pop(name), provenance)
    if facts:
        raise ValueError(f"unknown facts {sorted(facts)}")
    return _finish(p)


def blow_up_surface_point(p: VarietyProfile, where: str, id: str | None = None) -> VarietyProfile:
    """Blow a surface up at one real point or at a pair of conjugate points.

    A real point adds one class to ``b2`` and one to ``b1`` of the real locus
    (connected sum with ``RP^2``); a conjugate pair adds two classes to
    ``b2`` and leaves the real locus alone.
    """
    if p.dim != 2:
        raise ProfileError(f"{p.id}: blow_up_point needs a surface, got dim {p.dim}")
    if p.complex_betti is None:
        raise ProfileError(f"{p.id}: blow_up_point needs the complex Betti table")
    keep = lambda f: f if f.yes else UNKNOWN  # noqa: E731
    base = dict(
        dim=2,
        real_nonempty=p.real_nonempty,
        b1_zero=p.b1_zero,
        h1_torsion_free=p.h1_torsion_free,
        h2_torsion_free=p.h2_torsion_free,
        r_rational=p.r_rational,
    )
    if where == "real_point":
        if not p.real_nonempty.yes:
            raise ProfileError(f"{p.id}: blowing up a real point needs real_nonempty=yes")
        out = VarietyProfile(
            id=id or f"bl_pt({p.id})",
            complex_betti=p.complex_betti + GradedDims.monomial(2),
            real_betti=None if p.real_betti is None else p.real_betti + GradedDims.monomial(1),
            real_total=None if p.real_total is None else p.real_total + 1,
            real_components=p.real_components,
            c1_maximal=keep(p.c1_maximal),
            k_maximal=keep(p.k_maximal),
            tate_motive=keep(p.tate_motive),
            maximal=p.maximal,
            equivariantly_formal=p.equivariantly_formal,
            **base,
        )
    elif where == "conjugate_pair":
        out = VarietyProfile(
            id=id or f"bl_pair({p.id})",
            complex_betti=p.complex_betti + GradedDims.monomial(2, 2),
            real_betti=p.real_betti,
            real_total=p.real_total,
            real_components=p.real_components,
            **base,
        )
    else:
        raise ValueError(f"where must be real_point or conjugate_pair, got {where!r}")
    return _finish(out)


def catalog() -> list[VarietyProfile]:
    """One representative of each catalog entry, used by the CLI and the fuzzer."""
    return [
        make_point(),
        make_projective_space(1),
        make_projective_space(2),
        make_projective_space(3),
        make_curve(0, 1),
        make_curve(1, 2),
        make_curve(2, 3),
        make_curve(2, 1),
        make_curve(3, 0),
        make_abelian_variety(1, 0),
        make_abelian_variety(2, 1),
        make_surface("P1xP1"),
        make_surface("hirzebruch", n=1),
        make_surface("B1"),
        make_surface("K3", real_total=24, components=2),
        make_surface("K3", real_total=24, components=11, id="K3b"),
        make_surface("K3", real_total=8, components=2, id="K3s"),
    ]


_SURFACE_BETTI = {
    "P2": (1, 0, 1, 0, 1),
    "P1xP1": (1, 0, 2, 0, 1),
    "hirzebruch": (1, 0, 2, 0, 1),
    "B1": (1, 0, 9, 0, 1),
    "K3": (1, 0, 22, 0, 1),
}


def surface_betti(spec: str) -> tuple[int, ...]:
    """Complex Betti numbers ``b0..b4`` for a catalog name or a ``b0,b1,b2,b3,b4`` string."""
    if spec in _SURFACE_BETTI:
        return _SURFACE_BETTI[spec]
    try:
        bs = tuple(int(x) for x in spec.split(","))
    except ValueError:
        raise UnknownName(f"unknown surface {spec!r}; known: {', '.join(SURFACE_NAMES)}") from None
    if len(bs) != 5 or any(b < 0 for b in bs):
        raise ValueError(f"need five nonnegative Betti numbers, got {spec!r}")
    return bs
