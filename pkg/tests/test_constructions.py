from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxcalc import constructions as K
from maxcalc.constructions import (
    RULES,
    apply_rule,
    blow_up,
    bundle_moduli,
    flag_bundle,
    hilbert_scheme_surface,
    hilbert_square_rules,
    product,
    projective_bundle,
)
from maxcalc.errors import NotCoprime, ProfileError, RuleNotApplicable, UnknownName
from maxcalc.generators import (
    blow_up_surface_point,
    catalog,
    make_curve,
    make_custom,
    make_point,
    make_projective_space,
    make_surface,
)
from maxcalc.poincare import GradedDims, curve_moduli_poincare_rank2

P1, P2, P3 = (make_projective_space(r) for r in (1, 2, 3))
K3 = make_surface("K3", real_total=24, components=2)


def totals(p):
    return p.complex_total, p.real_total


def test_product_examples():
    e = make_curve(1, 2)
    ee = product([e, e])
    assert totals(ee) == (16, 16) and ee.maximal.yes
    dp = product([make_curve(2, 1), P1])
    assert totals(dp) == (12, 4) and dp.maximal.no
    assert product([e]) is e


def test_product_with_empty_real_locus():
    p = product([make_curve(3, 0), P1])
    assert p.real_total == 0 and p.real_nonempty.no and p.maximal.no


catalog_profiles = st.sampled_from(catalog())


@given(st.lists(catalog_profiles, min_size=1, max_size=3))
def test_product_maximality_is_bidirectional(xs):
    p = product(xs)
    if all(x.maximal.yes for x in xs):
        assert p.maximal.yes
    if any(x.maximal.no for x in xs):
        assert p.maximal.no
    assert p.complex_total == prod(x.complex_total for x in xs)


def test_product_unknown_factor():
    u = make_custom("u", 1, complex_betti=GradedDims.from_list([1, 2, 1]))
    assert not product([u, P1]).maximal.known
    assert product([u, make_curve(2, 1)]).maximal.no


def test_projective_bundle_examples():
    assert totals(projective_bundle(P1, 2)) == (4, 4)
    assert projective_bundle(P1, 1) is P1
    p = projective_bundle(make_curve(2, 3), 3)
    assert totals(p) == (18, 18) and p.maximal.yes and p.dim == 3


@given(catalog_profiles, st.integers(1, 5))
def test_projective_bundle_scales_totals(x, rank):
    p = projective_bundle(x, rank)
    assert p.complex_total == rank * x.complex_total
    assert p.real_total == rank * x.real_total
    assert p.maximal.value is x.maximal.value


def test_flag_bundle_examples():
    g = flag_bundle(make_point(), (2, 4))
    assert totals(g) == (6, 6)
    f = flag_bundle(P1, (1, 2, 3))
    assert totals(f) == (12, 12) and f.dim == 4
    assert flag_bundle(P1, (3,)) is P1
    with pytest.raises(ValueError):
        flag_bundle(P1, (2, 1))


def test_blow_up_examples():
    b = blow_up(P2, make_point(), 2)
    assert b.complex_betti == GradedDims.from_list([1, 0, 2, 0, 1])
    assert b.real_total == 4 and b.maximal.yes
    pair = make_custom("pair", 0, complex_betti=GradedDims.from_list([2]), real_nonempty="no")
    c = blow_up(P2, pair, 2)
    assert totals(c) == (5, 3) and c.maximal.no
    d = blow_up(P3, make_curve(1, 2), 2)
    assert totals(d) == (8, 8)
    with pytest.raises(ProfileError):
        blow_up(P2, make_point(), 3)


@given(catalog_profiles, catalog_profiles, st.integers(2, 4))
def test_blow_up_total_identity(x, y, c):
    ambient = product([x, make_projective_space(y.dim + c)]) if x.dim else make_projective_space(y.dim + c)
    if ambient.dim - y.dim < 2:
        return
    b = blow_up(ambient, y, ambient.dim - y.dim)
    assert b.complex_total == ambient.complex_total + (ambient.dim - y.dim - 1) * y.complex_total
    if ambient.maximal.yes and y.maximal.yes:
        assert b.maximal.yes


def test_hilbert_square_examples():
    (f,) = hilbert_square_rules(P2, "forward")
    assert totals(f) == (12, 12) and f.maximal.yes
    (k2,) = hilbert_square_rules(K3, "surface_criterion")
    assert k2.maximal.no
    (p22,) = hilbert_square_rules(P2, "surface_criterion")
    assert p22.maximal.yes and p22.complex_total == 9
    with pytest.raises(RuleNotApplicable):
        hilbert_square_rules(make_curve(2, 1), "forward")
    with pytest.raises(RuleNotApplicable):
        hilbert_square_rules(make_surface("K3", real_total=8, components=2), "surface_criterion")


def test_hilbert_square_backward():
    x2 = hilbert_square_rules(P2, "surface_criterion")[0]
    base = make_custom("S", 2, complex_betti=GradedDims.from_list([1, 0, 1, 0, 1]), real_nonempty="yes")
    out = hilbert_square_rules(x2, "backward", base=base, id="S'")
    assert [p.id for p in out] == ["S'", "S'.x12", "S'.x23", "S'.x3"]
    assert all(p.maximal.yes for p in out)
    assert out[0].real_total == 3
    assert out[3].complex_betti is None
    with pytest.raises(RuleNotApplicable):
        hilbert_square_rules(x2, "backward", base=make_custom("T", 2))


@pytest.mark.parametrize("s", [P2, make_surface("P1xP1"), make_surface("hirzebruch", n=1),
                               blow_up_surface_point(P2, "real_point")], ids=lambda p: p.id)
def test_forward_and_hilbert_scheme_agree_on_flags(s):
    (f,) = hilbert_square_rules(s, "forward")
    h = hilbert_scheme_surface(s, 2)
    assert f.maximal.value is h.maximal.value
    assert f.complex_total == s.complex_total ** 2 + s.complex_total


def test_hilbert_scheme_examples():
    h = hilbert_scheme_surface(P2, 3)
    assert h.maximal.yes and h.complex_total == 22 and h.real_total == 22
    assert hilbert_scheme_surface(P2, 1) is P2
    assert not hilbert_scheme_surface(K3, 2).maximal.known
    with pytest.raises(ProfileError):
        hilbert_scheme_surface(P3, 2)


def test_hilbert_scheme_via_tate_motive():
    s = make_custom("S", 2, tate_motive="yes")
    h = hilbert_scheme_surface(s, 3)
    assert h.maximal.yes and h.maximal.provenance == "thm:SurfaceTate"


def test_bundle_moduli_examples():
    m = bundle_moduli(make_curve(2, 3), 2, 1)
    assert m.dim == 5 and m.maximal.yes
    assert m.complex_betti == curve_moduli_poincare_rank2(2) and m.complex_betti.degree == 10
    assert bundle_moduli(make_curve(2, 1), 2, 1).maximal.no
    with pytest.raises(NotCoprime):
        bundle_moduli(make_curve(2, 3), 2, 2)
    with pytest.raises(RuleNotApplicable):
        bundle_moduli(make_curve(1, 2), 2, 1)
    assert bundle_moduli(make_curve(3, 4), 3, 1).complex_betti is None


def test_converses():
    c = make_custom("C", 1, complex_betti=GradedDims.from_list([1, 4, 1]), real_nonempty="yes")
    m = make_custom("M", 5, maximal="yes")
    assert K.bundle_moduli_converse(m, c).maximal.yes
    assert K.higgs_moduli_converse(m, c).maximal.yes
    j = make_custom("J", 2, maximal="yes")
    assert K.jacobian_converse(j, c).real_total == 6


def test_propagation_only_rules():
    c = make_curve(2, 3)
    s = K.sym_power(c, 5)
    assert s.maximal.yes and s.dim == 5 and s.complex_betti is None
    assert K.higgs_moduli(c, 2, 1).dim == 10
    assert K.parabolic_moduli(c, 2, 1, 3).dim == 5 + 3
    assert K.gamma_product(c, 3).dim == 3
    with pytest.raises(RuleNotApplicable) as e:
        K.sym_power(make_curve(2, 1), 2)
    assert "maximal" in e.value.missing


def test_jacobians():
    for g in range(1, 6):
        j = K.jacobian(make_curve(g, g + 1))
        assert totals(j) == (2 ** (2 * g), 2 ** (2 * g)) and j.maximal.yes
    assert K.jacobian(make_curve(3, 1)).maximal.no


def test_intermediate_jacobians():
    x = make_custom("X", 3, maximal="yes")
    j = K.cubic3_ij(x)
    assert j.dim == 5 and totals(j) == (1024, 1024)
    assert K.cubic3_fano(x).dim == 2
    assert K.gushel_mukai_ij(x).dim == 10
    with pytest.raises(RuleNotApplicable):
        K.cubic5_ij(x)


def test_albanese():
    a = K.albanese(make_surface("P1xP1"))
    assert a.dim == 0 and a.maximal.yes
    assert K.picard(make_custom("X", 2, h1_torsion_free="yes", maximal="yes"), q=2).dim == 2
    with pytest.raises(RuleNotApplicable):
        K.albanese(make_custom("X", 2, maximal="yes"))


def test_fulton_macpherson():
    assert K.fulton_macpherson(P2, 2).complex_total == 12
    assert K.fulton_macpherson(make_curve(1, 2), 2).complex_total == 16
    assert K.fulton_macpherson(P2, 3).complex_betti is None


def test_odd_degree_image():
    y = make_custom("Y", 1, complex_betti=GradedDims.from_list([1, 2, 1]))
    assert K.odd_degree_image(P2, y, 3).real_total == 4
    with pytest.raises(RuleNotApplicable):
        K.odd_degree_image(P2, y, 2)


@pytest.mark.parametrize("r", range(1, 6))
@pytest.mark.parametrize("c1", range(5))
@pytest.mark.parametrize("c2", range(5))
def test_p2_sheaf_grid(r, c1, c2):
    coprime = gcd(r, c1, c1 * (c1 + 1) // 2 - c2) == 1
    if coprime:
        m = K.p2_sheaf_moduli(P2, r, c1, c2)
        assert m.maximal.yes
        dim = 2 * r * c2 - (r - 1) * c1 * c1 - r * r + 1
        assert m.dim == max(dim, 0)
    else:
        with pytest.raises(NotCoprime):
            K.p2_sheaf_moduli(P2, r, c1, c2)


def test_p2_sheaf_requires_p2():
    with pytest.raises(RuleNotApplicable):
        K.p2_sheaf_moduli(make_surface("P1xP1"), 1, 0, 0)


def test_poisson():
    m = K._poisson_sheaf_moduli(P2, 2, 6)
    assert m.profiles[0].maximal.yes
    assert m.notes == ("via cor:RationalPoisson",)
    with pytest.raises(RuleNotApplicable):
        K.poisson_sheaf_moduli(K3, 1, 2)


def test_apply_rule():
    (p,) = apply_rule("product", [P1, P1], id="Q")
    assert p.id == "Q" and p.complex_total == 4
    with pytest.raises(UnknownName):
        apply_rule("nope", [P1])


def test_rule_table_citations_are_labels():
    for rule in RULES.values():
        assert rule.citation and " " not in rule.citation


@settings(max_examples=60)
@given(catalog_profiles, st.sampled_from(sorted(r for r, v in RULES.items() if v.arity == 1 and not v.generator)))
def test_single_input_rules_are_sound(x, rule_id):
    params = {
        "projective_bundle": {"rank": 3}, "flag_bundle": {"dims": (1, 3)}, "hilbert_scheme": {"n": 3},
        "bundle_moduli": {"rank": 2, "degree": 1}, "higgs_moduli": {"rank": 2, "degree": 1},
        "parabolic_moduli": {"rank": 2, "degree": 1, "points": 2}, "sym_power": {"n": 2},
        "gamma_product": {"n": 2}, "fulton_macpherson": {"n": 2}, "albanese": {}, "picard": {},
        "p2_sheaf_moduli": {"rank": 1, "c1": 0, "c2": 1}, "poisson_sheaf_moduli": {"rank": 1, "dim": 2},
    }.get(rule_id, {})
    try:
        outs = apply_rule(rule_id, [x], **params)
    except (RuleNotApplicable, ProfileError):
        return
    for p in outs:
        if p.real_total is not None and p.complex_total is not None:
            assert p.real_total <= p.complex_total
