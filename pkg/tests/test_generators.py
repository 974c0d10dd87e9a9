import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxcalc.errors import HarnackViolation, ProfileError, UnknownName
from maxcalc.generators import (
    blow_up_surface_point,
    catalog,
    make_abelian_variety,
    make_curve,
    make_custom,
    make_point,
    make_projective_space,
    make_surface,
    surface_betti,
)
from maxcalc.profiles import SmithThom, smith_thom_check


def totals(p):
    return p.complex_total, p.real_total


@pytest.mark.parametrize("g,s,expected,maximal", [
    (2, 3, (6, 6), True),
    (2, 1, (6, 2), False),
    (1, 2, (4, 4), True),
    (3, 0, (8, 0), False),
])
def test_curves(g, s, expected, maximal):
    c = make_curve(g, s)
    assert totals(c) == expected
    assert c.maximal.yes is maximal


def test_harnack_bound():
    with pytest.raises(HarnackViolation):
        make_curve(2, 4)


@given(st.integers(0, 29).flatmap(lambda g: st.tuples(st.just(g), st.integers(0, g + 1))))
def test_curve_maximal_iff_klein_bound(gs):
    g, s = gs
    assert make_curve(g, s).maximal.yes is (s == g + 1)


def test_empty_curve():
    c = make_curve(3, 0)
    assert c.real_nonempty.no and c.maximal.no


@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_projective_spaces(r):
    p = make_projective_space(r)
    assert totals(p) == (r + 1, r + 1)
    assert p.maximal.yes and p.tate_motive.yes


def test_point():
    assert totals(make_point()) == (1, 1)


@pytest.mark.parametrize("q,l1,expected", [(1, 0, (4, 4)), (2, 0, (16, 16)), (1, 1, (4, 2)), (2, 1, (16, 8))])
def test_abelian_varieties(q, l1, expected):
    a = make_abelian_variety(q, l1)
    assert totals(a) == expected
    assert a.maximal.yes is (l1 == 0)


def test_abelian_bad_lambda():
    with pytest.raises(ValueError):
        make_abelian_variety(1, 2)


def test_surfaces():
    assert totals(make_surface("P1xP1")) == (4, 4)
    b1 = make_surface("B1")
    assert totals(b1) == (11, 11) and b1.real_components == 5 and b1.maximal.yes
    assert b1.c1_maximal.no and b1.k_maximal.no
    k3 = make_surface("K3", real_total=24, components=2)
    assert k3.maximal.yes and k3.real_components == 2
    assert make_surface("K3", real_total=8, components=2).maximal.no
    with pytest.raises(UnknownName):
        make_surface("Enriques")
    with pytest.raises(ValueError):
        make_surface("K3")


def test_rational_surfaces_are_k_maximal():
    for s in (make_surface("P2"), make_surface("P1xP1"), make_surface("hirzebruch", n=3)):
        assert s.k_maximal.yes and s.c1_maximal.yes


def test_blow_up_points():
    p2 = make_projective_space(2)
    b = blow_up_surface_point(p2, "real_point")
    assert totals(b) == (4, 4) and b.maximal.yes
    assert totals(blow_up_surface_point(b, "real_point")) == (5, 5)
    c = blow_up_surface_point(p2, "conjugate_pair")
    assert totals(c) == (5, 3) and c.maximal.no
    with pytest.raises(ValueError):
        blow_up_surface_point(p2, "nowhere")
    with pytest.raises(ProfileError):
        blow_up_surface_point(make_curve(1, 1), "real_point")


@pytest.mark.parametrize("s", [p for p in catalog() if p.dim == 2 and p.real_nonempty.yes], ids=lambda p: p.id)
def test_blow_up_gap(s):
    gap = s.complex_total - s.real_total
    r = blow_up_surface_point(s, "real_point")
    assert r.complex_total - r.real_total == gap
    c = blow_up_surface_point(s, "conjugate_pair")
    assert c.complex_total - c.real_total == gap + 2


@pytest.mark.parametrize("p", catalog(), ids=lambda p: p.id)
def test_catalog_consistent(p):
    assert smith_thom_check(p) in (SmithThom.MAXIMAL, SmithThom.STRICT)


def test_custom_rejects_unknown_fact():
    with pytest.raises(ValueError):
        make_custom("x", 1, smooth="yes")


def test_surface_betti():
    assert surface_betti("P2") == (1, 0, 1, 0, 1)
    assert surface_betti("1,0,7,0,1") == (1, 0, 7, 0, 1)
    with pytest.raises(UnknownName):
        surface_betti("Enriques")
