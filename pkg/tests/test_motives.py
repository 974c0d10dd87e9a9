import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxcalc.errors import CertificateCycle, FactContradiction, ScriptSyntaxError
from maxcalc.generators import blow_up_surface_point, make_custom, make_point, make_projective_space, make_surface
from maxcalc.motives import (
    CertificateStore,
    SummandOf,
    Tate,
    Twist,
    VarietyMotive,
    motivated_by,
    parse_motive,
    propagate_formality,
    twist,
)
from maxcalc.profiles import Truth

import fuzz


def test_twists_compose():
    m = VarietyMotive("X")
    assert twist(twist(m, 2), -3) == Twist(-1, m)
    assert twist(twist(m, 2), -2) == m
    assert twist(Tate(-1), -1) == Tate(-2)
    assert m(1)(1) == Twist(2, m)


@pytest.mark.parametrize("text", [
    "1(0) + 1(-1) + 1(-2)",
    "M(P2) + 1(-1)",
    "summand(M(A) * (M(B) + 1(0)))",
    "(M(A) + M(B))(-1)",
    "M(X)(-1) * M(Y)",
])
def test_parse_round_trip(text):
    e = parse_motive(text)
    assert parse_motive(str(e)) == e


def test_unicode_operators():
    assert parse_motive("M(P2) ⊕ 1(−1)") == parse_motive("M(P2) + 1(-1)")
    assert parse_motive("M(A) ⊗ M(B)") == parse_motive("M(A) * M(B)")


def test_parse_errors_have_columns():
    with pytest.raises(ScriptSyntaxError) as e:
        parse_motive("M(X) + 2(1)")
    assert e.value.col == 8
    with pytest.raises(ScriptSyntaxError):
        parse_motive("M(X) +")


def test_register_and_query():
    st_ = CertificateStore()
    p2 = st_.register("P2", parse_motive("1(0) + 1(-1) + 1(-2)"), "prop:ProjBun")
    bl = st_.register("B", parse_motive("M(P2) + 1(-1)"), "prop:Blowup")
    assert p2 != bl and p2.startswith("c")
    assert st_.register("P2", parse_motive("1(0) + 1(-1) + 1(-2)")) == p2
    assert motivated_by(st_, "P2", {"pt"}).value is Truth.YES
    m = motivated_by(st_, "B", {"P2", "pt"})
    assert m.value is Truth.YES and m.witness == (bl,)
    assert motivated_by(st_, "K3", {"pt"}).value is Truth.UNKNOWN


def test_summand_nodes_reference_their_certificate():
    st_ = CertificateStore()
    cid = st_.register("F", parse_motive("summand(M(X))"))
    d = st_.get(cid).decomposition
    assert isinstance(d, SummandOf) and d.certificate == cid


def test_cycles_rejected():
    st_ = CertificateStore()
    with pytest.raises(CertificateCycle):
        st_.register("X", parse_motive("M(X) + 1(0)"))
    st_.register("A", parse_motive("M(B)"))
    st_.register("B", parse_motive("M(C)"))
    with pytest.raises(CertificateCycle):
        st_.register("C", parse_motive("summand(M(A))"))


def test_tate_certificate_rederives_maximality():
    p2 = make_custom("P2", 2)
    st_ = CertificateStore()
    st_.register("P2", parse_motive("1(0) + 1(-1) + 1(-2)"))
    upd = propagate_formality({"P2": p2}, st_)
    assert upd.profiles["P2"].maximal.yes
    assert upd.profiles["P2"].maximal.provenance.startswith("cor:MotivationMaximal")


def test_contrapositive_singleton():
    ps = {"X2": make_custom("X2", 8), "F": make_custom("F", 4, real_nonempty="yes", maximal="no")}
    st_ = CertificateStore()
    st_.register("F", parse_motive("summand(M(X2) * M(X2))"))
    upd = propagate_formality(ps, st_)
    assert upd.profiles["X2"].maximal.no


def test_contrapositive_uses_known_maximal_generators():
    ps = {"X": make_custom("X", 2), "P": make_projective_space(1, id="P"),
          "F": make_custom("F", 3, real_nonempty="yes", maximal="no")}
    st_ = CertificateStore()
    st_.register("F", parse_motive("M(X) * M(P)"))
    assert propagate_formality(ps, st_).profiles["X"].maximal.no


def test_several_open_generators_give_a_note_only():
    ps = {"A": make_custom("A", 1), "B": make_custom("B", 1),
          "F": make_custom("F", 2, real_nonempty="yes", maximal="no")}
    st_ = CertificateStore()
    st_.register("F", parse_motive("M(A) * M(B)"))
    upd = propagate_formality(ps, st_)
    assert not upd.profiles["A"].maximal.known and not upd.profiles["B"].maximal.known
    assert len(upd.notes) == 1 and "not all of {A, B}" in upd.notes[0]


def test_no_certificates_no_change():
    ps = {"X": make_custom("X", 1)}
    upd = propagate_formality(ps, CertificateStore())
    assert upd.profiles == ps and not upd.changes


def test_collision_raises():
    ps = {"P": make_custom("P", 1, maximal="no", real_nonempty="yes")}
    st_ = CertificateStore()
    st_.register("P", parse_motive("1(0) + 1(-1)"))
    with pytest.raises(FactContradiction):
        propagate_formality(ps, st_)


def test_agrees_with_constructions_on_catalog():
    p2 = make_projective_space(2, id="P2")
    b = blow_up_surface_point(p2, "real_point", id="B")
    q = make_surface("P1xP1", id="Q")
    ps = {"pt": make_point(), "P2": p2, "B": b, "Q": q}
    st_ = CertificateStore()
    st_.register("P2", parse_motive("1(0) + 1(-1) + 1(-2)"))
    st_.register("B", parse_motive("M(P2) + 1(-1)"))
    st_.register("Q", parse_motive("(1(0) + 1(-1)) * (1(0) + 1(-1))"))
    upd = propagate_formality(ps, st_)
    assert upd.profiles == ps


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_closure_matches_planted_ground_truth(seed):
    profiles, store, truth = fuzz.random_certificate_dag(random.Random(seed))
    assert fuzz.formal_after_closure(profiles, store) == truth


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_closure_is_monotone_and_idempotent(seed):
    profiles, store, _ = fuzz.random_certificate_dag(random.Random(seed))
    once = propagate_formality(profiles, store)
    for k, p in profiles.items():
        if p.maximal.known:
            assert once.profiles[k].maximal.value is p.maximal.value
    twice = propagate_formality(once.profiles, store)
    assert twice.profiles == once.profiles and not twice.changes
