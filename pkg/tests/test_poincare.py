import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxcalc.poincare import (
    ONE,
    ZERO,
    BigradedSeries,
    GradedDims,
    InternalConsistencyError,
    curve_moduli_poincare_rank2,
    flag_poincare,
    goettsche_coefficient,
    goettsche_series,
    mul,
    qbinomial,
    shift,
    total,
)

from oracles import gaussian_binomial_by_subsets, goettsche_brute, partition_count, stable_moduli_poincare

polys = st.lists(st.integers(0, 5), max_size=7).map(GradedDims.from_list)


def test_canonical_form_drops_zeros():
    assert GradedDims(((3, 0), (1, 2), (1, 1))) == GradedDims(((1, 3),))
    assert GradedDims.from_list([0, 0]) == ZERO
    assert ZERO.degree == -1


def test_negative_entries_rejected():
    with pytest.raises(ValueError):
        GradedDims(((0, -1),))
    with pytest.raises(ValueError):
        GradedDims(((-1, 1),))
    with pytest.raises(ValueError):
        shift(ONE, -1)


def test_str():
    assert str(GradedDims.from_list([1, 0, 2, 0, 1])) == "1+2t^2+t^4"
    assert str(GradedDims.from_list([0, 3])) == "3t"
    assert str(ZERO) == "0"


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b + c) == mul(a, b) + mul(a, c)
    assert mul(a, ONE) == a


@given(polys, polys)
def test_total_is_a_ring_map(a, b):
    assert total(mul(a, b)) == total(a) * total(b)
    assert total(a + b) == total(a) + total(b)


@given(st.integers(0, 9).flatmap(lambda n: st.tuples(st.integers(0, n), st.just(n))))
def test_qbinomial_counts_subsets(kn):
    k, n = kn
    assert qbinomial(k, n, step=1).to_list() == gaussian_binomial_by_subsets(k, n)
    c = qbinomial(k, n, step=2)
    assert c.is_palindromic(2 * k * (n - k))
    assert c.total() == qbinomial(k, n, step=1).total()


def test_qbinomial_gr24():
    assert qbinomial(2, 4, 1) == GradedDims.from_list([1, 1, 2, 1, 1])
    assert qbinomial(2, 4).total() == 6
    with pytest.raises(ValueError):
        qbinomial(3, 2)
    with pytest.raises(ValueError):
        qbinomial(1, 2, step=3)


def test_flag_poincare():
    assert flag_poincare((1, 2, 3)).total() == 6
    assert flag_poincare((2, 4)) == qbinomial(2, 4)
    assert flag_poincare((5,)) == ONE
    for bad in [(), (2, 2), (3, 1), (0, 2)]:
        with pytest.raises(ValueError):
            flag_poincare(bad)


def test_goettsche_p2_known_coefficients():
    s = goettsche_series((1, 0, 1, 0, 1), 6)
    assert s[2] == GradedDims.from_list([1, 0, 2, 0, 3, 0, 2, 0, 1])
    assert s.totals() == [1, 3, 9, 22, 51, 108, 221]


@pytest.mark.parametrize("betti", [(1, 0, 1, 0, 1), (1, 0, 2, 0, 1), (1, 0, 22, 0, 1), (1, 2, 1, 2, 1),
                                   (1, 4, 6, 4, 1)])
@pytest.mark.parametrize("n", range(5))
def test_goettsche_matches_brute_force(betti, n):
    if sum(betti) > 10 and n > 3:
        pytest.skip("brute force too slow")
    assert goettsche_coefficient(*betti, n).to_list() == goettsche_brute(betti, n)


@given(st.integers(0, 10))
def test_point_series_counts_partitions(n):
    assert goettsche_coefficient(1, 0, 0, 0, 0, n).total() == partition_count(n)


@given(st.tuples(st.just(1), st.integers(0, 2), st.integers(0, 6), st.integers(0, 2), st.just(1))
       .filter(lambda b: b[1] == b[3]), st.integers(0, 4))
def test_goettsche_palindromic(betti, n):
    c = goettsche_coefficient(*betti, n)
    assert c.is_palindromic(4 * n)
    assert c.degree == 4 * n


def test_series_truncation():
    a = BigradedSeries.one(3)
    b = BigradedSeries.one(5)
    assert (a * b).q_trunc == 3 and (a * b).clipped
    assert not (a * a).clipped
    with pytest.raises(IndexError):
        a[4]


@pytest.mark.parametrize("g", [2, 3, 4])
def test_curve_moduli_matches_recursion(g):
    assert curve_moduli_poincare_rank2(g).to_list() == stable_moduli_poincare(2, 1, g)


@pytest.mark.parametrize("g", range(2, 9))
def test_curve_moduli_shape(g):
    p = curve_moduli_poincare_rank2(g)
    assert p.degree == 2 * (4 * (g - 1) + 1)
    assert p.is_palindromic()
    assert p[0] == 1


def test_curve_moduli_low_genus_rejected():
    with pytest.raises(ValueError):
        curve_moduli_poincare_rank2(1)
    assert issubclass(InternalConsistencyError, ArithmeticError)
