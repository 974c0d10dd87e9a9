"""Exact Poincaré-polynomial arithmetic.

:class:`GradedDims` is a polynomial in a formal degree variable ``t`` with
nonnegative integer coefficients, stored sparsely with zero entries removed so
that equal polynomials are structurally equal.  :class:`BigradedSeries` is a
power series in ``q`` with :class:`GradedDims` coefficients, truncated at an
explicit order.

Everything is exact: Python integers, no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

__all__ = [
    "GradedDims",
    "BigradedSeries",
    "add",
    "mul",
    "shift",
    "total",
    "qbinomial",
    "flag_poincare",
    "goettsche_series",
    "goettsche_coefficient",
    "curve_moduli_poincare_rank2",
    "InternalConsistencyError",
]


class InternalConsistencyError(ArithmeticError):
    """An identity that must hold exactly did not."""


def _canonical(items: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    acc: dict[int, int] = {}
    for deg, count in items:
        if deg < 0:
            raise ValueError(f"negative degree {deg}")
        acc[deg] = acc.get(deg, 0) + count
    out = []
    for deg in sorted(acc):
        c = acc[deg]
        if c < 0:
            raise ValueError(f"negative count {c} in degree {deg}")
        if c:
            out.append((deg, c))
    return tuple(out)


@dataclass(frozen=True)
class GradedDims:
    """Graded dimensions ``{degree: count}``; absent degrees have count 0."""

    coeffs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _canonical(self.coeffs))

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> GradedDims:
        return cls(tuple(d.items()))

    @classmethod
    def from_list(cls, dense: Iterable[int]) -> GradedDims:
        """``[b0, b1, ...]`` with ``b_i`` the count in degree ``i``."""
        return cls(tuple(enumerate(dense)))

    @classmethod
    def monomial(cls, degree: int, count: int = 1) -> GradedDims:
        return cls(((degree, count),))

    def __getitem__(self, degree: int) -> int:
        for d, c in self.coeffs:
            if d == degree:
                return c
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: GradedDims) -> GradedDims:
        return add(self, other)

    def __mul__(self, other: GradedDims) -> GradedDims:
        return mul(self, other)

    @property
    def degree(self) -> int:
        """Top degree; -1 for the zero polynomial."""
        return self.coeffs[-1][0] if self.coeffs else -1

    def to_list(self) -> list[int]:
        dense = [0] * (self.degree + 1)
        for d, c in self.coeffs:
            dense[d] = c
        return dense

    def total(self) -> int:
        return total(self)

    def is_palindromic(self, top: int | None = None) -> bool:
        top = self.degree if top is None else top
        return all(self[top - d] == c for d, c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in self.coeffs:
            if d == 0:
                parts.append(str(c))
            else:
                mono = "t" if d == 1 else f"t^{d}"
                parts.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(parts)


ZERO = GradedDims()
ONE = GradedDims(((0, 1),))


def add(a: GradedDims, b: GradedDims) -> GradedDims:
    return GradedDims(a.coeffs + b.coeffs)


def mul(a: GradedDims, b: GradedDims) -> GradedDims:
    acc: dict[int, int] = {}
    for i, x in a.coeffs:
        for j, y in b.coeffs:
            acc[i + j] = acc.get(i + j, 0) + x * y
    return GradedDims(tuple(acc.items()))


def shift(a: GradedDims, k: int) -> GradedDims:
    if k < 0:
        raise ValueError("shift must be nonnegative")
    return GradedDims(tuple((d + k, c) for d, c in a.coeffs))


def total(a: GradedDims) -> int:
    return sum(c for _, c in a.coeffs)


def qbinomial(k: int, n: int, step: int = 2) -> GradedDims:
    """Gaussian binomial ``[n choose k]`` as a polynomial in ``t**step``.

    With ``step=2`` this is the mod-2 Poincaré polynomial of the complex
    Grassmannian ``Gr(k, n)``; with ``step=1`` that of the real one.
    """
    if step not in (1, 2):
        raise ValueError("step must be 1 or 2")
    if not 0 <= k <= n:
        raise ValueError(f"qbinomial needs 0 <= k <= n, got k={k}, n={n}")
    # Pascal recurrence [n,k] = [n-1,k-1] + u^k [n-1,k], rows as dense lists in u
    row = [[1]]
    for m in range(1, n + 1):
        new = []
        for j in range(m + 1):
            left = row[j - 1] if j >= 1 else []
            right = row[j] if j < m else []
            coef = [0] * max(len(left), len(right) + j)
            for i, c in enumerate(left):
                coef[i] += c
            for i, c in enumerate(right):
                coef[i + j] += c
            new.append(coef)
        row = new
    return GradedDims(tuple((step * i, c) for i, c in enumerate(row[k])))


def flag_poincare(dims: Iterable[int], step: int = 2) -> GradedDims:
    """Poincaré polynomial of the partial flag variety ``Fl(d1 < ... < dk = n)``.

    The flag variety fibres as a tower of Grassmannians, so its polynomial is
    the product of Gaussian binomials ``[d_{i+1} choose d_i]``.
    """
    dims = list(dims)
    if not dims or any(d <= 0 for d in dims) or any(a >= b for a, b in zip(dims, dims[1:])):
        raise ValueError(f"invalid flag type {dims}: need strictly increasing positive dimensions")
    out = ONE
    prev = 0
    for d in dims:
        # choose prev-dimensional subspace inside a d-dimensional one
        out = mul(out, qbinomial(prev, d, step))
        prev = d
    return out


@dataclass(frozen=True)
class BigradedSeries:
    """Power series in ``q`` with :class:`GradedDims` coefficients, mod ``q**(q_trunc+1)``.

    ``clipped`` is set when the series came from multiplying operands of
    different truncation orders; the result keeps the smaller one.
    """

    q_trunc: int
    coeffs: tuple[GradedDims, ...] = ()
    clipped: bool = False

    def __post_init__(self):
        if self.q_trunc < 0:
            raise ValueError("q_trunc must be nonnegative")
        cs = tuple(self.coeffs)[: self.q_trunc + 1]
        cs = cs + (ZERO,) * (self.q_trunc + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def one(cls, q_trunc: int) -> BigradedSeries:
        return cls(q_trunc, (ONE,))

    def __getitem__(self, n: int) -> GradedDims:
        if not 0 <= n <= self.q_trunc:
            raise IndexError(f"q^{n} is beyond the truncation order {self.q_trunc}")
        return self.coeffs[n]

    def __mul__(self, other: BigradedSeries) -> BigradedSeries:
        n = min(self.q_trunc, other.q_trunc)
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = add(out[i + j], mul(a, b))
        clipped = self.clipped or other.clipped or self.q_trunc != other.q_trunc
        return BigradedSeries(n, tuple(out), clipped)

    def totals(self) -> list[int]:
        return [total(c) for c in self.coeffs]


def _factor(q_trunc: int, m: int, tdeg: int, mult: int, fermionic: bool) -> BigradedSeries:
    # (1 + t^tdeg q^m)^mult if fermionic, else (1 - t^tdeg q^m)^(-mult)
    cs = [ZERO] * (q_trunc + 1)
    k = 0
    while k * m <= q_trunc:
        c = comb(mult, k) if fermionic else comb(mult + k - 1, k)
        if c == 0:
            break
        cs[k * m] = GradedDims.monomial(k * tdeg, c)
        k += 1
    return BigradedSeries(q_trunc, tuple(cs))


@lru_cache(maxsize=256)
def goettsche_series(betti: tuple[int, int, int, int, int], q_trunc: int) -> BigradedSeries:
    """Göttsche's generating series for the Hilbert schemes of points of a surface.

    ``betti`` are ``(b0, ..., b4)``; the coefficient of ``q**n`` is the
    Poincaré polynomial of ``S^[n]`` (valid with mod-2 coefficients when the
    odd cohomology and 2-torsion vanish).
    """
    if len(betti) != 5 or any(b < 0 for b in betti):
        raise ValueError("need five nonnegative Betti numbers b0..b4")
    series = BigradedSeries.one(q_trunc)
    for m in range(1, q_trunc + 1):
        for i, b in enumerate(betti):
            if b:
                series = series * _factor(q_trunc, m, 2 * m - 2 + i, b, fermionic=bool(i % 2))
    return series


def goettsche_coefficient(b0: int, b1: int, b2: int, b3: int, b4: int, n: int) -> GradedDims:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return goettsche_series((b0, b1, b2, b3, b4), n)[n]


# signed dense polynomials, used only for the one exact division below

def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ppow(a: list[int], e: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out = _pmul(out, a)
    return out


def _pdivmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    num = list(num)
    lead = den[-1]
    if abs(lead) != 1:
        raise ValueError("divisor must be monic up to sign")
    q = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] * lead
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return q, num[: len(den) - 1]


@lru_cache(maxsize=64)
def curve_moduli_poincare_rank2(g: int) -> GradedDims:
    """Poincaré polynomial of the moduli space of stable rank-2 bundles of odd degree.

    Closed form ``(1+t)^{2g} ((1+t^3)^{2g} - t^{2g}(1+t)^{2g}) / ((1-t^2)(1-t^4))``;
    the factor ``(1+t)^{2g}`` accounts for the Jacobian (the quotient alone is
    the fixed-determinant moduli space).  Cohomology is torsion free, so the
    rational and mod-2 Betti numbers agree.
    """
    if g < 2:
        raise ValueError("genus must be at least 2")
    num = _ppow([1, 0, 0, 1], 2 * g)
    sub = [0] * (2 * g) + _ppow([1, 1], 2 * g)
    num = [x - (sub[i] if i < len(sub) else 0) for i, x in enumerate(num)]
    den = _pmul([1, 0, -1], [1, 0, 0, 0, -1])
    quo, rem = _pdivmod(num, den)
    if any(rem):
        raise InternalConsistencyError(f"closed form not divisible for g={g}: remainder {rem}")
    full = _pmul(quo, _ppow([1, 1], 2 * g))
    while full and full[-1] == 0:
        full.pop()
    dim = 4 * (g - 1) + 1
    if len(full) - 1 != 2 * dim:
        raise InternalConsistencyError(f"top degree {len(full) - 1} != 2*dim = {2 * dim}")
    return GradedDims.from_list(full)
