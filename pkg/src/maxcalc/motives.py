"""Formal motives, decomposition certificates and the formality closure.

Motives are expression trees over two kinds of atoms, Tate objects ``1(n)``
and variety motives ``M(X)``, combined by sums, tensor products, twists and
"summand of".  Nothing is computed inside a motive category.  A
:class:`DecompositionCertificate` simply records ``M(X) = expr`` with a
citation, and everything downstream is closure over those records:

* Tate objects are equivariantly formal, and sums, tensors, twists and
  summands of formal motives are formal;
* a variety is formal exactly when it is maximal;
* if ``Y`` is motivated by ``{X}`` plus known-maximal varieties and ``Y`` is
  not maximal, neither is ``X``.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ._syntax import IDENT
from .errors import CertificateCycle, ScriptSyntaxError
from .profiles import Truth, VarietyProfile, assert_fact, derive_implications

__all__ = [
    "Motive",
    "Tate",
    "VarietyMotive",
    "Sum",
    "Tensor",
    "Twist",
    "SummandOf",
    "twist",
    "atoms",
    "parse_motive",
    "DecompositionCertificate",
    "CertificateStore",
    "Motivation",
    "motivated_by",
    "FormalityUpdate",
    "propagate_formality",
]

MOTIVATION = "cor:MotivationMaximal"
TENSOR = "lemma:TensorMaxMotive"


class Motive:
    __slots__ = ()

    def __add__(self, other):
        return Sum.of(self, other)

    def __mul__(self, other):
        return Tensor.of(self, other)

    def __call__(self, n: int):
        return twist(self, n)


@dataclass(frozen=True)
class Tate(Motive):
    n: int = 0

    def __str__(self):
        return f"1({self.n})"


@dataclass(frozen=True)
class VarietyMotive(Motive):
    id: str

    def __str__(self):
        return f"M({self.id})"


@dataclass(frozen=True)
class Sum(Motive):
    terms: tuple[Motive, ...]

    @classmethod
    def of(cls, *terms: Motive) -> Motive:
        flat = []
        for t in terms:
            flat.extend(t.terms if isinstance(t, Sum) else (t,))
        return flat[0] if len(flat) == 1 else cls(tuple(flat))

    def __str__(self):
        return " + ".join(map(str, self.terms))


@dataclass(frozen=True)
class Tensor(Motive):
    factors: tuple[Motive, ...]

    @classmethod
    def of(cls, *factors: Motive) -> Motive:
        flat = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, Tensor) else (f,))
        return flat[0] if len(flat) == 1 else cls(tuple(flat))

    def __str__(self):
        return " * ".join(f"({f})" if isinstance(f, Sum) else str(f) for f in self.factors)


@dataclass(frozen=True)
class Twist(Motive):
    m: int
    inner: Motive

    def __str__(self):
        if isinstance(self.inner, VarietyMotive):
            return f"{self.inner}({self.m})"
        return f"({self.inner})({self.m})"


@dataclass(frozen=True)
class SummandOf(Motive):
    parent: Motive
    certificate: str | None = None

    def __str__(self):
        return f"summand({self.parent})"


def twist(e: Motive, m: int) -> Motive:
    """``e(m)`` with nested twists composed and Tate twists absorbed."""
    if m == 0:
        return e
    if isinstance(e, Tate):
        return Tate(e.n + m)
    if isinstance(e, Twist):
        return twist(e.inner, e.m + m)
    return Twist(m, e)


def atoms(e: Motive) -> Iterable[Motive]:
    if isinstance(e, (Tate, VarietyMotive)):
        yield e
    elif isinstance(e, Sum):
        for t in e.terms:
            yield from atoms(t)
    elif isinstance(e, Tensor):
        for f in e.factors:
            yield from atoms(f)
    elif isinstance(e, Twist):
        yield from atoms(e.inner)
    elif isinstance(e, SummandOf):
        yield from atoms(e.parent)
    else:
        raise TypeError(f"not a motive: {e!r}")


def variety_atoms(e: Motive) -> list[str]:
    seen = []
    for a in atoms(e):
        if isinstance(a, VarietyMotive) and a.id not in seen:
            seen.append(a.id)
    return seen


def _bind_certificate(e: Motive, cid: str) -> Motive:
    if isinstance(e, SummandOf):
        return SummandOf(_bind_certificate(e.parent, cid), cid)
    if isinstance(e, Sum):
        return Sum(tuple(_bind_certificate(t, cid) for t in e.terms))
    if isinstance(e, Tensor):
        return Tensor(tuple(_bind_certificate(f, cid) for f in e.factors))
    if isinstance(e, Twist):
        return Twist(e.m, _bind_certificate(e.inner, cid))
    return e


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(
    rf"\s*(?:(?P<int>[-−]?\d+)|(?P<summand>summand\b)|(?P<M>M(?=\())|(?P<id>{IDENT})"
    r"|(?P<op>[()+*⊕⊗]))"
)


class _Parser:
    def __init__(self, text: str, line: int = 1, col0: int = 1):
        self.text, self.line, self.col0 = text, line, col0
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                self.fail(pos + len(text[pos:]) - len(text[pos:].lstrip()), "unexpected character")
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def fail(self, offset, msg):
        raise ScriptSyntaxError(self.line, self.col0 + offset, msg)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            self.fail(tok[2], f"expected {want!r}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def parse(self) -> Motive:
        e = self.sum()
        if self.i != len(self.toks):
            self.fail(self.peek()[2], f"unexpected {self.peek()[1]!r}")
        return e

    def sum(self):
        terms = [self.tensor()]
        while self.peek()[1] in ("+", "⊕"):
            self.i += 1
            terms.append(self.tensor())
        return Sum.of(*terms)

    def tensor(self):
        factors = [self.postfix()]
        while self.peek()[1] in ("*", "⊗"):
            self.i += 1
            factors.append(self.postfix())
        return Tensor.of(*factors)

    def postfix(self):
        e = self.atom()
        # a trailing "(n)" twists
        while (self.peek()[1] == "(" and self.i + 2 < len(self.toks)
               and self.toks[self.i + 1][0] == "int" and self.toks[self.i + 2][1] == ")"):
            self.take(value="(")
            n = int(self.take("int")[1].replace("−", "-"))
            self.take(value=")")
            e = twist(e, n)
        return e

    def atom(self):
        kind, val, off = self.peek()
        if kind == "int":
            if val != "1":
                self.fail(off, "only the unit motive 1(n) is a numeric atom")
            self.i += 1
            self.take(value="(")
            n = int(self.take("int")[1].replace("−", "-"))
            self.take(value=")")
            return Tate(n)
        if kind == "M":
            self.i += 1
            self.take(value="(")
            ident = self.take("id")[1]
            self.take(value=")")
            return VarietyMotive(ident)
        if kind == "summand":
            self.i += 1
            self.take(value="(")
            e = self.sum()
            self.take(value=")")
            return SummandOf(e)
        if val == "(":
            self.i += 1
            e = self.sum()
            self.take(value=")")
            return e
        self.fail(off, f"expected a motive, found {val or 'end of input'!r}")


def parse_motive(text: str, line: int = 1, col: int = 1) -> Motive:
    """Parse ``1(-1)``, ``M(X)``, ``M(X)(-1)``, ``+``/``⊕``, ``*``/``⊗``, ``summand(...)``."""
    return _Parser(text, line, col).parse()


# -- certificates ----------------------------------------------------------

@dataclass(frozen=True)
class DecompositionCertificate:
    subject: str
    decomposition: Motive
    citation: str | None = None
    id: str = field(default="", compare=False)

    def serialize(self) -> str:
        line = f"cert: M({self.subject}) = {self.decomposition}"
        return f"{line}  # {self.citation}" if self.citation else line


def _content_id(subject: str, decomposition: Motive) -> str:
    digest = hashlib.sha256(f"{subject}={decomposition}".encode()).hexdigest()
    return "c" + digest[:10]


class CertificateStore:
    """Certificates keyed by subject; registration keeps the subject graph acyclic."""

    def __init__(self):
        self._by_id: dict[str, DecompositionCertificate] = {}
        self._by_subject: dict[str, list[DecompositionCertificate]] = {}

    def __len__(self):
        return len(self._by_id)

    def __iter__(self):
        return iter(self._by_id.values())

    def get(self, cid: str) -> DecompositionCertificate:
        return self._by_id[cid]

    def for_subject(self, subject: str) -> list[DecompositionCertificate]:
        return list(self._by_subject.get(subject, ()))

    def _reaches(self, start: str, target: str) -> bool:
        stack, seen = [start], set()
        while stack:
            v = stack.pop()
            if v == target:
                return True
            if v in seen:
                continue
            seen.add(v)
            for c in self._by_subject.get(v, ()):
                stack.extend(variety_atoms(c.decomposition))
        return False

    def register(self, subject: str, decomposition: Motive, citation: str | None = None) -> str:
        cid = _content_id(subject, decomposition)
        if cid in self._by_id:
            return cid
        for a in variety_atoms(decomposition):
            if self._reaches(a, subject):
                raise CertificateCycle(f"M({subject}) would depend on itself through M({a})")
        cert = DecompositionCertificate(subject, _bind_certificate(decomposition, cid), citation, cid)
        self._by_id[cid] = cert
        self._by_subject.setdefault(subject, []).append(cert)
        return cid


@dataclass(frozen=True)
class Motivation:
    value: Truth
    witness: tuple[str, ...] = ()


def motivated_by(store: CertificateStore, y: str, gens: Iterable[str]) -> Motivation:
    """Is ``M(y)`` in the tensor subcategory generated by ``gens`` and Tate objects?

    ``YES`` comes with the certificate ids used; otherwise ``UNKNOWN``, never ``NO``.
    """
    gens = frozenset(gens)
    memo: dict[str, tuple[str, ...] | None] = {}

    def solve(v: str):
        if v in gens:
            return ()
        if v in memo:
            return memo[v]
        memo[v] = None
        for cert in store.for_subject(v):
            chain = [cert.id]
            for a in variety_atoms(cert.decomposition):
                sub = solve(a)
                if sub is None:
                    break
                chain.extend(c for c in sub if c not in chain)
            else:
                memo[v] = tuple(chain)
                return memo[v]
        return None

    w = solve(y)
    return Motivation(Truth.UNKNOWN) if w is None else Motivation(Truth.YES, w)


@dataclass(frozen=True)
class FormalityUpdate:
    profiles: dict[str, VarietyProfile]
    changes: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()


def _closure_vars(store: CertificateStore, y: str) -> list[str]:
    out, stack = [], [y]
    while stack:
        v = stack.pop()
        for c in store.for_subject(v):
            for a in variety_atoms(c.decomposition):
                if a not in out and a != y:
                    out.append(a)
                    stack.append(a)
    return sorted(out)


def propagate_formality(profiles: Mapping[str, VarietyProfile],
                        store: CertificateStore) -> FormalityUpdate:
    """Run the formality closure to a fixed point.

    Profiles not mentioned by any certificate are returned unchanged.
    Raises :class:`~maxcalc.errors.FactContradiction` when a derived value
    collides with a recorded one.
    """
    ps = dict(profiles)
    changes: list[str] = []
    notes: list[str] = []

    def formal() -> set[str]:
        return {k for k, p in ps.items() if p.maximal.yes}

    def set_maximal(v: str, value: Truth, src: str):
        ps[v] = derive_implications(assert_fact(ps[v], "maximal", value, src))
        changes.append(f"maximal({v}) = {value.value}  # {src}")

    subjects = sorted({c.subject for c in store})
    progress = True
    while progress:
        progress = False
        known = formal()
        for y in subjects:
            if y not in ps or ps[y].maximal.yes:
                continue
            m = motivated_by(store, y, known)
            if m.value is Truth.YES:
                set_maximal(y, Truth.YES, f"{MOTIVATION}; {TENSOR} via {','.join(m.witness)}")
                known = formal()
                progress = True
        for y in subjects:
            if y not in ps or not ps[y].maximal.no:
                continue
            known = formal()
            for x in _closure_vars(store, y):
                if x not in ps or ps[x].maximal.known:
                    continue
                m = motivated_by(store, y, known | {x})
                if m.value is Truth.YES:
                    set_maximal(x, Truth.NO,
                                f"{MOTIVATION} (contrapositive: {y} not maximal) via {','.join(m.witness)}")
                    progress = True
    # disjunctive leftovers: a non-maximal subject whose certificates need several undecided varieties
    for y in subjects:
        if y in ps and ps[y].maximal.no:
            for cert in store.for_subject(y):
                open_ = [a for a in variety_atoms(cert.decomposition)
                         if a in ps and not ps[a].maximal.known]
                if len(open_) >= 2:
                    notes.append(f"{y} not maximal: not all of {{{', '.join(sorted(open_))}}} "
                                 f"are maximal  # {MOTIVATION} via {cert.id}")
    return FormalityUpdate(ps, tuple(changes), tuple(notes))
