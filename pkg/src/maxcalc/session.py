"""A session: named profiles, the proof trace that produced them, and certificates.

Every definition goes through :meth:`Session.define`, which runs one rule
from :data:`~maxcalc.constructions.RULES` and appends a
:class:`RuleApplication` to the log.  Certificates are logged alongside, so
:meth:`Session.serialize` captures the whole state and :meth:`Session.replay`
rebuilds it.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

from ._syntax import IDENT, format_value, parse_value, split_comment, split_top
from .constructions import RULES
from .errors import (
    AssumptionError,
    DuplicateName,
    EngineError,
    RuleNotApplicable,
    ScriptSyntaxError,
    TruncationError,
    UnknownName,
)
from .motives import (
    CertificateStore,
    DecompositionCertificate,
    Motive,
    parse_motive,
    propagate_formality,
    variety_atoms,
)
from .profiles import VarietyProfile

__all__ = ["RuleApplication", "Session", "parse_trace_line"]


@dataclass(frozen=True)
class RuleApplication:
    rule_id: str
    inputs: tuple[str, ...]
    params: tuple[tuple[str, object], ...]
    citation: str
    output: str
    extra_outputs: tuple[str, ...] = ()
    assumptions: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def outputs(self) -> tuple[str, ...]:
        return (self.output,) + self.extra_outputs

    def head(self) -> str:
        ps = ", ".join(f"{k}={format_value(v)}" for k, v in self.params)
        outs = ", ".join(self.outputs)
        return f"{self.rule_id}({', '.join(self.inputs)}; {ps}) -> {outs}"

    @property
    def node_id(self) -> str:
        return "r" + hashlib.sha256(self.head().encode()).hexdigest()[:10]

    def serialize(self) -> str:
        comment = self.citation
        if self.assumptions:
            comment += " | assume: " + "; ".join(self.assumptions)
        if self.notes:
            comment += " | note: " + "; ".join(self.notes)
        return f"{self.head()}  # {comment}"


_TRACE_RE = re.compile(
    rf"^\s*(?P<rule>[a-z_0-9]+)\((?P<args>.*)\)\s*->\s*(?P<outs>{IDENT}(?:\s*,\s*{IDENT})*)\s*$")


def parse_trace_line(line: str) -> tuple[str, tuple[str, ...], dict, tuple[str, ...]]:
    """``rule(in1, in2; k=v) -> out, extra`` to ``(rule, inputs, params, outputs)``."""
    body, _ = split_comment(line)
    m = _TRACE_RE.match(body)
    if not m:
        raise ValueError(f"not a trace line: {line!r}")
    ins, _, ps = m["args"].partition(";")
    inputs = tuple(x.strip() for x in ins.split(",") if x.strip())
    params = {}
    for _, piece in split_top(ps):
        if piece.strip():
            k, _, v = piece.partition("=")
            params[k.strip()] = parse_value(v)
    outs = tuple(x.strip() for x in m["outs"].split(","))
    return m["rule"], inputs, params, outs


class Session:
    """Mutable store of profiles plus the ordered log that derived them."""

    def __init__(self, strict: bool = False, q_trunc: int = 16):
        self.strict = strict
        self.q_trunc = q_trunc
        self.profiles: dict[str, VarietyProfile] = {}
        self.log: list[RuleApplication | DecompositionCertificate] = []
        self.certificates = CertificateStore()
        self.derived: list[str] = []
        self.disjunctions: list[str] = []
        self._producer: dict[str, RuleApplication] = {}

    def __getitem__(self, id: str) -> VarietyProfile:
        try:
            return self.profiles[id]
        except KeyError:
            raise UnknownName(f"undefined variety {id!r}") from None

    def __contains__(self, id: str) -> bool:
        return id in self.profiles

    def define(self, out: str, rule_id: str, inputs=(), **params) -> VarietyProfile:
        rule = RULES.get(rule_id)
        if rule is None:
            raise UnknownName(f"unknown rule {rule_id!r}")
        if out in self.profiles:
            raise DuplicateName(f"{out!r} is already defined")
        inputs = tuple(inputs)
        profiles = [self[i] for i in inputs]
        if rule.arity is not None and len(inputs) != rule.arity:
            raise RuleNotApplicable(rule_id, f"{rule.arity} input(s), got {len(inputs)}")
        if rule.arity is None and not inputs:
            raise RuleNotApplicable(rule_id, "at least one input")
        try:
            rule.signature.bind(profiles, id=out, **params)
        except TypeError as e:
            raise RuleNotApplicable(rule_id, f"valid parameters ({e})") from None
        if rule_id == "hilbert_scheme" and params.get("n", 0) > self.q_trunc:
            raise TruncationError(f"n={params['n']} exceeds the series truncation {self.q_trunc}")
        if self.strict and rule.assumptions:
            raise AssumptionError(f"{rule_id}: unchecked assumption: {'; '.join(rule.assumptions)}")
        result = rule.fn(profiles, id=out, **params)
        outs = [p.id for p in result.profiles]
        for o in outs[1:]:
            if o in self.profiles:
                raise DuplicateName(f"{o!r} is already defined")
        app = RuleApplication(
            rule_id=rule_id,
            inputs=inputs,
            params=tuple(params.items()),
            citation=rule.citation,
            output=outs[0],
            extra_outputs=tuple(outs[1:]),
            assumptions=rule.assumptions,
            notes=result.notes + self._extra_notes(rule_id, profiles),
        )
        for p in result.profiles:
            self.profiles[p.id] = p
            self._producer[p.id] = app
        self.log.append(app)
        if len(self.certificates):
            self.propagate()
        return self.profiles[outs[0]]

    @staticmethod
    def _extra_notes(rule_id, profiles) -> tuple[str, ...]:
        if rule_id == "hilbert_square_criterion":
            return ("the input is additionally required to be maximal",)
        return ()

    def certify(self, subject: str, decomposition: Motive | str,
                citation: str | None = None) -> str:
        if isinstance(decomposition, str):
            decomposition = parse_motive(decomposition)
        for v in [subject, *variety_atoms(decomposition)]:
            self[v]
        cid = self.certificates.register(subject, decomposition, citation)
        cert = self.certificates.get(cid)
        if cert not in self.log:
            self.log.append(cert)
        self.propagate()
        return cid

    def propagate(self) -> tuple[str, ...]:
        upd = propagate_formality(self.profiles, self.certificates)
        self.profiles = upd.profiles
        self.derived.extend(upd.changes)
        for n in upd.notes:
            if n not in self.disjunctions:
                self.disjunctions.append(n)
        return upd.changes

    # -- traces --------------------------------------------------------------

    def ancestors(self, id: str) -> set[str]:
        self[id]
        seen, stack = set(), [id]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            app = self._producer.get(v)
            if app is not None:
                stack.extend(app.inputs)
                stack.extend(app.outputs)
            for cert in self.certificates.for_subject(v):
                stack.extend(variety_atoms(cert.decomposition))
            for cert in self.certificates:
                if v in variety_atoms(cert.decomposition) and self._touches(cert.subject, v):
                    stack.append(cert.subject)
        return seen

    def _touches(self, subject: str, v: str) -> bool:
        # a certificate feeds v's facts when the contrapositive ran from subject to v
        p = self.profiles[v]
        return p.maximal.provenance is not None and f": {subject} not maximal)" in p.maximal.provenance

    def trace(self, id: str) -> list[str]:
        keep = self.ancestors(id)
        lines = []
        for item in self.log:
            if isinstance(item, RuleApplication):
                if keep & set(item.outputs):
                    lines.append(item.serialize())
            elif item.subject in keep:
                lines.append(item.serialize())
        for d in self.derived:
            if any(f"maximal({v})" in d for v in keep):
                lines.append(f"derived: {d}")
        for n in self.disjunctions:
            if n.split(" ", 1)[0] in keep:
                lines.append(f"note: {n}")
        return lines

    def serialize(self) -> str:
        return "".join(item.serialize() + "\n" for item in self.log)

    @classmethod
    def replay(cls, text: str, strict: bool = False, q_trunc: int = 16) -> Session:
        s = cls(strict=strict, q_trunc=q_trunc)
        for n, raw in enumerate(text.splitlines(), 1):
            body, comment = split_comment(raw)
            if not body.strip():
                continue
            if body.lstrip().startswith("cert:"):
                stmt = body.split(":", 1)[1]
                lhs, eq, rhs = stmt.partition("=")
                m = re.fullmatch(rf"\s*M\(({IDENT})\)\s*", lhs)
                if not eq or not m:
                    raise ScriptSyntaxError(n, 1, "malformed certificate line")
                s.certify(m[1], parse_motive(rhs, n), comment)
                continue
            try:
                rule, inputs, params, outs = parse_trace_line(body)
            except ValueError as e:
                raise ScriptSyntaxError(n, 1, str(e)) from None
            s.define(outs[0], rule, inputs, **params)
            got = s._producer[outs[0]].outputs
            if got != outs:
                raise EngineError(f"line {n}: replay produced outputs {got}, trace says {outs}")
        return s
