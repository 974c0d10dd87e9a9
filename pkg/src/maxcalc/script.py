"""The script language and its report.

A script is a sequence of lines::

    variety C = curve(genus=2, circles=3)
    variety M = bundle_moduli(C, rank=2, degree=1)
    cert: M(P) = 1(0) + 1(-1)          # prop:ProjBun
    assert maximal(M)
    assert maximal(C) = yes
    print betti(M)
    print trace(M)
    print series(P2, upto=4)

Inputs to a rule are positional identifiers; parameters are named.  ``#``
starts a comment (on a ``cert:`` line it carries the citation).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ._syntax import IDENT, IDENT_RE, format_call, parse_value, split_comment, split_top
from .constructions import RULES
from .errors import EngineError, ScriptSyntaxError, TruncationError
from .generators import surface_betti
from .motives import Motive, parse_motive, variety_atoms
from .poincare import goettsche_series
from .profiles import FACTS, Truth, VarietyProfile
from .session import Session

__all__ = [
    "VarietyStmt",
    "CertStmt",
    "AssertStmt",
    "PrintStmt",
    "Script",
    "parse",
    "format_script",
    "Report",
    "run",
    "render_betti",
    "render_series",
]


@dataclass(frozen=True)
class VarietyStmt:
    id: str
    rule: str
    inputs: tuple[str, ...]
    params: tuple[tuple[str, object], ...]
    line: int = field(default=0, compare=False)

    def __str__(self):
        return f"variety {self.id} = {format_call(self.rule, self.inputs, self.params)}"


@dataclass(frozen=True)
class CertStmt:
    subject: str
    decomposition: Motive
    citation: str | None = None
    line: int = field(default=0, compare=False)

    def __str__(self):
        s = f"cert: M({self.subject}) = {self.decomposition}"
        return f"{s}  # {self.citation}" if self.citation else s


@dataclass(frozen=True)
class AssertStmt:
    id: str
    expected: Truth = Truth.YES
    line: int = field(default=0, compare=False)

    def __str__(self):
        return f"assert maximal({self.id}) = {self.expected.value}"


@dataclass(frozen=True)
class PrintStmt:
    kind: str
    target: str
    upto: int | None = None
    line: int = field(default=0, compare=False)

    def __str__(self):
        if self.kind == "series":
            return f"print series({self.target}, upto={self.upto})"
        return f"print {self.kind}({self.target})"


Statement = VarietyStmt | CertStmt | AssertStmt | PrintStmt


@dataclass(frozen=True)
class Script:
    statements: tuple[Statement, ...]


_VARIETY = re.compile(rf"variety\s+(?P<id>{IDENT})\s*=\s*(?P<rule>\w+)\s*\((?P<args>.*)\)\s*$")
_CERT = re.compile(rf"cert\s*:\s*M\(\s*(?P<id>{IDENT})\s*\)\s*=(?P<expr>.*)$")
_ASSERT = re.compile(rf"assert\s+maximal\(\s*(?P<id>{IDENT})\s*\)\s*(?:=\s*(?P<v>\w+))?\s*$")
_PRINT = re.compile(r"print\s+(?P<kind>\w+)\((?P<args>.*)\)\s*$")


def _defined(name: str, known: set[str]) -> bool:
    # extra outputs of multi-output rules are named <out>.<suffix>
    return name in known or name.split(".", 1)[0] in known


def parse(text: str) -> Script:
    """Parse a script; errors carry line and column."""
    stmts: list[Statement] = []
    known: set[str] = set()

    for n, raw in enumerate(text.splitlines(), 1):
        body, comment = split_comment(raw)
        stripped = body.strip()
        if not stripped:
            continue
        col = len(body) - len(body.lstrip()) + 1

        def err(msg, at=None):
            raise ScriptSyntaxError(n, at or col, msg)

        def need(name, at):
            if not _defined(name, known):
                err(f"undefined variety {name!r}", at)

        if stripped.startswith("variety"):
            m = _VARIETY.match(stripped)
            if not m:
                err("expected 'variety <id> = <rule>(<args>)'")
            vid, rule = m["id"], m["rule"]
            if vid in known:
                err(f"duplicate definition of {vid!r}", col + m.start("id"))
            if rule not in RULES:
                err(f"unknown rule {rule!r}", col + m.start("rule"))
            inputs, params = [], []
            base = col + m.start("args")
            try:
                pieces = split_top(m["args"])
            except ValueError as e:
                err(str(e), base)
            for off, piece in pieces:
                at = base + off + len(piece) - len(piece.lstrip())
                piece = piece.strip()
                if not piece:
                    if len(pieces) > 1:
                        err("empty argument", at)
                    continue
                if "=" in piece:
                    k, _, v = piece.partition("=")
                    k = k.strip()
                    if not re.fullmatch(r"\w+", k):
                        err(f"bad parameter name {k!r}", at)
                    if k in dict(params):
                        err(f"repeated parameter {k!r}", at)
                    try:
                        params.append((k, parse_value(v)))
                    except ValueError as e:
                        err(str(e), at)
                else:
                    if params:
                        err("inputs must come before named parameters", at)
                    if not IDENT_RE.fullmatch(piece):
                        err(f"expected a variety name, found {piece!r}", at)
                    need(piece, at)
                    inputs.append(piece)
            known.add(vid)
            stmts.append(VarietyStmt(vid, rule, tuple(inputs), tuple(params), n))
        elif stripped.startswith("cert"):
            m = _CERT.match(stripped)
            if not m:
                err("expected 'cert: M(<id>) = <motive>'")
            need(m["id"], col + m.start("id"))
            expr = parse_motive(m["expr"], n, col + m.start("expr"))
            for a in variety_atoms(expr):
                need(a, col + m.start("expr"))
            stmts.append(CertStmt(m["id"], expr, comment or None, n))
        elif stripped.startswith("assert"):
            m = _ASSERT.match(stripped)
            if not m:
                err("expected 'assert maximal(<id>) [= yes|no|unknown]'")
            need(m["id"], col + m.start("id"))
            try:
                expected = Truth.parse(m["v"] or "yes")
            except ValueError:
                err(f"expected yes, no or unknown, found {m['v']!r}", col + m.start("v"))
            stmts.append(AssertStmt(m["id"], expected, n))
        elif stripped.startswith("print"):
            m = _PRINT.match(stripped)
            if not m:
                err("expected 'print betti(<id>) | trace(<id>) | series(<surface>, upto=<n>)'")
            kind = m["kind"]
            args = [p.strip() for _, p in split_top(m["args"])]
            at = col + m.start("args")
            if kind in ("betti", "trace"):
                if len(args) != 1:
                    err(f"{kind} takes one variety", at)
                need(args[0], at)
                stmts.append(PrintStmt(kind, args[0], None, n))
            elif kind == "series":
                upto = [a for a in args[1:] if re.fullmatch(r"upto\s*=\s*\d+", a)]
                if len(args) != 2 or not upto or not IDENT_RE.fullmatch(args[0]):
                    err("expected series(<surface>, upto=<n>)", at)
                stmts.append(PrintStmt("series", args[0], int(upto[0].split("=")[1]), n))
            else:
                err(f"unknown print target {kind!r}", col + m.start("kind"))
        else:
            err(f"unknown statement {stripped.split()[0]!r}")
    return Script(tuple(stmts))


def format_script(script: Script) -> str:
    return "".join(f"{s}\n" for s in script.statements)


# -- report ------------------------------------------------------------------

def render_betti(p: VarietyProfile) -> list[str]:
    cb = p.complex_betti
    rb = p.real_betti
    top = max(cb.degree if cb is not None else -1, rb.degree if rb is not None else -1)
    lines = [f"{p.id}: dim {p.dim}"]
    if top >= 0:
        lines.append(f"  {'deg':>4} {'complex':>9} {'real':>9}")
        for d in range(top + 1):
            c = "?" if cb is None else str(cb[d])
            r = "?" if rb is None else str(rb[d])
            lines.append(f"  {d:>4} {c:>9} {r:>9}")
    ct = "?" if p.complex_total is None else str(p.complex_total)
    rt = "?" if p.real_total is None else str(p.real_total)
    lines.append(f"  {'total':>4} {ct:>9} {rt:>9}")
    if p.real_components is not None:
        lines.append(f"  real components: {p.real_components}")
    lines.append(f"  maximal: {p.maximal}")
    for name in FACTS:
        if name in ("maximal", "equivariantly_formal"):
            continue
        f = p.fact(name)
        if f.known:
            lines.append(f"  {name}: {f}")
    return lines


def render_series(betti: tuple[int, ...], upto: int, label: str) -> list[str]:
    s = goettsche_series(tuple(betti), upto)
    lines = [f"series {label} b=({','.join(map(str, betti))}) upto q^{upto}"]
    for n in range(upto + 1):
        c = s[n]
        lines.append(f"  q^{n}: total {c.total()}  {c}")
    return lines


def _series_betti(session: Session, target: str) -> tuple[int, ...]:
    if target in session:
        p = session[target]
        if p.dim != 2 or p.complex_betti is None:
            raise EngineError(f"series needs a surface with known Betti numbers, {target} has none")
        return tuple(p.complex_betti[i] for i in range(5))
    return surface_betti(target)


@dataclass(frozen=True)
class Report:
    text: str
    exit_code: int
    session: Session = field(compare=False, repr=False)


def run(script: Script | str, strict: bool = False, q_trunc: int = 16) -> Report:
    """Execute a script in a fresh session.  Exit 0: all asserts hold, 1: some
    assert failed, 2: engine error (execution stops at the failing statement)."""
    if isinstance(script, str):
        script = parse(script)
    session = Session(strict=strict, q_trunc=q_trunc)
    out: list[str] = []
    failed = 0
    for st in script.statements:
        try:
            if isinstance(st, VarietyStmt):
                p = session.define(st.id, st.rule, st.inputs, **dict(st.params))
                out.append(f"{st.id}: maximal {p.maximal}")
            elif isinstance(st, CertStmt):
                cid = session.certify(st.subject, st.decomposition, st.citation)
                out.append(f"certificate {cid}: M({st.subject})")
            elif isinstance(st, AssertStmt):
                got = session[st.id].maximal
                ok = got.value is st.expected
                failed += not ok
                verdict = "ok" if ok else "FAILED"
                out.append(f"{st}: {verdict} (got {got})")
            elif st.kind == "betti":
                out.extend(render_betti(session[st.target]))
            elif st.kind == "trace":
                out.append(f"trace {st.target}:")
                out.extend(f"  {line}" for line in session.trace(st.target))
            else:
                if st.upto > q_trunc:
                    raise TruncationError(f"upto={st.upto} exceeds the series truncation {q_trunc}")
                out.extend(render_series(_series_betti(session, st.target), st.upto, st.target))
        except (EngineError, ValueError, ArithmeticError) as e:
            out.append(f"error at line {st.line}: {st}")
            out.append(f"  {type(e).__name__}: {e}")
            out.append("exit 2")
            return Report("\n".join(out) + "\n", 2, session)
    for note in session.disjunctions:
        out.append(f"note: {note}")
    code = 1 if failed else 0
    out.append(f"exit {code}")
    return Report("\n".join(out) + "\n", code, session)

