"""Lexical helpers shared by scripts, traces and certificate lines."""

from __future__ import annotations

import re

IDENT = r"[A-Za-z_][A-Za-z0-9_']*(?:\.[A-Za-z0-9_']+)*"
IDENT_RE = re.compile(IDENT)
_INT_RE = re.compile(r"[-−]?\d+")


def format_value(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(format_value(x) for x in v) + ")"
    return str(v)


def parse_value(text: str):
    """``3``, ``-1``, ``(1,0,2)`` or an identifier; raises ``ValueError`` otherwise."""
    s = text.strip()
    if _INT_RE.fullmatch(s):
        return int(s.replace("−", "-"))
    if s.startswith("(") and s.endswith(")"):
        inner = s[1:-1].strip()
        return tuple(parse_value(x) for x in inner.split(",")) if inner else ()
    if IDENT_RE.fullmatch(s):
        return s
    raise ValueError(f"cannot parse value {text!r}")


def split_top(text: str, sep: str = ",") -> list[tuple[int, str]]:
    """Split on ``sep`` outside parentheses; returns ``(offset, piece)`` pairs."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced ')' at offset {i}")
        elif ch == sep and depth == 0:
            out.append((start, text[start:i]))
            start = i + 1
    if depth:
        raise ValueError("unbalanced '('")
    out.append((start, text[start:]))
    return out


def split_comment(line: str) -> tuple[str, str | None]:
    if "#" not in line:
        return line, None
    body, _, comment = line.partition("#")
    return body, comment.strip()


def format_call(name: str, inputs, params) -> str:
    ins = ", ".join(inputs)
    ps = ", ".join(f"{k}={format_value(v)}" for k, v in params)
    if ins and ps:
        return f"{name}({ins}, {ps})"
    return f"{name}({ins}{ps})"
