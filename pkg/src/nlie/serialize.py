"""Plain-text algebra and matrix formats.

An algebra file is line-oriented: a version line ``nla 1``, then ``field``,
``arity`` and ``dim`` declarations, then one ``bracket`` line per nonzero
table entry.  ``#`` starts a comment, blank lines are skipped.  Emission is
canonical (sorted keys, lowercase hex scalars), so parse-then-emit is the
identity on emitted files.
"""

from __future__ import annotations

import re

from .core import Algebra, make_algebra
from .errors import (
    DuplicateKey,
    NonIncreasingIndices,
    ParseError,
    ScalarOutOfRange,
    UnknownField,
)
from .gf import GF, format_scalar
from .linalg import Mat, Vec

_SCALAR_RE = re.compile(r"0[xX][0-9a-fA-F]+")
_TERM_RE = re.compile(r"e([1-9][0-9]*)")
_HEADER_ORDER = ("nla", "field", "arity", "dim")


def emit_algebra(A: Algebra) -> str:
    lines = [
        "nla 1",
        f"field {A.field.name}",
        f"arity {A.n}",
        f"dim {A.d}",
    ]
    for key, value in A.entries:
        terms = " + ".join(
            f"{format_scalar(c)} e{i}" for i, c in enumerate(value, start=1) if c
        )
        lines.append("bracket " + " ".join(str(i) for i in key) + " = " + terms)
    return "\n".join(lines) + "\n"


def _parse_scalar(line_no: int, token: str, F: GF) -> int:
    if not _SCALAR_RE.fullmatch(token):
        raise ParseError(line_no, f"expected a 0x-hex scalar, got {token!r}")
    value = int(token, 16)
    if value >= F.q:
        raise ScalarOutOfRange(
            line_no, f"scalar {format_scalar(value)} is not in GF({F.name})"
        )
    return value


def _parse_count(line_no: int, parts: list[str], what: str) -> int:
    if len(parts) != 2 or not parts[1].isdigit():
        raise ParseError(line_no, f"{what} line needs a single integer")
    return int(parts[1])


def parse_algebra(text: str) -> Algebra:
    stage = 0
    F: GF | None = None
    n = d = 0
    entries: dict[tuple[int, ...], Vec] = {}
    line_no = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        word = parts[0]
        if stage < len(_HEADER_ORDER):
            expect = _HEADER_ORDER[stage]
            if word != expect:
                raise ParseError(line_no, f"expected {expect!r} line, got {word!r}")
            if expect == "nla":
                if parts[1:] != ["1"]:
                    raise ParseError(line_no, "unsupported format version")
            elif expect == "field":
                if len(parts) != 2:
                    raise ParseError(line_no, "field line needs a single name")
                try:
                    F = GF.from_name(parts[1])
                except ValueError:
                    raise UnknownField(line_no, f"unknown field {parts[1]!r}") from None
            elif expect == "arity":
                n = _parse_count(line_no, parts, "arity")
                if n < 2:
                    raise ParseError(line_no, "arity must be at least 2")
            else:
                d = _parse_count(line_no, parts, "dim")
                if d < n:
                    raise ParseError(line_no, "dim must be at least the arity")
            stage += 1
            continue
        if word != "bracket":
            raise ParseError(line_no, f"unexpected directive {word!r}")
        assert F is not None
        try:
            eq = parts.index("=")
        except ValueError:
            raise ParseError(line_no, "bracket line needs '='") from None
        index_tokens = parts[1:eq]
        if len(index_tokens) != n:
            raise ParseError(
                line_no, f"expected {n} basis indices, got {len(index_tokens)}"
            )
        indices = []
        for tok in index_tokens:
            if not tok.isdigit():
                raise ParseError(line_no, f"bad basis index {tok!r}")
            i = int(tok)
            if not 1 <= i <= d:
                raise ParseError(line_no, f"basis index {i} outside 1..{d}")
            indices.append(i)
        key = tuple(indices)
        if any(a >= b for a, b in zip(key, key[1:])):
            raise NonIncreasingIndices(
                line_no, f"indices must be strictly increasing, got {' '.join(index_tokens)}"
            )
        if key in entries:
            raise DuplicateKey(line_no, f"duplicate bracket {' '.join(index_tokens)}")
        value = [0] * d
        chunks: list[list[str]] = []
        cur: list[str] = []
        for tok in parts[eq + 1:]:
            if tok == "+":
                if not cur:
                    raise ParseError(line_no, "misplaced '+'")
                chunks.append(cur)
                cur = []
            else:
                cur.append(tok)
        if cur:
            chunks.append(cur)
        if not chunks:
            raise ParseError(line_no, "bracket line has no right-hand side")
        for chunk in chunks:
            if len(chunk) != 2:
                raise ParseError(line_no, f"bad term {' '.join(chunk)!r}")
            c = _parse_scalar(line_no, chunk[0], F)
            m = _TERM_RE.fullmatch(chunk[1])
            if not m:
                raise ParseError(line_no, f"bad basis symbol {chunk[1]!r}")
            i = int(m.group(1))
            if i > d:
                raise ParseError(line_no, f"basis symbol e{i} outside 1..e{d}")
            value[i - 1] ^= c
        entries[key] = tuple(value)
    if stage < len(_HEADER_ORDER):
        raise ParseError(line_no + 1, f"missing {_HEADER_ORDER[stage]!r} line")
    assert F is not None
    return make_algebra(F, n, d, entries)


def emit_matrix(M: Mat) -> str:
    return "\n".join(" ".join(format_scalar(x) for x in row) for row in M) + "\n"


def parse_matrix(text: str, field: GF, d: int) -> Mat:
    """Row-major square matrix, one row per line, 0x-hex entries."""
    rows = []
    line_no = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        vals = tuple(_parse_scalar(line_no, tok, field) for tok in line.split())
        if len(vals) != d:
            raise ParseError(line_no, f"expected {d} entries per row, got {len(vals)}")
        rows.append(vals)
    if len(rows) != d:
        raise ParseError(line_no + 1, f"expected {d} rows, got {len(rows)}")
    return tuple(rows)
