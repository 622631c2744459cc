"""Text formats: the DFA interchange format and the boolean matrix list format.

DFA files::

    # comment
    dfa <n> <k> [partial]
    <k tokens for state 0>
    ...
    <k tokens for state n-1>
    states: name0 name1 ...
    letters: name0 name1 ...

Tokens are target state indices, or ``-`` for an undefined transition
(partial files only).  Matrix files::

    mat <count> <n>
    <n rows of n 0/1 digits>   (repeated count times)
"""

from __future__ import annotations

from pathlib import Path

from .automata import UNDEFINED, Automaton, Dfa, PartialDfa
from .errors import ParseError
from .matrices import BoolMatrix


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_dfa(text: str) -> Automaton:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input: missing 'dfa <n> <k>' header", 1)
    lineno, header = lines[0]
    parts = header.split()
    if parts[0] != "dfa" or len(parts) not in (3, 4):
        raise ParseError(f"malformed header {header!r}", lineno)
    partial = len(parts) == 4
    if partial and parts[3] != "partial":
        raise ParseError(f"unknown header flag {parts[3]!r}", lineno)
    try:
        n, k = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError(f"malformed header {header!r}", lineno) from None
    if n < 1 or k < 1:
        raise ParseError("state and letter counts must be positive", lineno)

    rows: list[tuple[int, ...]] = []
    meta: dict[str, tuple[str, ...]] = {}
    for lineno, line in lines[1:]:
        key, sep, rest = line.partition(":")
        if sep and key.strip() in ("states", "letters"):
            key = key.strip()
            if key in meta:
                raise ParseError(f"duplicate '{key}:' line", lineno)
            names = tuple(rest.split())
            expected = n if key == "states" else k
            if len(names) != expected:
                raise ParseError(f"'{key}:' lists {len(names)} names, expected {expected}", lineno)
            if len(set(names)) != len(names):
                raise ParseError(f"'{key}:' names are not unique", lineno)
            meta[key] = names
            continue
        if meta:
            raise ParseError("transition row after metadata", lineno)
        tokens = line.split()
        if len(tokens) != k:
            raise ParseError(f"expected {k} tokens, got {len(tokens)}", lineno)
        row = []
        for tok in tokens:
            if tok == "-":
                if not partial:
                    raise ParseError("'-' in a file not declared partial", lineno)
                row.append(UNDEFINED)
                continue
            try:
                t = int(tok)
            except ValueError:
                raise ParseError(f"bad token {tok!r}", lineno) from None
            if not 0 <= t < n:
                raise ParseError(f"state index {t} out of range 0..{n - 1}", lineno)
            row.append(t)
        if len(rows) == n:
            raise ParseError(f"more than {n} transition rows", lineno)
        rows.append(tuple(row))
    if len(rows) != n:
        raise ParseError(f"expected {n} transition rows, got {len(rows)}", lines[-1][0])
    cls = PartialDfa if partial else Dfa
    try:
        return cls(tuple(rows), meta.get("letters"), meta.get("states"))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_dfa(a: Automaton) -> str:
    header = f"dfa {a.n_states} {a.n_letters}" + (" partial" if isinstance(a, PartialDfa) else "")
    out = [header]
    for row in a.table:
        out.append(" ".join("-" if t == UNDEFINED else str(t) for t in row))
    if a.state_names is not None:
        out.append("states: " + " ".join(a.state_names))
    if a.letter_names is not None:
        out.append("letters: " + " ".join(a.letter_names))
    return "\n".join(out) + "\n"


def read_dfa(path: str | Path) -> Automaton:
    return parse_dfa(Path(path).read_text(encoding="utf-8"))


def write_dfa(a: Automaton, path: str | Path) -> None:
    Path(path).write_text(serialize_dfa(a), encoding="utf-8")


def parse_matrices(text: str) -> list[BoolMatrix]:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input: missing 'mat <count> <n>' header", 1)
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "mat":
        raise ParseError(f"malformed header {header!r}", lineno)
    try:
        count, n = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError(f"malformed header {header!r}", lineno) from None
    if count < 1 or n < 1:
        raise ParseError("matrix count and dimension must be positive", lineno)
    body = lines[1:]
    if len(body) != count * n:
        where = body[-1][0] if body else lineno
        raise ParseError(f"expected {count * n} matrix rows, got {len(body)}", where)
    mats = []
    for b in range(count):
        rows = []
        for lineno, line in body[b * n:(b + 1) * n]:
            digits = line.replace(" ", "")
            if len(digits) != n or set(digits) - {"0", "1"}:
                raise ParseError(f"expected {n} binary digits, got {line!r}", lineno)
            rows.append(sum(1 << j for j, ch in enumerate(digits) if ch == "1"))
        mats.append(BoolMatrix(n, tuple(rows)))
    return mats


def serialize_matrices(ms: list[BoolMatrix]) -> str:
    if not ms:
        raise ValueError("no matrices to serialize")
    n = ms[0].n
    out = [f"mat {len(ms)} {n}"]
    for m in ms:
        if m.n != n:
            raise ValueError("matrices of different dimensions")
        out.extend("".join("1" if r >> j & 1 else "0" for j in range(n)) for r in m.rows)
    return "\n".join(out) + "\n"
