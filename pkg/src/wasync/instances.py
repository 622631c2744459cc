"""Reduction inputs: CNF formulas and undirected graphs, with DIMACS I/O.

Literals follow DIMACS: variable ``i`` (1-based) is ``i``, its negation ``-i``.
Graph vertices are 0-based internally and 1-based in DIMACS files.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import InputError, ParseError


@dataclass(frozen=True)
class CnfFormula:
    n_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.n_vars < 0:
            raise InputError("negative variable count")
        for j, c in enumerate(clauses):
            if not c:
                raise InputError(f"clause {j + 1} is empty")
            for lit in c:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise InputError(f"literal {lit} in clause {j + 1} out of range")

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)

    def smallest_var(self, j: int) -> int:
        """Smallest variable index occurring in clause ``j`` (0-based clause index)."""
        return min(abs(l) for l in self.clauses[j])

    def satisfied_by(self, j: int, var: int, value: int) -> bool:
        """Does setting ``var`` (1-based) to ``value`` satisfy clause ``j``?"""
        lit = var if value else -var
        return lit in self.clauses[j]

    def evaluate(self, assignment) -> bool:
        return all(any((l > 0) == bool(assignment[abs(l) - 1]) for l in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        out = [f"p cnf {self.n_vars} {len(self.clauses)}"]
        out.extend(" ".join(map(str, c)) + " 0" for c in self.clauses)
        return "\n".join(out) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_dimacs().encode()).hexdigest()[:16]

    def __str__(self) -> str:
        def lit(l):
            return f"x{l}" if l > 0 else f"~x{-l}"

        return " & ".join("(" + " | ".join(map(lit, c)) + ")" for c in self.clauses)


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n_vertices < 0:
            raise InputError("negative vertex count")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise InputError(f"edge {e} has an endpoint out of range")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        return cls(n, frozenset(edges))

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors_mask(self) -> list[int]:
        nb = [0] * self.n_vertices
        for u, v in self.edges:
            nb[u] |= 1 << v
            nb[v] |= 1 << u
        return nb

    def to_dimacs(self) -> str:
        out = [f"p edge {self.n_vertices} {len(self.edges)}"]
        out.extend(f"e {u + 1} {v + 1}" for u, v in sorted(self.edges))
        return "\n".join(out) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_dimacs().encode()).hexdigest()[:16]


def path_graph(p: int) -> Graph:
    return Graph.from_edges(p, [(i, i + 1) for i in range(p - 1)])


def complete_graph(p: int) -> Graph:
    return Graph.from_edges(p, itertools.combinations(range(p), 2))


def edgeless_graph(p: int) -> Graph:
    return Graph(p, frozenset())


def all_graphs(p: int):
    """Every labelled graph on ``p`` vertices."""
    pairs = list(itertools.combinations(range(p), 2))
    for bitsel in range(1 << len(pairs)):
        yield Graph.from_edges(p, [e for i, e in enumerate(pairs) if bitsel >> i & 1])


def parse_dimacs_cnf(text: str) -> CnfFormula:
    n_vars = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if n_vars is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                n_vars, _ = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed problem line {line!r}", lineno) from None
            if n_vars < 0:
                raise ParseError("negative variable count", lineno)
            continue
        if n_vars is None:
            raise ParseError("clause before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > n_vars:
                raise ParseError(f"literal {lit} exceeds {n_vars} variables", lineno)
            else:
                current.append(lit)
    if n_vars is None:
        raise ParseError("missing 'p cnf' header", 1)
    if current:
        clauses.append(tuple(current))
    return CnfFormula(n_vars, tuple(clauses))


def parse_dimacs_graph(text: str) -> Graph:
    n = None
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise ParseError(f"malformed problem line {line!r}", lineno) from None
            continue
        if parts[0] == "e":
            if n is None:
                raise ParseError("edge before 'p edge' header", lineno)
            if len(parts) != 3:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"malformed edge line {line!r}", lineno) from None
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            edges.add((min(u, v) - 1, max(u, v) - 1))
            continue
        raise ParseError(f"unrecognised line {line!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge' header", 1)
    return Graph(n, frozenset(edges))
