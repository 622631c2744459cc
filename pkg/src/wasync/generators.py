"""Seeded random instances.  The same arguments always give the same object."""

from __future__ import annotations

import itertools
import random

from .automata import Dfa
from .errors import InputError
from .instances import CnfFormula, Graph


def _check(n: int, k: int) -> None:
    if n < 1 or k < 1:
        raise InputError(f"need n, k >= 1, got n={n}, k={k}")


def gen_random_dfa(n: int, k: int, seed: int) -> Dfa:
    """Every transition uniform over all n states."""
    _check(n, k)
    rng = random.Random(seed)
    return Dfa(tuple(tuple(rng.randrange(n) for _ in range(k)) for _ in range(n)))


def gen_random_weakly_acyclic(n: int, k: int, seed: int) -> Dfa:
    """Draw a topological order, then send each transition to a state at or after its source."""
    _check(n, k)
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    table = [None] * n
    for pos, q in enumerate(order):
        table[q] = tuple(order[rng.randrange(pos, n)] for _ in range(k))
    return Dfa(tuple(table))


def gen_random_eulerian(n: int, k: int, seed: int) -> Dfa:
    """Fill the nk transition slots with a shuffled multiset holding every state k times."""
    _check(n, k)
    rng = random.Random(seed)
    targets = [q for q in range(n) for _ in range(k)]
    rng.shuffle(targets)
    return Dfa(tuple(tuple(targets[q * k:(q + 1) * k]) for q in range(n)))


def gen_random_graph(p: int, seed: int, density: float = 0.5) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(p, [e for e in itertools.combinations(range(p), 2) if rng.random() < density])


def gen_random_cnf(n: int, m: int, seed: int, width: int = 3) -> CnfFormula:
    """m clauses over n variables, each on min(width, n) distinct variables with random signs."""
    if n < 1 or m < 0:
        raise InputError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    rng = random.Random(seed)
    w = min(width, n)
    clauses = []
    for _ in range(m):
        vs = sorted(rng.sample(range(1, n + 1), w))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(n, tuple(clauses))


GENERATORS = {
    "random": gen_random_dfa,
    "weakly-acyclic": gen_random_weakly_acyclic,
    "eulerian": gen_random_eulerian,
}
