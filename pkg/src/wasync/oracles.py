"""Exhaustive reference solvers for the reduction source problems."""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ResourceError
from .instances import CnfFormula, Graph

MAX_SAT_VARS = 24
MAX_IS_VERTICES = 24
MAX_COLOR_VERTICES = 12


def sat_solve_brute(f: CnfFormula, max_vars: int = MAX_SAT_VARS) -> tuple[bool, ...] | None:
    """Lexicographically first satisfying assignment (False < True, x1 most significant)."""
    if f.n_vars > max_vars:
        raise ResourceError(f"{f.n_vars} variables exceed the brute-force limit of {max_vars}", max_vars)
    # clause j is satisfied by assignment bits `pos` set or `neg` clear
    masks = []
    for c in f.clauses:
        pos = neg = 0
        for l in c:
            if l > 0:
                pos |= 1 << (l - 1)
            else:
                neg |= 1 << (-l - 1)
        masks.append((pos, neg))
    n = f.n_vars
    for values in itertools.product((False, True), repeat=n):
        x = sum(1 << i for i, v in enumerate(values) if v)
        if all(x & pos or ~x & neg for pos, neg in masks):
            return values
    return None


def max_independent_set_brute(g: Graph, max_vertices: int = MAX_IS_VERTICES) -> tuple[int, tuple[int, ...]]:
    """Exact independence number with the lexicographically first maximum set."""
    p = g.n_vertices
    if p > max_vertices:
        raise ResourceError(f"{p} vertices exceed the brute-force limit of {max_vertices}", max_vertices)
    nb = g.neighbors_mask()
    best: list[int] = []

    def grow(chosen: list[int], candidates: int) -> None:
        nonlocal best
        if len(chosen) + candidates.bit_count() <= len(best):
            return
        if not candidates:
            best = list(chosen)
            return
        v = (candidates & -candidates).bit_length() - 1
        chosen.append(v)
        grow(chosen, candidates & ~nb[v] & ~(1 << v))
        chosen.pop()
        grow(chosen, candidates & ~(1 << v))

    grow([], (1 << p) - 1)
    return len(best), tuple(best)


def chromatic_number_brute(g: Graph, max_vertices: int = MAX_COLOR_VERTICES) -> tuple[int, tuple[int, ...]]:
    """Exact chromatic number by trying 1, 2, ... colours; returns a proper colouring."""
    p = g.n_vertices
    if p > max_vertices:
        raise ResourceError(f"{p} vertices exceed the brute-force limit of {max_vertices}", max_vertices)
    if p == 0:
        return 0, ()
    nb = g.neighbors_mask()
    for k in range(1, p + 1):
        colors = [-1] * p

        def assign(v: int, used: int) -> bool:
            if v == p:
                return True
            for c in range(min(used + 1, k)):
                if all(colors[u] != c for u in range(v) if nb[v] >> u & 1):
                    colors[v] = c
                    if assign(v + 1, max(used, c + 1)):
                        return True
            colors[v] = -1
            return False

        if assign(0, 0):
            return k, tuple(colors)
    raise AssertionError("unreachable: p colours always suffice")


def is_independent(g: Graph, vertices) -> bool:
    vs = list(vertices)
    return not any(g.adjacent(u, v) for u, v in itertools.combinations(vs, 2))


def is_proper_coloring(g: Graph, colors) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges)


MAX_ENUM_STATES = 16
MAX_ENUM_WORD_LENGTH = 16


def sync_by_word_enumeration(a, max_states: int = MAX_ENUM_STATES) -> tuple[bool, int | None, tuple[int, ...] | None]:
    """Shortest synchronizing word by enumerating words length by length.

    The set of images of Q under all words of length L is advanced one length
    at a time (vectorised over every subset); the first L whose layer holds a
    singleton is the shortest length, and a repeated layer proves there is
    none.  When ``k**L`` is small the words of that length are then listed in
    lexicographic order and folded state by state to recover the least one;
    otherwise the word is ``None``.  Returns ``(synchronizing, length, word)``.
    """
    n, k = a.n_states, a.n_letters
    if n > max_states:
        raise ResourceError(f"{n} states exceed the enumeration limit of {max_states}", max_states)
    masks = np.arange(1 << n, dtype=np.int64)
    images = []
    for x in range(k):
        img = np.zeros(1 << n, dtype=np.int64)
        for q in range(n):
            img |= ((masks >> q) & 1) << a.table[q][x]
        images.append(img)
    layer = np.array([(1 << n) - 1], dtype=np.int64)
    seen = set()
    length = 0
    while True:
        if np.any((layer & (layer - 1)) == 0):
            break
        key = layer.tobytes()
        if key in seen:
            return False, None, None
        seen.add(key)
        layer = np.unique(np.concatenate([img[layer] for img in images]))
        length += 1
    if k**length > 1 << MAX_ENUM_WORD_LENGTH:
        return True, length, None
    for w in itertools.product(range(k), repeat=length):
        ends = set()
        for q in range(n):
            for x in w:
                q = a.table[q][x]
            ends.add(q)
        if len(ends) == 1:
            return True, length, w
    raise AssertionError("a synchronizing word of this length must exist")
