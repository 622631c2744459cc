import itertools

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from wasync import Dfa, PartialDfa, UNDEFINED
from wasync.gadgets import family_subset_binary, family_tight_rank
from wasync.instances import CnfFormula, Graph

settings.register_profile("default", deadline=None)
settings.load_profile("default")


@st.composite
def dfas(draw, max_states=6, max_letters=3, min_letters=1):
    n = draw(st.integers(1, max_states))
    k = draw(st.integers(min_letters, max_letters))
    rows = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=k, max_size=k), min_size=n, max_size=n))
    return Dfa(tuple(tuple(r) for r in rows))


@st.composite
def partial_dfas(draw, max_states=6, max_letters=3):
    n = draw(st.integers(1, max_states))
    k = draw(st.integers(1, max_letters))
    cell = st.integers(UNDEFINED, n - 1)
    rows = draw(st.lists(st.lists(cell, min_size=k, max_size=k), min_size=n, max_size=n))
    return PartialDfa(tuple(tuple(r) for r in rows))


@st.composite
def dfa_and_word(draw, max_states=6, max_letters=3, max_len=8):
    a = draw(dfas(max_states, max_letters))
    w = tuple(draw(st.lists(st.integers(0, a.n_letters - 1), max_size=max_len)))
    return a, w


@st.composite
def graphs(draw, max_vertices=6):
    p = draw(st.integers(1, max_vertices))
    pairs = list(itertools.combinations(range(p), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(p, [e for e, c in zip(pairs, chosen) if c])


@st.composite
def cnfs(draw, max_vars=4, max_clauses=4):
    n = draw(st.integers(1, max_vars))
    m = draw(st.integers(1, max_clauses))
    clauses = []
    for _ in range(m):
        vs = draw(st.lists(st.integers(1, n), min_size=1, max_size=min(3, n), unique=True))
        signs = draw(st.lists(st.booleans(), min_size=len(vs), max_size=len(vs)))
        clauses.append(tuple(v if s else -v for v, s in zip(sorted(vs), signs)))
    return CnfFormula(n, tuple(clauses))


def has_cycle_dfs(a) -> bool:
    """Independent cycle detection (colouring DFS) over non-self-loop transitions."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = [WHITE] * a.n_states

    def visit(q):
        colour[q] = GREY
        for t in a.table[q]:
            if t == UNDEFINED or t == q:
                continue
            if colour[t] == GREY or (colour[t] == WHITE and visit(t)):
                return True
        colour[q] = BLACK
        return False

    return any(colour[q] == WHITE and visit(q) for q in range(a.n_states))


@pytest.fixture
def fig1():
    return family_subset_binary(5, 3)


@pytest.fixture
def tight42():
    return family_tight_rank(4, 2)


@pytest.fixture
def identity2():
    return Dfa(((0, 0), (1, 1)))


@pytest.fixture
def p3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def k3():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
