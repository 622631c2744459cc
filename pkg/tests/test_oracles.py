import itertools

import pytest
from hypothesis import given, settings

from wasync import InputError, ParseError, ResourceError, subset_shortest_sync_word
from wasync.gadgets import gadget_sat_subset_sync
from wasync.generators import gen_random_cnf, gen_random_dfa
from wasync.instances import (
    CnfFormula,
    Graph,
    all_graphs,
    complete_graph,
    edgeless_graph,
    parse_dimacs_cnf,
    parse_dimacs_graph,
    path_graph,
)
from wasync.oracles import (
    chromatic_number_brute,
    is_independent,
    is_proper_coloring,
    max_independent_set_brute,
    sat_solve_brute,
    sync_by_word_enumeration,
)

from conftest import cnfs, dfas, graphs


def test_sat_examples():
    assert sat_solve_brute(CnfFormula(2, ((1,), (2,)))) == (True, True)
    assert sat_solve_brute(CnfFormula(1, ((1,), (-1,)))) is None


def test_sat_lexicographically_first():
    # x1 | x2: (False, True) precedes (True, False)
    assert sat_solve_brute(CnfFormula(2, ((1, 2),))) == (False, True)
    assert sat_solve_brute(CnfFormula(3, ())) == (False, False, False)


def test_sat_budget():
    with pytest.raises(ResourceError):
        sat_solve_brute(CnfFormula(30, ((1,),)))


@settings(max_examples=200)
@given(cnfs(max_vars=5, max_clauses=6))
def test_sat_matches_truth_table_and_subset_gadget(f):
    first = next(
        (v for v in itertools.product((False, True), repeat=f.n_vars) if f.evaluate(v)),
        None,
    )
    assert sat_solve_brute(f) == first
    b = gadget_sat_subset_sync(f)
    assert subset_shortest_sync_word(b.automaton, b.subset).synchronizing == (first is not None)


@pytest.mark.parametrize("seed", range(10))
def test_sat_random_3cnf_n6_agrees_with_gadget(seed):
    f = gen_random_cnf(6, 12, seed)
    b = gadget_sat_subset_sync(f)
    assert subset_shortest_sync_word(b.automaton, b.subset).synchronizing == (sat_solve_brute(f) is not None)


def test_alpha_examples(p3, k3):
    assert max_independent_set_brute(p3) == (2, (0, 2))
    assert max_independent_set_brute(k3)[0] == 1
    assert max_independent_set_brute(edgeless_graph(5)) == (5, (0, 1, 2, 3, 4))


def test_chromatic_examples(p3, k3):
    assert chromatic_number_brute(p3)[0] == 2
    assert chromatic_number_brute(k3)[0] == 3
    assert chromatic_number_brute(edgeless_graph(4))[0] == 1
    assert chromatic_number_brute(Graph(0, frozenset())) == (0, ())


def test_oracle_budgets():
    with pytest.raises(ResourceError):
        max_independent_set_brute(edgeless_graph(30))
    with pytest.raises(ResourceError):
        chromatic_number_brute(edgeless_graph(13))


@settings(max_examples=150)
@given(graphs(max_vertices=7))
def test_graph_witnesses_validate(g):
    alpha, s = max_independent_set_brute(g)
    assert len(s) == alpha and is_independent(g, s)
    best = max(
        len(c)
        for r in range(g.n_vertices + 1)
        for c in itertools.combinations(range(g.n_vertices), r)
        if is_independent(g, c)
    )
    assert alpha == best
    chi, colors = chromatic_number_brute(g)
    assert is_proper_coloring(g, colors) and len(set(colors)) == chi
    if chi > 1:
        fewer = chi - 1
        assert not any(
            is_proper_coloring(g, c) for c in itertools.product(range(fewer), repeat=g.n_vertices)
        )


def test_all_graphs_counts():
    assert [sum(1 for _ in all_graphs(p)) for p in range(1, 5)] == [1, 2, 8, 64]
    assert complete_graph(4).edges == frozenset(itertools.combinations(range(4), 2))
    assert path_graph(3).edges == {(0, 1), (1, 2)}


# ------------------------------------------------------------------ DIMACS


def test_parse_cnf_example():
    f = parse_dimacs_cnf("p cnf 2 2\n1 -2 0\n2 0\n")
    assert f.n_vars == 2 and f.clauses == ((1, -2), (2,))


def test_parse_cnf_comments_multiline_and_terminator():
    f = parse_dimacs_cnf("c hi\np cnf 3 2\n1 2\n-3 0 3\n0\n%\n0\n")
    assert f.clauses == ((1, 2, -3), (3,))
    assert parse_dimacs_cnf(f.to_dimacs()) == f


@pytest.mark.parametrize(
    "text, line",
    [("1 0\n", 1), ("p cnf x 1\n", 1), ("p cnf 1 1\n2 0\n", 2), ("p cnf 1 1\n0\n", 2), ("p cnf 1 1\np cnf 1 1\n", 2),
     ("p cnf 1 1\n1 a 0\n", 2), ("", 1)],
)
def test_parse_cnf_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_dimacs_cnf(text)
    assert exc.value.line == line


def test_parse_graph_example():
    g = parse_dimacs_graph("p edge 3 2\ne 1 2\ne 2 3\n")
    assert g == path_graph(3)


def test_parse_graph_dedups_and_accepts_col():
    g = parse_dimacs_graph("c x\np col 3 3\ne 1 2\ne 2 1\ne 1 3\n")
    assert g.edges == {(0, 1), (0, 2)}
    assert parse_dimacs_graph(g.to_dimacs()) == g


@pytest.mark.parametrize(
    "text, line",
    [("p edge 3 1\ne 1 1\n", 2), ("e 1 2\n", 1), ("p edge 2 1\ne 1 3\n", 2), ("p edge 2 1\nx 1 2\n", 2),
     ("p edge 2\n", 1), ("p edge 2 1\ne 1\n", 2), ("", 1)],
)
def test_parse_graph_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_dimacs_graph(text)
    assert exc.value.line == line


def test_instance_validation():
    with pytest.raises(InputError):
        CnfFormula(1, ((2,),))
    with pytest.raises(InputError):
        CnfFormula(1, ((),))
    with pytest.raises(InputError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(InputError):
        Graph.from_edges(2, [(0, 2)])


def test_cnf_helpers():
    f = CnfFormula(3, ((2, -3), (-1,)))
    assert f.smallest_var(0) == 2
    assert f.satisfied_by(0, 3, 0) and not f.satisfied_by(0, 3, 1)
    assert str(f) == "(x2 | ~x3) & (~x1)"


# ------------------------------------------------------- word enumeration


def test_enumeration_oracle_examples():
    from wasync import Dfa, identity_dfa

    assert sync_by_word_enumeration(identity_dfa(3, 2)) == (False, None, None)
    assert sync_by_word_enumeration(Dfa(((0,),))) == (True, 0, ())
    with pytest.raises(ResourceError):
        sync_by_word_enumeration(gen_random_dfa(17, 2, 0))


@settings(max_examples=200)
@given(dfas(max_states=4, max_letters=2))
def test_enumeration_oracle_against_naive_listing(a):
    sync, length, word = sync_by_word_enumeration(a)
    # naive: every word up to length (n-1)^2, a bound that holds for automata this small
    found = None
    for L in range((a.n_states - 1) ** 2 + 1):
        for w in itertools.product(range(a.n_letters), repeat=L):
            ends = set()
            for q in range(a.n_states):
                for x in w:
                    q = a.table[q][x]
                ends.add(q)
            if len(ends) == 1:
                found = w
                break
        if found is not None:
            break
    assert sync == (found is not None)
    if sync:
        assert length == len(found) and word == found
