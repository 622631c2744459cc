import pytest
from hypothesis import given

from wasync import UNDEFINED, Dfa, ParseError, PartialDfa, parse_dfa, serialize_dfa
from wasync.formats import parse_matrices, read_dfa, serialize_matrices, write_dfa
from wasync.gadgets import (
    family_subset_binary,
    family_subset_large_alphabet,
    family_tight_rank,
    gadget_chromatic_rank,
    gadget_chromatic_rank_binary,
    gadget_is_maxsync_binary,
    gadget_is_maxsync_binary_wa,
    gadget_is_maxsync_large_alphabet,
    gadget_layered_subset,
    gadget_maxsync_padding,
    gadget_sat_careful,
    gadget_sat_intersection,
    gadget_sat_matrices,
    gadget_sat_reachability,
    gadget_sat_subset_sync,
    build_a_base,
)
from wasync.generators import gen_random_dfa
from wasync.automata import StateSet
from wasync.matrices import BoolMatrix

from conftest import cnfs, dfas, graphs, partial_dfas


def test_parse_unary_example():
    a = parse_dfa("dfa 2 1\n0\n0\n")
    assert isinstance(a, Dfa)
    assert a.table == ((0,), (0,))


def test_parse_partial_example():
    a = parse_dfa("dfa 2 1 partial\n-\n0\n")
    assert isinstance(a, PartialDfa)
    assert a.table[0][0] == UNDEFINED


def test_parse_comments_and_metadata():
    text = "# hello\ndfa 2 2\n# row 0\n1 0\n1 1\nstates: p q\nletters: a b\n"
    a = parse_dfa(text)
    assert a.state_names == ("p", "q") and a.letter_names == ("a", "b")
    assert serialize_dfa(a) == "dfa 2 2\n1 0\n1 1\nstates: p q\nletters: a b\n"


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("dfa two 1\n0\n", 1),
        ("nfa 1 1\n0\n", 1),
        ("dfa 1 1 total\n0\n", 1),
        ("dfa 2 1\n0\n", 2),
        ("dfa 2 1\n0\n0\n0\n", 4),
        ("dfa 2 2\n0 1\n0\n", 3),
        ("dfa 2 1\n0\n2\n", 3),
        ("dfa 2 1\n0\n-\n", 3),
        ("dfa 2 1\n0\nx\n", 3),
        ("dfa 2 1\n0\n1\nstates: a\n", 4),
        ("dfa 2 1\n0\n1\nstates: a a\n", 4),
        ("dfa 2 1\n0\n1\nletters: x\nletters: x\n", 5),
        ("dfa 2 1\n0\nletters: x\n1\n", 4),
        ("# only a comment\n\ndfa 2 1\n0\n5\n", 5),
    ],
)
def test_malformed_inputs_report_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_dfa(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


@given(dfas())
def test_round_trip_complete(a):
    assert parse_dfa(serialize_dfa(a)) == a


@given(partial_dfas())
def test_round_trip_partial(a):
    assert parse_dfa(serialize_dfa(a)) == a


def _all_gadgets(f, g):
    a = gen_random_dfa(4, 2, 3)
    yield family_tight_rank(5, 2).automaton
    yield family_subset_binary(7, 3).automaton
    yield family_subset_large_alphabet(6, 4).automaton
    yield gadget_layered_subset(a).automaton
    yield gadget_maxsync_padding(a, StateSet.of(4, [0, 2])).automaton
    yield gadget_is_maxsync_large_alphabet(g).automaton
    yield gadget_is_maxsync_binary(g).automaton
    yield gadget_is_maxsync_binary_wa(g).automaton
    yield gadget_chromatic_rank(g).automaton
    yield gadget_chromatic_rank_binary(g).automaton
    yield gadget_sat_subset_sync(f).automaton
    yield build_a_base(f).automaton
    yield gadget_sat_careful(f).automaton
    yield gadget_sat_reachability(f).automaton
    yield from (b.automaton for b in gadget_sat_intersection(f))


@given(cnfs(max_vars=3, max_clauses=3), graphs(max_vertices=3))
def test_round_trip_on_generated_gadgets(f, g):
    for a in _all_gadgets(f, g):
        text = serialize_dfa(a)
        assert parse_dfa(text) == a
        assert serialize_dfa(parse_dfa(text)) == text


def test_file_helpers(tmp_path):
    a = family_subset_binary(5, 3).automaton
    write_dfa(a, tmp_path / "x.dfa")
    assert read_dfa(tmp_path / "x.dfa") == a


def test_matrix_format_round_trip():
    from wasync.instances import CnfFormula

    ms = gadget_sat_matrices(CnfFormula(2, ((1, -2), (2,))))
    text = serialize_matrices(ms)
    assert text.splitlines()[0] == f"mat 4 {ms[0].n}"
    assert parse_matrices(text) == ms


@pytest.mark.parametrize(
    "text, line",
    [("mat 1\n", 1), ("mat 1 2\n10\n", 2), ("mat 1 2\n10\n12\n", 3), ("mat 1 2\n10\n1\n", 3)],
)
def test_matrix_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_matrices(text)
    assert exc.value.line == line


def test_matrix_parse_accepts_spaced_digits():
    assert parse_matrices("mat 1 2\n1 1\n0 1\n") == [BoolMatrix.from_lists([[1, 1], [0, 1]])]
