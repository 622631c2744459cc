import pytest
from hypothesis import given
from hypothesis import strategies as st

from wasync import InputError, careful_shortest_word, identity_dfa, partial_image
from wasync.automata import PartialDfa, StateSet, UndefinedStep
from wasync.gadgets import gadget_sat_careful, gadget_sat_matrices
from wasync.instances import CnfFormula
from wasync.matrices import BoolMatrix, bool_mul, is_triangular, positive_product_search, transition_matrix

from conftest import cnfs, dfa_and_word, dfas

X1 = CnfFormula(1, ((1,),))
X1_AND_NOT_X1 = CnfFormula(1, ((1,), (-1,)))


@st.composite
def matrices(draw, n=None):
    n = n or draw(st.integers(1, 6))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=n, max_size=n))
    return BoolMatrix.from_lists(rows)


def naive_mul(a, b):
    x, y = a.to_lists(), b.to_lists()
    n = len(x)
    return [[int(any(x[i][k] and y[k][j] for k in range(n))) for j in range(n)] for i in range(n)]


@given(st.data())
def test_bool_mul_matches_definition(data):
    a = data.draw(matrices())
    b = data.draw(matrices(a.n))
    assert bool_mul(a, b).to_lists() == naive_mul(a, b)


@given(matrices())
def test_identity_and_zero(a):
    assert BoolMatrix.identity(a.n) @ a == a
    assert BoolMatrix.zeros(a.n) @ a == BoolMatrix.zeros(a.n)


def test_dimension_mismatch():
    with pytest.raises(InputError):
        bool_mul(BoolMatrix.identity(2), BoolMatrix.identity(3))
    with pytest.raises(InputError):
        positive_product_search([BoolMatrix.identity(2), BoolMatrix.identity(3)])
    with pytest.raises(InputError):
        positive_product_search([])


def test_product_of_r_then_1_matches_partial_composition():
    a = gadget_sat_careful(X1).automaton
    m = transition_matrix(a, 2) @ transition_matrix(a, 1)
    for q in range(a.n_states):
        out = partial_image(a, [q], (2, 1))
        expected = 0 if isinstance(out, UndefinedStep) else out.mask
        assert m.rows[q] == expected


def test_transition_matrix_examples():
    a = gadget_sat_careful(X1).automaton
    m0 = transition_matrix(a, 0)
    assert m0.rows[a.state_index("s^(1)")] == 0
    assert transition_matrix(identity_dfa(4, 2), 1) == BoolMatrix.identity(4)
    with pytest.raises(InputError):
        transition_matrix(a, 3)


@given(dfas())
def test_complete_rows_have_single_one(a):
    for x in range(a.n_letters):
        assert all(r.bit_count() == 1 for r in transition_matrix(a, x).rows)


@given(dfa_and_word(max_len=5), st.data())
def test_homomorphism(aw, data):
    a, w = aw
    cut = data.draw(st.integers(0, len(w)))

    def word_matrix(u):
        m = BoolMatrix.identity(a.n_states)
        for x in u:
            m = m @ transition_matrix(a, x)
        return m

    composed = BoolMatrix(a.n_states, tuple(1 << _fold(a, q, w) for q in range(a.n_states)))
    assert word_matrix(w[:cut]) @ word_matrix(w[cut:]) == composed


def _fold(a, q, w):
    for x in w:
        q = a.table[q][x]
    return q


def test_positive_product_clause_x1():
    res = positive_product_search(gadget_sat_matrices(X1))
    assert res.status == "found"
    assert res.sequence == (2, 1, 0, 3)  # r, 1, 0, spread


def test_positive_product_unsat_exhausts():
    res = positive_product_search(gadget_sat_matrices(X1_AND_NOT_X1))
    assert res.status == "exhausted" and res.sequence is None


def test_positive_product_trivial_and_capped():
    assert positive_product_search([BoolMatrix.ones(3)]).sequence == (0,)
    res = positive_product_search(gadget_sat_matrices(X1), cap=3)
    assert res.status == "inconclusive" and not res.found


def test_positive_product_shortest_lex():
    # two permutation-free generators: a shift and an OR with identity
    shift = BoolMatrix.from_lists([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    grow = BoolMatrix.from_lists([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    res = positive_product_search([shift, grow])
    prod = BoolMatrix.identity(3)
    for i in res.sequence:
        prod = prod @ [shift, grow][i]
    assert prod.is_positive
    assert res.sequence == (1, 1)


def test_triangular_examples():
    assert is_triangular(BoolMatrix.identity(3), "upper") and is_triangular(BoolMatrix.identity(3), "lower")
    ms = gadget_sat_matrices(CnfFormula(2, ((1, -2), (2,))))
    assert [is_triangular(m, o) for m, o in zip(ms, ["upper", "upper", "lower", "lower"])] == [True] * 4
    assert not is_triangular(BoolMatrix.ones(2), "upper")
    with pytest.raises(InputError):
        is_triangular(BoolMatrix.identity(2), "diagonal")


@given(cnfs(max_vars=3, max_clauses=3))
def test_triangularity_for_every_formula(f):
    m0, m1, mr, spread = gadget_sat_matrices(f)
    assert is_triangular(m0, "upper") and is_triangular(m1, "upper")
    assert is_triangular(mr, "lower") and is_triangular(spread, "lower")


@given(cnfs(max_vars=3, max_clauses=3))
def test_positive_iff_carefully_synchronizing(f):
    careful = careful_shortest_word(gadget_sat_careful(f).automaton, cap=128).synchronizing
    res = positive_product_search(gadget_sat_matrices(f), cap=1 << 22)
    assert res.status != "inconclusive"
    assert res.found == careful


def test_bool_matrix_validation():
    with pytest.raises(InputError):
        BoolMatrix(2, (1,))
    with pytest.raises(InputError):
        BoolMatrix(2, (4, 0))
