import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wasync import (
    UNDEFINED,
    Dfa,
    InputError,
    NotWeaklyAcyclic,
    PartialDfa,
    StateSet,
    TopoOrder,
    UndefinedStep,
    apply,
    identity_dfa,
    image,
    is_eulerian,
    is_weakly_acyclic,
    partial_image,
    sink_states,
    topological_sort,
)
from wasync.automata import in_degrees
from wasync.gadgets import gadget_sat_careful, gadget_sat_subset_sync
from wasync.generators import gen_random_weakly_acyclic
from wasync.instances import CnfFormula

from conftest import dfa_and_word, dfas, has_cycle_dfs, partial_dfas


# ----------------------------------------------------------- construction


def test_dfa_rejects_out_of_range_target():
    with pytest.raises(InputError):
        Dfa(((0, 2), (1, 1)))


def test_dfa_rejects_undefined_unless_partial():
    with pytest.raises(InputError):
        Dfa(((UNDEFINED,), (0,)))
    assert PartialDfa(((UNDEFINED,), (0,))).table[0][0] == UNDEFINED


def test_dfa_rejects_ragged_rows_and_empty_tables():
    with pytest.raises(InputError):
        Dfa(((0, 1), (1,)))
    with pytest.raises(InputError):
        Dfa(())
    with pytest.raises(InputError):
        Dfa(((),))


@pytest.mark.parametrize("names", [("a", "a"), ("a",), ("a b", "c"), ("#x", "y"), ("p,q", "r")])
def test_dfa_rejects_bad_state_names(names):
    with pytest.raises(InputError):
        Dfa(((0,), (1,)), state_names=names)


def test_partial_dfa_converts_losslessly_when_complete():
    p = PartialDfa(((1, 0), (0, 0)))
    assert p.is_complete
    assert p.to_dfa() == Dfa(((1, 0), (0, 0)))
    assert PartialDfa.from_dfa(p.to_dfa()) == p
    with pytest.raises(InputError):
        PartialDfa(((UNDEFINED,), (0,))).to_dfa()


def test_letter_labels_default_to_digits_or_indexed_names():
    assert Dfa(((0, 0),)).letter_label(1) == "1"
    assert Dfa(((0, 0, 0),)).letter_label(2) == "a2"
    three = Dfa(((0, 0, 0),), letter_names=("x", "y", "zz"))
    assert three.render((0, 2, 1)) == "x zz y"
    assert three.parse_word("x zz y") == (0, 2, 1)


def test_parse_states_accepts_names_and_indices(fig1):
    a = fig1.automaton
    assert a.parse_states("q1,q2,s2") == StateSet.of(5, [0, 1, 3])
    assert a.parse_states("0, 1,3") == StateSet.of(5, [0, 1, 3])
    with pytest.raises(InputError):
        a.parse_states("q9")
    with pytest.raises(InputError):
        a.parse_states("5")


# ------------------------------------------------------------ state sets


def test_state_set_bounds_and_algebra():
    s = StateSet.of(4, [0, 2])
    t = StateSet.of(4, [2, 3])
    assert (s | t).members == (0, 2, 3)
    assert (s & t).members == (2,)
    assert (s - t).members == (0,)
    assert len(s) == 2 and 2 in s and 1 not in s
    assert StateSet.of(4, [2]).issubset(s)
    with pytest.raises(InputError):
        StateSet.of(4, [4])
    with pytest.raises(InputError):
        s | StateSet.of(5, [0])


# ------------------------------------------------------------------ apply


def test_apply_identity():
    assert apply(identity_dfa(2, 2), 0, (0, 1)) == 0


def test_apply_fig1_transitions(fig1):
    a = fig1.automaton
    q1, s1 = a.state_index("q1"), a.state_index("s1")
    assert a.state_label(apply(a, q1, a.parse_word("1"))) == "q2"
    assert a.state_label(apply(a, s1, a.parse_word("1"))) == "t"


def test_apply_empty_word_and_errors(fig1):
    a = fig1.automaton
    assert apply(a, 3, ()) == 3
    with pytest.raises(InputError):
        apply(a, 0, (2,))
    with pytest.raises(InputError):
        apply(a, 7, (0,))


@given(dfa_and_word(), st.data())
def test_apply_fold_coherence(aw, data):
    a, w = aw
    cut = data.draw(st.integers(0, len(w)))
    q = data.draw(st.integers(0, a.n_states - 1))
    u, v = w[:cut], w[cut:]
    assert apply(a, q, w) == apply(a, apply(a, q, u), v)


# ------------------------------------------------------------------ image


def test_image_fig1_word(fig1):
    a = fig1.automaton
    out = image(a, fig1.subset, a.parse_word("1010"))
    assert a.render_set(out) == "{s2}"


def test_image_identity_is_stable():
    a = identity_dfa(4, 2)
    s = StateSet.of(4, [1, 3])
    assert image(a, s, (0, 1, 1, 0)) == s


def test_image_sat_subset_gadget_hand_trace():
    # (x1 | ~x2) & (x2): the assignment x1 = x2 = 1 sends both clause starts to f
    b = gadget_sat_subset_sync(CnfFormula(2, ((1, -2), (2,))))
    a = b.automaton
    assert a.render_set(image(a, b.subset, (1, 1))) == "{f}"


@given(dfa_and_word(), st.data())
def test_image_shrinks_and_stays_inside_image_of_q(aw, data):
    a, w = aw
    members = data.draw(st.lists(st.integers(0, a.n_states - 1), unique=True))
    s = StateSet.of(a.n_states, members)
    out = image(a, s, w)
    assert len(out) <= len(s)
    assert out.issubset(image(a, a.all_states, w))
    assert out.members == tuple(sorted({apply(a, q, w) for q in s}))


# ----------------------------------------------------------- partial image


def test_partial_image_careful_gadget():
    a = gadget_sat_careful(CnfFormula(1, ((1,),))).automaton
    assert a.render_set(partial_image(a, a.all_states, a.parse_word("r10"))) == "{f}"
    bad = partial_image(a, a.all_states, a.parse_word("0"))
    assert isinstance(bad, UndefinedStep)
    assert (bad.position, a.state_label(bad.state), bad.letter) == (0, "s^(1)", 0)


@given(partial_dfas())
def test_partial_image_empty_word_is_identity(a):
    s = StateSet.full(a.n_states)
    assert partial_image(a, s, ()) == s


@given(partial_dfas(), st.lists(st.integers(0, 2), max_size=6))
def test_partial_image_agrees_with_state_folding(a, w):
    w = tuple(x for x in w if x < a.n_letters)
    out = partial_image(a, a.all_states, w)
    defined = True
    current = set(range(a.n_states))
    for x in w:
        if any(a.table[q][x] == UNDEFINED for q in current):
            defined = False
            break
        current = {a.table[q][x] for q in current}
    if defined:
        assert isinstance(out, StateSet) and set(out.members) == current
    else:
        assert isinstance(out, UndefinedStep)


# ------------------------------------------------------- topological sort


def test_topological_sort_fig1(fig1):
    order = topological_sort(fig1.automaton)
    assert isinstance(order, TopoOrder) and order.respects(fig1.automaton)


def test_topological_sort_swap_cycle():
    out = topological_sort(Dfa(((1,), (0,))))
    assert isinstance(out, NotWeaklyAcyclic)
    assert out.cycle == (0, 1)
    assert not out


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_identity_is_weakly_acyclic(n):
    order = topological_sort(identity_dfa(n, 3))
    assert order.sequence == tuple(range(n))


def test_topological_sort_breaks_ties_by_smallest_index():
    # 2 -> 0, others free: Kahn with a min-heap yields 1, 2, 0, 3
    a = Dfa(((0,), (1,), (0,), (3,)))
    assert topological_sort(a).sequence == (1, 2, 0, 3)


@settings(max_examples=300)
@given(partial_dfas(max_states=10))
def test_topological_sort_matches_dfs_cycle_detection(a):
    out = topological_sort(a)
    assert isinstance(out, TopoOrder) != has_cycle_dfs(a)
    if isinstance(out, TopoOrder):
        assert sorted(out.sequence) == list(range(a.n_states))
        assert out.respects(a)
    else:
        cyc = out.cycle
        assert len(cyc) >= 2 and len(set(cyc)) == len(cyc)
        for q, t in zip(cyc, cyc[1:] + cyc[:1]):
            assert t in a.table[q]


@given(st.integers(1, 10), st.integers(1, 3), st.integers(0, 10**6))
def test_generated_weakly_acyclic_sorts(n, k, seed):
    assert is_weakly_acyclic(gen_random_weakly_acyclic(n, k, seed))


# ------------------------------------------------------------ sinks, degree


def test_sink_states_examples(fig1, tight42):
    a = fig1.automaton
    assert a.render_set(sink_states(a)) == "{s2, t}"
    assert sink_states(identity_dfa(3)).members == (0, 1, 2)
    b = tight42.automaton
    assert b.render_set(sink_states(b)) == "{q3, q4}"


@given(dfas())
def test_sink_states_are_exactly_fixed_states(a):
    sinks = sink_states(a)
    for q in range(a.n_states):
        assert (q in sinks) == all(a.table[q][x] == q for x in range(a.n_letters))


def test_is_eulerian_examples(fig1):
    assert is_eulerian(identity_dfa(3, 2))[0]
    perm = Dfa(((1, 2), (2, 0), (0, 1)))
    assert is_eulerian(perm) == (True, (2, 2, 2))
    ok, degrees = is_eulerian(fig1.automaton)
    assert not ok
    assert degrees[fig1.automaton.state_index("t")] > 2


@given(dfas())
def test_in_degrees_sum_to_transition_count(a):
    assert sum(in_degrees(a)) == a.n_states * a.n_letters
