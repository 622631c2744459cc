"""Synchronization engines.

Exact engines run breadth-first search over images of a state set.  Each
BFS level is expanded in discovery order with letters in index order, so the
first word found for any image is the shortest one and, among those, the
lexicographically smallest.  Searches are bounded by a visited-set budget;
running out raises :class:`ResourceError`, which callers must treat as
"unknown", never as "no".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .automata import (
    UNDEFINED,
    Automaton,
    Dfa,
    NotWeaklyAcyclic,
    PartialDfa,
    StateSet,
    TopoOrder,
    Word,
    bits,
    is_eulerian,
    sink_states,
    topological_sort,
)
from .budget import PRODUCT_STATES, STATE_CAPACITY, SUBSET_TESTS, VISITED_SETS, budget
from .errors import InputError, ResourceError


@dataclass(frozen=True)
class SyncResult:
    synchronizing: bool
    witness: Word | None = None
    target: int | None = None
    explored: int = 0

    @property
    def length(self) -> int | None:
        return None if self.witness is None else len(self.witness)


@dataclass(frozen=True)
class RankResult:
    rank: int
    witness: Word
    final_image: StateSet


@dataclass(frozen=True)
class MaxSyncSetResult:
    set: StateSet
    witness: Word
    target: int

    @property
    def size(self) -> int:
        return len(self.set)


@dataclass(frozen=True)
class ReachResult:
    reachable: bool
    witness: Word | None = None
    explored: int = 0


@dataclass(frozen=True)
class IntersectionResult:
    nonempty: bool
    witness: Word | None = None
    explored: int = 0


Step = Callable[[int, int], "int | None"]
Parents = dict  # mask -> (parent mask, letter) | None


def _word(parents: Parents, key) -> Word:
    out = []
    link = parents[key]
    while link is not None:
        key, letter = link
        out.append(letter)
        link = parents[key]
    return tuple(reversed(out))


def _bfs(start, n_letters: int, step: Step, goal, limit: int, what: str):
    """Return ``(first goal key or None, parents)``; ``goal=None`` explores everything."""
    parents: Parents = {start: None}
    if goal is not None and goal(start):
        return start, parents
    frontier = [start]
    while frontier:
        nxt = []
        for key in frontier:
            for letter in range(n_letters):
                new = step(key, letter)
                if new is None or new in parents:
                    continue
                parents[new] = (key, letter)
                if goal is not None and goal(new):
                    return new, parents
                if len(parents) > limit:
                    raise ResourceError(f"{what}: visited-set budget of {limit} exhausted", limit)
                nxt.append(new)
        frontier = nxt
    return None, parents


def _singleton(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


def _check_capacity(a: Automaton, cap: int | None) -> None:
    cap = STATE_CAPACITY if cap is None else cap
    if a.n_states > cap:
        raise ResourceError(f"{a.n_states} states exceed the whole-state-set search capacity of {cap}", cap)


def _require_complete(a: Automaton) -> None:
    if isinstance(a, PartialDfa):
        raise InputError("this engine needs a complete automaton; see careful_shortest_word")


def _sync_result(a: Automaton, found, parents) -> SyncResult:
    if found is None:
        return SyncResult(False, explored=len(parents))
    return SyncResult(True, _word(parents, found), found.bit_length() - 1, len(parents))


# ---------------------------------------------------------------- pair graph


def _pair_merge_table(a: Dfa) -> dict[tuple[int, int], tuple[int, tuple[int, int] | None]]:
    """Backward BFS from the diagonal of the pair automaton.

    Maps each mergeable pair ``(p, q)``, ``p < q``, to ``(letter, successor)``
    along a shortest merging word; ``successor`` is None once merged.
    """
    n, k = a.n_states, a.n_letters
    pre = [[[] for _ in range(n)] for _ in range(k)]
    for q, row in enumerate(a.table):
        for x, t in enumerate(row):
            pre[x][t].append(q)
    solved: dict[tuple[int, int], tuple[int, tuple[int, int] | None]] = {}
    queue: deque[tuple[int, int]] = deque()
    for x in range(k):
        for t in range(n):
            srcs = pre[x][t]
            for i, p in enumerate(srcs):
                for q in srcs[i + 1:]:
                    if (p, q) not in solved:
                        solved[(p, q)] = (x, None)
                        queue.append((p, q))
    while queue:
        u, v = queue.popleft()
        for x in range(k):
            for p in pre[x][u]:
                for q in pre[x][v]:
                    pair = (p, q) if p < q else (q, p)
                    if p != q and pair not in solved:
                        solved[pair] = (x, (u, v))
                        queue.append(pair)
    return solved


def _pair_word(a: Dfa, solved, p: int, q: int) -> Word:
    word = []
    pair = (min(p, q), max(p, q))
    while True:
        x, nxt = solved[pair]
        word.append(x)
        if nxt is None:
            return tuple(word)
        pair = nxt


def pair_sync_graph(a: Dfa) -> list[int]:
    """``adj[p]`` is the mask of states ``q != p`` such that {p, q} is synchronizing."""
    _require_complete(a)
    adj = [0] * a.n_states
    for p, q in _pair_merge_table(a):
        adj[p] |= 1 << q
        adj[q] |= 1 << p
    return adj


def is_synchronizing(a: Dfa) -> SyncResult:
    """Polynomial pair test; the witness comes from greedy pair merging and need not be shortest."""
    _require_complete(a)
    n = a.n_states
    solved = _pair_merge_table(a)
    if len(solved) != n * (n - 1) // 2:
        return SyncResult(False, explored=len(solved))
    step = a._stepper.step
    current = (1 << n) - 1
    word: list[int] = []
    while not _singleton(current):
        members = bits(current)
        p, q = next(members), next(members)
        u = _pair_word(a, solved, p, q)
        for x in u:
            current = step(current, x)
        word.extend(u)
    return SyncResult(True, tuple(word), current.bit_length() - 1, len(solved))


# ------------------------------------------------------------ exact searches


def shortest_sync_word(a: Dfa, cap: int | None = None, limit: int | None = None) -> SyncResult:
    """Shortest (then lexicographically least) synchronizing word, by BFS over images of Q."""
    _require_complete(a)
    _check_capacity(a, cap)
    limit = budget(VISITED_SETS) if limit is None else limit
    found, parents = _bfs(
        (1 << a.n_states) - 1, a.n_letters, a._stepper.step, _singleton, limit, "shortest_sync_word"
    )
    return _sync_result(a, found, parents)


def subset_shortest_sync_word(a: Dfa, s: StateSet | Iterable[int], limit: int | None = None) -> SyncResult:
    """Shortest word mapping ``s`` to a single state; also decides whether ``s`` is synchronizing."""
    _require_complete(a)
    mask = a._as_mask(s)
    if not mask:
        raise InputError("the state set must be nonempty")
    limit = budget(VISITED_SETS) if limit is None else limit
    found, parents = _bfs(mask, a.n_letters, a._stepper.step, _singleton, limit, "subset_shortest_sync_word")
    return _sync_result(a, found, parents)


def is_synchronizing_set(a: Dfa, s: StateSet | Iterable[int], limit: int | None = None) -> bool:
    return subset_shortest_sync_word(a, s, limit).synchronizing


def _min_image(a: Dfa, start: int, limit: int, what: str) -> RankResult:
    best = start
    found, parents = _bfs(start, a.n_letters, a._stepper.step, _singleton, limit, what)
    if found is not None:
        best = found
    else:
        # dict order is discovery order, so the first minimum has the length-lex least word
        best = min(parents, key=int.bit_count)
    return RankResult(best.bit_count(), _word(parents, best), StateSet(a.n_states, best))


def greedy_rank_word_wa(a: Dfa, topo: TopoOrder | None = None) -> RankResult:
    """Word of length at most n - r reaching rank r = number of sinks, in a weakly acyclic automaton.

    Repeatedly takes the non-sink state of the current image that comes first in
    the topological order and applies the first letter that moves it.
    """
    _require_complete(a)
    if topo is None:
        topo = topological_sort(a)
        if isinstance(topo, NotWeaklyAcyclic):
            raise InputError(f"automaton is not weakly acyclic (cycle {topo.cycle})")
    elif not topo.respects(a):
        raise InputError("the given order is not a topological sort of the automaton")
    sinks = sink_states(a).mask
    pos = topo.position
    table = a.table
    step = a._stepper.step
    current = (1 << a.n_states) - 1
    word = []
    while True:
        active = current & ~sinks
        if not active:
            break
        p = min(bits(active), key=pos.__getitem__)
        x = next(x for x, t in enumerate(table[p]) if t != p)
        current = step(current, x)
        word.append(x)
    return RankResult(current.bit_count(), tuple(word), StateSet(a.n_states, current))


def rank_of_automaton(
    a: Dfa, method: str = "auto", cap: int | None = None, limit: int | None = None
) -> RankResult:
    """Rank of the automaton.

    ``method="auto"`` uses the sink count with the greedy witness when the
    automaton is weakly acyclic and falls back to exact BFS otherwise;
    ``"exact"`` always runs the BFS, whose witness is a shortest minimum-rank word.
    """
    _require_complete(a)
    if method not in ("auto", "exact"):
        raise InputError(f"unknown method {method!r}")
    if method == "auto":
        topo = topological_sort(a)
        if isinstance(topo, TopoOrder):
            return greedy_rank_word_wa(a, topo)
    _check_capacity(a, cap)
    limit = budget(VISITED_SETS) if limit is None else limit
    return _min_image(a, (1 << a.n_states) - 1, limit, "rank_of_automaton")


def rank_of_subset(a: Dfa, s: StateSet | Iterable[int], limit: int | None = None) -> RankResult:
    _require_complete(a)
    mask = a._as_mask(s)
    if not mask:
        raise InputError("the state set must be nonempty")
    limit = budget(VISITED_SETS) if limit is None else limit
    return _min_image(a, mask, limit, "rank_of_subset")


# ------------------------------------------------------- maximum sync sets


def _cliques(adj: Sequence[int], candidates: int, size: int) -> Iterator[int]:
    """Cliques of exactly ``size`` vertices, in lexicographic order of their sorted members."""

    def grow(chosen: int, need: int, cand: int) -> Iterator[int]:
        if need == 0:
            yield chosen
            return
        while cand.bit_count() >= need:
            low = cand & -cand
            cand ^= low
            yield from grow(chosen | low, need - 1, cand & adj[low.bit_length() - 1])

    yield from grow(0, size, candidates)


def max_sync_set(a: Dfa, mode: str = "exact", limit: int | None = None) -> MaxSyncSetResult:
    """Largest synchronizing set.

    ``exact``: cardinality descent from n; candidates are cliques of the pair
    graph (every subset of a synchronizing set is synchronizing, pairs
    included), each checked by subset BFS.  ``limit`` caps the number of
    candidates tested.  ``monoid``: largest fibre over the enumerated
    transition monoid, an independent cross-check.  ``witness``: an
    inclusion-maximal set grown greedily from state 0, no optimality claim.
    """
    _require_complete(a)
    n = a.n_states
    if mode == "monoid":
        return _max_sync_set_monoid(a, limit)
    if mode == "witness":
        chosen = 0
        result = SyncResult(True, (), 0)
        for q in range(n):
            r = subset_shortest_sync_word(a, StateSet(n, chosen | 1 << q))
            if r.synchronizing:
                chosen |= 1 << q
                result = r
        return MaxSyncSetResult(StateSet(n, chosen), result.witness, result.target)
    if mode != "exact":
        raise InputError(f"unknown mode {mode!r}")

    limit = budget(SUBSET_TESTS) if limit is None else limit
    adj = pair_sync_graph(a)
    tests = 0
    for c in range(n, 0, -1):
        for mask in _cliques(adj, (1 << n) - 1, c):
            tests += 1
            if tests > limit:
                raise ResourceError(
                    f"max_sync_set: {limit} candidate sets tested without a conclusion at size {c}", limit
                )
            r = subset_shortest_sync_word(a, StateSet(n, mask))
            if r.synchronizing:
                return MaxSyncSetResult(StateSet(n, mask), r.witness, r.target)
    raise AssertionError("unreachable: singletons are synchronizing")


def transition_monoid(a: Dfa, limit: int | None = None) -> dict[tuple[int, ...], Word]:
    """Every transformation induced by a word, with its length-lex least word."""
    _require_complete(a)
    limit = budget(VISITED_SETS) if limit is None else limit
    table = a.table
    letters = [tuple(row[x] for row in table) for x in range(a.n_letters)]

    def step(f, x):
        g = letters[x]
        return tuple(g[t] for t in f)

    _, parents = _bfs(tuple(range(a.n_states)), a.n_letters, step, None, limit, "transition_monoid")
    return {f: _word(parents, f) for f in parents}


def _max_sync_set_monoid(a: Dfa, limit: int | None) -> MaxSyncSetResult:
    best = None
    for f, w in transition_monoid(a, limit).items():
        fibres: dict[int, int] = {}
        for q, t in enumerate(f):
            fibres[t] = fibres.get(t, 0) | 1 << q
        target, mask = max(sorted(fibres.items()), key=lambda kv: kv[1].bit_count())
        if best is None or mask.bit_count() > best[0].bit_count():
            best = (mask, w, target)
    mask, w, target = best
    return MaxSyncSetResult(StateSet(a.n_states, mask), w, target)


def max_sync_set_unary(a: Dfa) -> MaxSyncSetResult:
    """Polynomial algorithm for one-letter automata: largest fibre of the n-th power."""
    if a.n_letters != 1:
        raise InputError(f"expected a unary automaton, got {a.n_letters} letters")
    n = a.n_states
    delta = [row[0] for row in a.table]
    final = list(range(n))
    for _ in range(n):
        final = [delta[q] for q in final]
    fibres: dict[int, int] = {}
    for q, t in enumerate(final):
        fibres[t] = fibres.get(t, 0) | 1 << q
    target, mask = max(sorted(fibres.items()), key=lambda kv: kv[1].bit_count())
    return MaxSyncSetResult(StateSet(n, mask), (0,) * n, target)


# --------------------------------------------------------- Eulerian check


@dataclass(frozen=True)
class EulerianPartitionReport:
    rank: int
    classes: tuple[StateSet, ...]
    components: tuple[StateSet, ...]
    is_partition: bool
    count_matches_rank: bool
    equal_sizes: bool
    equal_sizes_per_component: bool

    @property
    def strongly_connected(self) -> bool:
        return len(self.components) == 1

    @property
    def passed(self) -> bool:
        # equal class sizes are only claimed within a strongly connected automaton
        return self.is_partition and self.count_matches_rank and self.equal_sizes_per_component


def _components(a: Automaton) -> list[int]:
    n = a.n_states
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for q, row in enumerate(a.table):
        for t in row:
            if t != UNDEFINED:
                parent[find(q)] = find(t)
    comps: dict[int, int] = {}
    for q in range(n):
        comps[find(q)] = comps.get(find(q), 0) | 1 << q
    return sorted(comps.values(), key=lambda m: (m & -m))


def maximal_sync_sets(a: Dfa, cap: int = 16, limit: int | None = None) -> list[StateSet]:
    """All inclusion-maximal synchronizing sets, by exhaustive subset search."""
    _require_complete(a)
    n = a.n_states
    if n > cap:
        raise ResourceError(f"{n} states exceed the subset-enumeration capacity of {cap}", cap)
    adj = pair_sync_graph(a)
    found: list[int] = []
    for c in range(n, 0, -1):
        for mask in _cliques(adj, (1 << n) - 1, c):
            if any(mask & ~m == 0 for m in found):
                continue
            if subset_shortest_sync_word(a, StateSet(n, mask), limit).synchronizing:
                found.append(mask)
    return [StateSet(n, m) for m in sorted(found, key=lambda m: (m & -m))]


def verify_eulerian_partition(a: Dfa, cap: int = 16) -> EulerianPartitionReport:
    """Empirical check that maximal synchronizing sets of an Eulerian automaton form rank-many equal classes."""
    ok, degrees = is_eulerian(a)
    if not ok:
        raise InputError(f"automaton is not Eulerian (in-degrees {degrees})")
    if a.n_states > cap:
        raise ResourceError(f"{a.n_states} states exceed the capacity of {cap}", cap)
    rank = rank_of_automaton(a, method="exact", cap=cap).rank
    classes = maximal_sync_sets(a, cap)
    masks = [c.mask for c in classes]
    union = 0
    disjoint = True
    for m in masks:
        disjoint = disjoint and not (union & m)
        union |= m
    is_partition = disjoint and union == (1 << a.n_states) - 1
    comps = _components(a)
    per_comp = True
    for comp in comps:
        sizes = {m.bit_count() for m in masks if m & comp}
        per_comp = per_comp and len(sizes) <= 1
    return EulerianPartitionReport(
        rank=rank,
        classes=tuple(classes),
        components=tuple(StateSet(a.n_states, c) for c in comps),
        is_partition=is_partition,
        count_matches_rank=len(classes) == rank,
        equal_sizes=len({m.bit_count() for m in masks}) == 1,
        equal_sizes_per_component=per_comp,
    )


# ------------------------------------------------ partial and reachability


def careful_shortest_word(a: Automaton, cap: int | None = None, limit: int | None = None) -> SyncResult:
    """Shortest carefully synchronizing word: only letters defined on the whole current image."""
    _check_capacity(a, cap)
    limit = budget(VISITED_SETS) if limit is None else limit
    found, parents = _bfs(
        (1 << a.n_states) - 1, a.n_letters, a._stepper.careful_step, _singleton, limit, "careful_shortest_word"
    )
    return _sync_result(a, found, parents)


def is_subset_reachable(
    a: Dfa, target: StateSet | Iterable[int], cap: int | None = None, limit: int | None = None
) -> ReachResult:
    """Is ``target`` exactly the image of Q under some word?"""
    _require_complete(a)
    _check_capacity(a, cap)
    goal_mask = a._as_mask(target)
    limit = budget(VISITED_SETS) if limit is None else limit
    found, parents = _bfs(
        (1 << a.n_states) - 1,
        a.n_letters,
        a._stepper.step,
        lambda m: m == goal_mask,
        limit,
        "is_subset_reachable",
    )
    if found is None:
        return ReachResult(False, explored=len(parents))
    return ReachResult(True, _word(parents, found), len(parents))


def intersection_nonempty(
    acceptors: Sequence[tuple[Dfa, int, StateSet | Iterable[int]]], limit: int | None = None
) -> IntersectionResult:
    """Shortest word accepted by every ``(automaton, initial, accepting)`` triple."""
    if not acceptors:
        raise InputError("need at least one acceptor")
    k = acceptors[0][0].n_letters
    tables = []
    accepting = []
    start = []
    for a, init, acc in acceptors:
        _require_complete(a)
        if a.n_letters != k:
            raise InputError("acceptors have different alphabets")
        a._check_state(init)
        tables.append(a.table)
        accepting.append(a._as_mask(acc))
        start.append(init)
    limit = budget(PRODUCT_STATES) if limit is None else limit

    def step(state, x):
        return tuple(t[q][x] for t, q in zip(tables, state))

    def goal(state):
        return all(acc >> q & 1 for acc, q in zip(accepting, state))

    found, parents = _bfs(tuple(start), k, step, goal, limit, "intersection_nonempty")
    if found is None:
        return IntersectionResult(False, explored=len(parents))
    return IntersectionResult(True, _word(parents, found), len(parents))
