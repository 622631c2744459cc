"""Constructions: extremal families and reduction gadgets.

Every builder returns a :class:`GadgetBundle` holding the automaton, the
designated subset or target set, a threshold where the decision variant
needs one, expected values, and provenance.  State and letter orders are
fixed per gadget and documented on each builder; they are part of the
output contract (the Boolean-matrix gadget relies on them for
triangularity).

Expected values derived from brute-force oracles (``sat``, ``alpha``,
``chi``) are attached only when the instance is within the oracle budget.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .automata import UNDEFINED, Automaton, Dfa, PartialDfa, StateSet
from .errors import InputError
from .formats import parse_dfa, serialize_dfa
from .instances import CnfFormula, Graph
from .matrices import BoolMatrix, transition_matrix
from .oracles import (
    MAX_COLOR_VERTICES,
    MAX_IS_VERTICES,
    MAX_SAT_VARS,
    chromatic_number_brute,
    max_independent_set_brute,
    sat_solve_brute,
)


@dataclass(frozen=True)
class GadgetBundle:
    automaton: Automaton
    gadget: str
    parameters: dict[str, Any] = field(default_factory=dict)
    instance_digest: str = ""
    subset: StateSet | None = None
    target_set: StateSet | None = None
    threshold: int | None = None
    expected: dict[str, Any] = field(default_factory=dict)

    def sidecar(self) -> dict[str, Any]:
        return {
            "gadget": self.gadget,
            "parameters": self.parameters,
            "subset": None if self.subset is None else list(self.subset.members),
            "target_set": None if self.target_set is None else list(self.target_set.members),
            "threshold": self.threshold,
            "expected": self.expected,
            "instance_digest": self.instance_digest,
        }

    def sidecar_json(self) -> str:
        return json.dumps(self.sidecar(), indent=2, sort_keys=True) + "\n"

    def write(self, prefix: str | Path) -> tuple[Path, Path]:
        prefix = Path(prefix)
        dfa_path = prefix.with_name(prefix.name + ".dfa")
        json_path = prefix.with_name(prefix.name + ".json")
        dfa_path.write_text(serialize_dfa(self.automaton), encoding="utf-8")
        json_path.write_text(self.sidecar_json(), encoding="utf-8")
        return dfa_path, json_path


def load_bundle(prefix: str | Path) -> GadgetBundle:
    prefix = Path(prefix)
    a = parse_dfa(prefix.with_name(prefix.name + ".dfa").read_text(encoding="utf-8"))
    meta = json.loads(prefix.with_name(prefix.name + ".json").read_text(encoding="utf-8"))

    def states(key):
        return None if meta.get(key) is None else StateSet.of(a.n_states, meta[key])

    return GadgetBundle(
        automaton=a,
        gadget=meta["gadget"],
        parameters=meta.get("parameters", {}),
        instance_digest=meta.get("instance_digest", ""),
        subset=states("subset"),
        target_set=states("target_set"),
        threshold=meta.get("threshold"),
        expected=meta.get("expected", {}),
    )


def _params_digest(params: dict[str, Any]) -> str:
    return hashlib.sha256(json.dumps(params, sort_keys=True).encode()).hexdigest()[:16]


class _Builder:
    """Named states with a transition table filled in incrementally."""

    def __init__(self, letters: list[str]):
        self.letters = letters
        self.names: list[str] = []
        self.index: dict[str, int] = {}
        self.rows: list[list[int | None]] = []

    def add(self, name: str) -> int:
        if name in self.index:
            raise AssertionError(f"duplicate state {name}")
        q = len(self.names)
        self.names.append(name)
        self.index[name] = q
        self.rows.append([None] * len(self.letters))
        return q

    def __getitem__(self, name: str) -> int:
        return self.index[name]

    def set(self, q: int, letter: int, target: int) -> None:
        self.rows[q][letter] = target

    def set_all(self, q: int, target: int) -> None:
        for x in range(len(self.letters)):
            self.rows[q][x] = target

    def dfa(self) -> Dfa:
        table = tuple(tuple(q if t is None else t for t in row) for q, row in enumerate(self.rows))
        return Dfa(table, tuple(self.letters), tuple(self.names))

    def partial(self) -> PartialDfa:
        table = tuple(tuple(UNDEFINED if t is None else t for t in row) for row in self.rows)
        return PartialDfa(table, tuple(self.letters), tuple(self.names))


# ------------------------------------------------------------ extremal families


def family_tight_rank(n: int, r: int) -> GadgetBundle:
    """States q1..qn over one letter x: q_i -> q_{i+1} for i <= n - r, the rest are sinks."""
    if not 1 <= r <= n:
        raise InputError(f"need 1 <= r <= n, got n={n}, r={r}")
    b = _Builder(["x"])
    qs = [b.add(f"q{i}") for i in range(1, n + 1)]
    for i in range(1, n - r + 1):
        b.set(qs[i - 1], 0, qs[i])
    params = {"n": n, "r": r}
    return GadgetBundle(
        b.dfa(),
        "tight-rank",
        params,
        _params_digest(params),
        expected={"rank": r, "shortest_rank_word_length": n - r, "n_states": n},
    )


def family_subset_binary(n: int, k: int) -> GadgetBundle:
    """Binary weakly acyclic family whose k-subset needs a word of length (k-1)(n-k).

    State order: q1..q_{k-1}, s1..s_l (l = n - k), t.
    """
    if not 2 <= k < n:
        raise InputError(f"need 2 <= k < n, got n={n}, k={k}")
    ell = n - k
    b = _Builder(["0", "1"])
    q = [b.add(f"q{i}") for i in range(1, k)]
    s = [b.add(f"s{i}") for i in range(1, ell + 1)]
    t = b.add("t")
    for i in range(k - 1):
        b.set(q[i], 0, q[i])
        b.set(q[i], 1, q[i + 1] if i < k - 2 else s[0])
    for i in range(ell - 1):
        b.set(s[i], 0, s[i + 1])
        b.set(s[i], 1, t)
    params = {"n": n, "k": k}
    return GadgetBundle(
        b.dfa(),
        "subset-binary",
        params,
        _params_digest(params),
        subset=StateSet.of(n, q + [s[-1]]),
        expected={
            "shortest_sync_length": (k - 1) * (n - k),
            "upper_bound": k * (2 * n - k - 1) // 2,
            "rank": 2,
            "n_states": n,
        },
    )


def family_subset_large_alphabet(n: int, k: int) -> GadgetBundle:
    """The (n-2)-letter family with shortest subset word (k-1)(2n-k-2)/2.

    States -1, 0, ..., n-2 are stored at indices 0..n-1 and named q-1..q{n-2};
    letters a1..a{n-2}.
    """
    if n < 3 or not 2 <= k < n:
        raise InputError(f"need n >= 3 and 2 <= k < n, got n={n}, k={k}")
    b = _Builder([f"a{i}" for i in range(1, n - 1)])
    for v in range(-1, n - 1):
        b.add(f"q{v}")

    def idx(v: int) -> int:
        return v + 1

    for v in range(-1, n - 1):
        for i in range(1, n - 1):
            if v in (-1, 0) or v > i:
                target = v
            elif v == i:
                target = v - 1
            else:
                target = -1
            b.set(idx(v), i - 1, idx(target))
    members = [idx(0)] + [idx(n - i) for i in range(2, k + 1)]
    params = {"n": n, "k": k}
    return GadgetBundle(
        b.dfa(),
        "subset-large-alphabet",
        params,
        _params_digest(params),
        subset=StateSet.of(n, members),
        expected={
            "shortest_sync_length": (k - 1) * (2 * n - k - 2) // 2,
            "upper_bound": k * (2 * n - k - 1) // 2,
            "n_states": n,
        },
    )


# ------------------------------------------------------- shortest-word gadget


def gadget_layered_subset(a: Dfa) -> GadgetBundle:
    """p + 1 layered copies of a binary automaton; the first layer is the designated subset.

    State q_i^(j) sits at index (j-1)*p + i; layer j advances to layer j+1 along
    the source transitions, the last layer is all self-loops.
    """
    if a.n_letters != 2:
        raise InputError(f"expected a binary automaton, got {a.n_letters} letters")
    p = a.n_states
    b = _Builder(["0", "1"])
    for j in range(1, p + 2):
        for i in range(p):
            b.add(f"{a.state_label(i)}^({j})")
    for j in range(p):
        for i in range(p):
            for x in (0, 1):
                b.set(j * p + i, x, (j + 1) * p + a.table[i][x])
    return GadgetBundle(
        b.dfa(),
        "layered-subset",
        {"p": p},
        hashlib.sha256(serialize_dfa(a).encode()).hexdigest()[:16],
        subset=StateSet(p * (p + 1), (1 << p) - 1),
        expected={"n_states": p * (p + 1)},
    )


# ---------------------------------------------------- maximum sync set gadgets


def gadget_maxsync_padding(a: Dfa, s: StateSet) -> GadgetBundle:
    """Copy of ``a`` plus n+1 fresh states per member of ``s``, each sent to it by every letter.

    Fresh states follow the copy, grouped by member in increasing order.
    """
    n = a.n_states
    members = list(StateSet.of(n, s.members if isinstance(s, StateSet) else s).members)
    b = _Builder([a.letter_label(x) for x in range(a.n_letters)])
    for q in range(n):
        b.add(a.state_label(q))
    for q in range(n):
        for x in range(a.n_letters):
            b.set(q, x, a.table[q][x])
    fresh = []
    for q in members:
        for c in range(n + 1):
            f = b.add(f"new{c}->{a.state_label(q)}")
            b.set_all(f, q)
            fresh.append(f)
    total = n + (n + 1) * len(members)
    threshold = (n + 1) * len(members)
    return GadgetBundle(
        b.dfa(),
        "maxsync-padding",
        {"n": n, "s": members},
        hashlib.sha256((serialize_dfa(a) + repr(members)).encode()).hexdigest()[:16],
        subset=StateSet.of(total, fresh),
        threshold=threshold,
        expected={"threshold": threshold, "n_states": total},
    )


def _alpha(g: Graph) -> int | None:
    return max_independent_set_brute(g)[0] if g.n_vertices <= MAX_IS_VERTICES else None


def gadget_is_maxsync_large_alphabet(g: Graph) -> GadgetBundle:
    """Independent Set gadget over letters v~_1..v~_p; maximum sync set is alpha(G) + 1.

    State order: s_1..s_p, t_1..t_p, f.
    """
    p = g.n_vertices
    if p < 1:
        raise InputError("graph needs at least one vertex")
    b = _Builder([f"v~_{i}" for i in range(1, p + 1)])
    s = [b.add(f"s_{i}") for i in range(1, p + 1)]
    t = [b.add(f"t_{i}") for i in range(1, p + 1)]
    f = b.add("f")
    for i in range(p):
        b.set(s[i], i, f)
    for u, v in g.edges:
        b.set(s[u], v, t[u])
        b.set(s[v], u, t[v])
    expected: dict[str, Any] = {"n_states": 2 * p + 1, "weakly_acyclic": True}
    alpha = _alpha(g)
    if alpha is not None:
        expected.update(alpha=alpha, max_sync_set=alpha + 1)
    return GadgetBundle(b.dfa(), "is-maxsync", {"p": p}, g.digest(), expected=expected)


def _layered_is_gadget(g: Graph, copies: int, with_cycle: bool) -> tuple[_Builder, dict[int, list[int]]]:
    """Layers L_i = V_i + U_i driven by letters 0/1, first layer replicated ``copies`` times.

    Returns the builder and, per vertex j, the replicated first-layer v-states.
    State order: first-layer pairs (v_j^(1)#c, u_j^(1)#c) copy by copy, then
    layers 2..p as (v_j^(i), u_j^(i)) pairs, then f, then cycle states c_2..c_p.
    """
    p = g.n_vertices
    b = _Builder(["0", "1"])
    first: dict[int, list[int]] = {j: [] for j in range(p)}
    first_u: dict[int, list[int]] = {j: [] for j in range(p)}
    for c in range(1, copies + 1):
        for j in range(p):
            first[j].append(b.add(f"v_{j + 1}^(1)#{c}"))
            first_u[j].append(b.add(f"u_{j + 1}^(1)#{c}"))
    v: dict[tuple[int, int], int] = {}
    u: dict[tuple[int, int], int] = {}
    for i in range(1, p):
        for j in range(p):
            v[(i, j)] = b.add(f"v_{j + 1}^({i + 1})")
            u[(i, j)] = b.add(f"u_{j + 1}^({i + 1})")
    f = b.add("f")
    for j in range(p):
        v[(p, j)] = f

    def wire(state: int, i: int, j: int, deflect: int) -> None:
        # layer index i is 0-based here; vertex i decides letter i
        b.set(state, 0, deflect if i == j else v[(i + 1, j)])
        b.set(state, 1, deflect if g.adjacent(i, j) else v[(i + 1, j)])

    for j in range(p):
        for vs, us in zip(first[j], first_u[j]):
            wire(vs, 0, j, us)
    for i in range(1, p):
        for j in range(p):
            wire(v[(i, j)], i, j, u[(i, j)])
    if with_cycle:
        cycle = [f] + [b.add(f"c_{i}") for i in range(2, p + 1)]
        for i, c in enumerate(cycle):
            b.set_all(c, cycle[(i + 1) % len(cycle)])
    return b, first


def gadget_is_maxsync_binary(g: Graph) -> GadgetBundle:
    """Binary Independent Set gadget with a p-cycle at f and the first layer repeated p times.

    4p^2 - p states; maximum sync set p*alpha(G) + 1 when alpha(G) > 1.
    """
    p = g.n_vertices
    if p < 1:
        raise InputError("graph needs at least one vertex")
    b, _ = _layered_is_gadget(g, copies=p, with_cycle=True)
    expected: dict[str, Any] = {"n_states": 4 * p * p - p}
    alpha = _alpha(g)
    if alpha is not None:
        expected["alpha"] = alpha
        if alpha > 1:
            expected["max_sync_set"] = p * alpha + 1
    return GadgetBundle(b.dfa(), "is-maxsync-binary", {"p": p}, g.digest(), expected=expected)


def gadget_is_maxsync_binary_wa(g: Graph) -> GadgetBundle:
    """Weakly acyclic variant: no cycle (f is a sink), first layer repeated p^2 times."""
    p = g.n_vertices
    if p < 1:
        raise InputError("graph needs at least one vertex")
    b, _ = _layered_is_gadget(g, copies=p * p, with_cycle=False)
    expected: dict[str, Any] = {"n_states": 2 * p**3 + 2 * p * p - 2 * p + 1, "weakly_acyclic": True}
    alpha = _alpha(g)
    if alpha is not None:
        expected.update(
            alpha=alpha,
            max_sync_set_min=p * p * alpha,
            max_sync_set_max=p * p * alpha + p * (p - 1) + 1,
        )
    return GadgetBundle(b.dfa(), "is-maxsync-binary-wa", {"p": p}, g.digest(), expected=expected)


def is_binary_witness_set(bundle: GadgetBundle, independent: tuple[int, ...]) -> tuple[StateSet, tuple[int, ...]]:
    """Replicated first-layer states of an independent set plus f, with the word that merges them.

    The word has letter i equal to 1 iff vertex i is in the set.
    """
    a = bundle.automaton
    p = bundle.parameters["p"]
    chosen = set(independent)
    members = [q for q, name in enumerate(a.state_names) if name.startswith("v_") and "^(1)#" in name
               and int(name[2:name.index("^")]) - 1 in chosen]
    members.append(a.state_names.index("f"))
    word = tuple(1 if i in chosen else 0 for i in range(p))
    return StateSet.of(a.n_states, members), word


# --------------------------------------------------------------- rank gadgets


def _chi(g: Graph) -> int | None:
    return chromatic_number_brute(g)[0] if g.n_vertices <= MAX_COLOR_VERTICES else None


def gadget_chromatic_rank(g: Graph) -> GadgetBundle:
    """Chromatic Number gadget over letters v~_1..v~_p, nu; the rank of S is chi(G).

    Gadget-major state order: s_1^(k)..s_p^(k), t_1^(k)..t_p^(k), f^(k) for k = 1..p.
    """
    p = g.n_vertices
    if p < 1:
        raise InputError("graph needs at least one vertex")
    nu = p
    b = _Builder([f"v~_{i}" for i in range(1, p + 1)] + ["nu"])
    s, t, f = {}, {}, {}
    for k in range(1, p + 1):
        for i in range(p):
            s[(k, i)] = b.add(f"s_{i + 1}^({k})")
        for i in range(p):
            t[(k, i)] = b.add(f"t_{i + 1}^({k})")
        f[k] = b.add(f"f^({k})")
    for k in range(1, p + 1):
        for i in range(p):
            b.set(s[(k, i)], i, f[k])
        for x, y in g.edges:
            b.set(s[(k, x)], y, t[(k, x)])
            b.set(s[(k, y)], x, t[(k, y)])
        if k < p:
            for i in range(p):
                b.set(s[(k, i)], nu, s[(k + 1, i)])
                b.set(t[(k, i)], nu, s[(k + 1, i)])
    n = p * (2 * p + 1)
    expected: dict[str, Any] = {"n_states": n, "weakly_acyclic": True}
    chi = _chi(g)
    if chi is not None:
        expected.update(chi=chi, rank=chi)
    return GadgetBundle(
        b.dfa(),
        "chromatic-rank",
        {"p": p},
        g.digest(),
        subset=StateSet.of(n, [s[(1, i)] for i in range(p)]),
        expected=expected,
    )


def gadget_chromatic_rank_binary(g: Graph) -> GadgetBundle:
    """Binary Chromatic Number gadget: synchronizing gadgets T^(k) and waiting gadgets R^(k).

    State order per k: v_{i.j}^(k) row-major (i, then j), f^(k), u_{i.j}^(k) row-major.
    p(2p^2 + 1) states; f^(k) are self-loops.
    """
    p = g.n_vertices
    if p < 1:
        raise InputError("graph needs at least one vertex")
    b = _Builder(["0", "1"])
    v, u, f = {}, {}, {}
    for k in range(1, p + 1):
        for i in range(1, p + 1):
            for j in range(1, p + 1):
                v[(k, i, j)] = b.add(f"v_{i}.{j}^({k})")
        f[k] = b.add(f"f^({k})")
        for i in range(1, p + 1):
            for j in range(1, p + 1):
                u[(k, i, j)] = b.add(f"u_{i}.{j}^({k})")
    for k in range(1, p + 1):
        for j in range(1, p + 1):
            for i in range(1, p + 1):
                nxt = v[(k, i + 1, j)] if i < p else f[k]
                b.set(v[(k, i, j)], 0, u[(k, i, j)] if i == j else nxt)
                b.set(v[(k, i, j)], 1, u[(k, i, j)] if g.adjacent(i - 1, j - 1) else nxt)
                if k < p:
                    b.set_all(u[(k, i, j)], u[(k, i + 1, j)] if i < p else v[(k + 1, 1, j)])
    n = p * (2 * p * p + 1)
    expected: dict[str, Any] = {"n_states": n, "weakly_acyclic": True}
    chi = _chi(g)
    if chi is not None:
        expected.update(chi=chi, rank=chi)
    return GadgetBundle(
        b.dfa(),
        "chromatic-rank-binary",
        {"p": p},
        g.digest(),
        subset=StateSet.of(n, [v[(1, 1, j)] for j in range(1, p + 1)]),
        expected=expected,
    )


# ----------------------------------------------------------------- SAT gadgets


def _sat_expected(f: CnfFormula) -> dict[str, Any]:
    if f.n_vars > MAX_SAT_VARS:
        return {}
    assignment = sat_solve_brute(f)
    out: dict[str, Any] = {"sat": assignment is not None}
    if assignment is not None:
        out["assignment"] = [int(x) for x in assignment]
    return out


def gadget_sat_subset_sync(f: CnfFormula) -> GadgetBundle:
    """Binary weakly acyclic automaton in which S = {y_1^(j)} is synchronizing iff f is satisfiable.

    State order: y_1^(1)..y_{n+1}^(1), ..., y_1^(m)..y_{n+1}^(m), f.
    """
    n, m = f.n_vars, f.n_clauses
    b = _Builder(["0", "1"])
    y = {}
    for j in range(m):
        for i in range(1, n + 2):
            y[(j, i)] = b.add(f"y_{i}^({j + 1})")
    fin = b.add("f")
    for j in range(m):
        for i in range(1, n + 1):
            for a in (0, 1):
                b.set(y[(j, i)], a, fin if f.satisfied_by(j, i, a) else y[(j, i + 1)])
    total = m * (n + 1) + 1
    expected = {"n_states": total, **_sat_expected(f)}
    return GadgetBundle(
        b.dfa(),
        "sat-subset-sync",
        {"n": n, "m": m},
        f.digest(),
        subset=StateSet.of(total, [y[(j, 1)] for j in range(m)]),
        expected=expected,
    )


def gadget_sat_intersection(f: CnfFormula) -> list[GadgetBundle]:
    """One acceptor per clause; ``subset`` holds the initial state and ``target_set`` the accepting one.

    State order per acceptor: y_1..y_{n+1}, f.
    """
    n = f.n_vars
    sat = _sat_expected(f)
    out = []
    for j in range(f.n_clauses):
        b = _Builder(["0", "1"])
        ys = [b.add(f"y_{i}^({j + 1})") for i in range(1, n + 2)]
        fin = b.add("f")
        for i in range(1, n + 1):
            for a in (0, 1):
                b.set(ys[i - 1], a, fin if f.satisfied_by(j, i, a) else ys[i])
        out.append(
            GadgetBundle(
                b.dfa(),
                "sat-intersection",
                {"n": n, "m": f.n_clauses, "clause": j + 1},
                f.digest(),
                subset=StateSet.of(n + 2, [ys[0]]),
                target_set=StateSet.of(n + 2, [fin]),
                expected=dict(sat),
            )
        )
    return out


def acceptors(bundles: list[GadgetBundle]) -> list[tuple[Dfa, int, StateSet]]:
    """Adapt intersection bundles to the engine's ``(automaton, initial, accepting)`` triples."""
    return [(b.automaton, b.subset.members[0], b.target_set) for b in bundles]


def _a_base(f: CnfFormula, with_reset_states: bool) -> tuple[_Builder, dict, dict, dict, int]:
    """Clause-major order: y_1, [s], then y_i, z_i for i = 2..n+1 (z only when it exists); f last."""
    n, m = f.n_vars, f.n_clauses
    letters = ["0", "1", "r"] if with_reset_states else ["0", "1"]
    b = _Builder(letters)
    y, z, s = {}, {}, {}
    for j in range(m):
        h = f.smallest_var(j)
        y[(j, 1)] = b.add(f"y_1^({j + 1})")
        if with_reset_states:
            s[j] = b.add(f"s^({j + 1})")
        for i in range(2, n + 2):
            y[(j, i)] = b.add(f"y_{i}^({j + 1})")
            if i >= h + 1:
                z[(j, i)] = b.add(f"z_{i}^({j + 1})")
    fin = b.add("f")
    for j in range(m):
        for i in range(1, n + 1):
            for a in (0, 1):
                b.set(y[(j, i)], a, z[(j, i + 1)] if f.satisfied_by(j, i, a) else y[(j, i + 1)])
        for (jj, i), q in z.items():
            if jj != j:
                continue
            for a in (0, 1):
                b.set(q, a, z[(j, i + 1)] if i <= n else fin)
    for a in (0, 1):
        b.set(fin, a, fin)
    return b, y, z, s, fin


def build_a_base(f: CnfFormula) -> GadgetBundle:
    """Partial binary automaton shared by the careful-synchronization and reachability gadgets.

    y_{n+1}^(j) is undefined on both letters.
    """
    b, *_ = _a_base(f, with_reset_states=False)
    a = b.partial()
    return GadgetBundle(
        a, "a-base", {"n": f.n_vars, "m": f.n_clauses}, f.digest(), expected={"n_states": a.n_states}
    )


def gadget_sat_careful(f: CnfFormula) -> GadgetBundle:
    """Three-letter partial automaton, carefully synchronizing iff f is satisfiable.

    Adds s^(j) and letter r to the base automaton; r sends s^(j), y_i^(j) and
    z_i^(j) to y_1^(j) and fixes f.  Letters: 0, 1, r.
    """
    n, m = f.n_vars, f.n_clauses
    b, y, z, s, fin = _a_base(f, with_reset_states=True)
    r = 2
    for j in range(m):
        b.set(s[j], r, y[(j, 1)])
        for i in range(1, n + 2):
            b.set(y[(j, i)], r, y[(j, 1)])
    for (j, _), q in z.items():
        b.set(q, r, y[(j, 1)])
    b.set(fin, r, fin)
    a = b.partial()
    expected = {"n_states": a.n_states, **_sat_expected(f)}
    if expected.get("assignment") is not None:
        expected["witness"] = [r] + expected["assignment"] + [0]
    return GadgetBundle(a, "sat-careful", {"n": n, "m": m}, f.digest(), expected=expected)


def gadget_sat_reachability(f: CnfFormula) -> GadgetBundle:
    """The base automaton completed by y_{n+1}^(j) -> f; target {z_{n+1}^(j)} + {f}."""
    n, m = f.n_vars, f.n_clauses
    b, y, z, _, fin = _a_base(f, with_reset_states=False)
    for j in range(m):
        b.set_all(y[(j, n + 1)], fin)
    a = b.dfa()
    target = [z[(j, n + 1)] for j in range(m)] + [fin]
    expected = {"n_states": a.n_states, **_sat_expected(f)}
    return GadgetBundle(
        a,
        "sat-reachability",
        {"n": n, "m": m},
        f.digest(),
        target_set=StateSet.of(a.n_states, target),
        expected=expected,
    )


def spread_matrix(a: Automaton, state: int) -> BoolMatrix:
    """Row ``state`` all ones, every other row zero."""
    n = a.n_states
    return BoolMatrix(n, tuple((1 << n) - 1 if q == state else 0 for q in range(n)))


def gadget_sat_matrices(f: CnfFormula) -> list[BoolMatrix]:
    """Matrices of letters 0, 1, r of the careful gadget, then the spread-from-f matrix.

    Under the careful gadget's state order the first two are upper and the
    last two lower triangular.
    """
    careful = gadget_sat_careful(f).automaton
    ms = [transition_matrix(careful, x) for x in range(3)]
    ms.append(spread_matrix(careful, careful.state_names.index("f")))
    return ms
