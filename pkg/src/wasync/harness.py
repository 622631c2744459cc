"""Verification campaigns: generate instances, build gadgets, compare engines with oracles.

A campaign yields one :class:`Record` per instance.  Each record carries an
``expected`` value (from a closed formula or a brute-force oracle) and a
``computed`` value (from the engines) in the same JSON shape; the record fails
exactly when both are conclusive and differ.  A :class:`ResourceError` raised
anywhere in an instance turns the record inconclusive.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from . import __version__
from .automata import Dfa, StateSet, image, partial_image, sink_states
from .engines import (
    careful_shortest_word,
    greedy_rank_word_wa,
    intersection_nonempty,
    is_subset_reachable,
    is_synchronizing,
    max_sync_set,
    max_sync_set_unary,
    rank_of_automaton,
    rank_of_subset,
    shortest_sync_word,
    subset_shortest_sync_word,
    verify_eulerian_partition,
)
from .errors import InputError, ResourceError
from .formats import serialize_dfa
from .gadgets import (
    acceptors,
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
    is_binary_witness_set,
)
from .generators import gen_random_cnf, gen_random_dfa, gen_random_eulerian, gen_random_graph, gen_random_weakly_acyclic
from .instances import CnfFormula, Graph, all_graphs
from .matrices import bool_mul, is_triangular, positive_product_search
from .oracles import MAX_ENUM_WORD_LENGTH, chromatic_number_brute, max_independent_set_brute, sat_solve_brute, sync_by_word_enumeration

SCHEMA = "wasync.report/1"
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass(frozen=True)
class Record:
    digest: str
    expected: Any
    computed: Any
    status: str
    seconds: float = 0.0
    note: str = ""

    def to_dict(self, timings: bool = True) -> dict[str, Any]:
        d = {"digest": self.digest, "expected": self.expected, "computed": self.computed, "status": self.status}
        if self.note:
            d["note"] = self.note
        if timings:
            d["seconds"] = round(self.seconds, 6)
        return d


@dataclass
class VerificationReport:
    campaign: str
    seed: int
    params: dict[str, Any]
    records: list[Record] = field(default_factory=list)
    seconds: float = 0.0
    version: str = __version__

    @property
    def summary(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def instance_count(self) -> int:
        return len(self.records)

    @property
    def ok(self) -> bool:
        return self.summary[FAIL] == 0

    @property
    def exit_code(self) -> int:
        s = self.summary
        return 1 if s[FAIL] else 3 if s[INCONCLUSIVE] else 0

    def to_dict(self, timings: bool = True) -> dict[str, Any]:
        d = {
            "schema": SCHEMA,
            "campaign": self.campaign,
            "seed": self.seed,
            "params": self.params,
            "version": self.version,
            "instance_count": self.instance_count,
            "summary": self.summary,
            "records": [r.to_dict(timings) for r in self.records],
        }
        if timings:
            d["seconds"] = round(self.seconds, 3)
        return d

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"

    def to_table(self) -> str:
        s = self.summary
        lines = [
            f"campaign {self.campaign}  seed {self.seed}  instances {self.instance_count}  "
            f"pass {s[PASS]}  fail {s[FAIL]}  inconclusive {s[INCONCLUSIVE]}  ({self.seconds:.2f}s)"
        ]
        shown = [r for r in self.records if r.status != PASS]
        if shown:
            lines.append(f"{'digest':<18} {'status':<13} expected / computed")
            for r in shown:
                detail = f"{json.dumps(r.expected, sort_keys=True)} / {json.dumps(r.computed, sort_keys=True)}"
                if r.note:
                    detail += f"  [{r.note}]"
                lines.append(f"{r.digest:<18} {r.status:<13} {detail}")
        return "\n".join(lines) + "\n"


def _digest(*parts: Any) -> str:
    text = "\x1f".join(p if isinstance(p, str) else json.dumps(p, sort_keys=True) for p in parts)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _dfa_digest(a: Dfa, *extra: Any) -> str:
    return _digest(serialize_dfa(a), *extra)


def check(digest: str, expected: Callable[[], Any], computed: Callable[[], Any]) -> Record:
    """Evaluate both sides, timing the whole instance; resource exhaustion is inconclusive."""
    t0 = time.perf_counter()
    try:
        exp = expected()
        got = computed()
    except ResourceError as e:
        return Record(digest, None, None, INCONCLUSIVE, time.perf_counter() - t0, str(e))
    status = PASS if exp == got else FAIL
    return Record(digest, exp, got, status, time.perf_counter() - t0)


def _seeds(rng: random.Random, count: int) -> Iterator[int]:
    for _ in range(count):
        yield rng.randrange(2**32)


def _singleton(s: StateSet) -> bool:
    return len(s) == 1


# ------------------------------------------------------------------ bounds


def camp_bound_prop1(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    max_n, max_k = params.get("max_n", 12), params.get("max_k", 3)
    for seed in _seeds(rng, count):
        n, k = rng.randint(1, max_n), rng.randint(1, max_k)
        a = gen_random_weakly_acyclic(n, k, seed)
        r = len(sink_states(a))

        def computed(a=a, n=n, r=r):
            g = greedy_rank_word_wa(a)
            return {
                "greedy_rank_at_most_r": g.rank <= r,
                "greedy_length_at_most_n_minus_r": len(g.witness) <= n - r,
                "exact_rank": rank_of_automaton(a, method="exact").rank,
            }

        yield check(
            _dfa_digest(a),
            lambda r=r: {"greedy_rank_at_most_r": True, "greedy_length_at_most_n_minus_r": True, "exact_rank": r},
            computed,
        )


def camp_family_tight(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    for n in range(1, params.get("max_n", 12) + 1):
        for r in range(1, n + 1):
            b = family_tight_rank(n, r)

            def computed(b=b):
                res = rank_of_automaton(b.automaton, method="exact")
                return {"rank": res.rank, "length": len(res.witness)}

            yield check(b.instance_digest, lambda n=n, r=r: {"rank": r, "length": n - r}, computed)


def camp_family_fig1(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    for n in range(params.get("min_n", 4), params.get("max_n", 12) + 1):
        for k in range(2, n):
            b = family_subset_binary(n, k)

            def computed(b=b, n=n, k=k):
                res = subset_shortest_sync_word(b.automaton, b.subset)
                return {
                    "length": res.length,
                    "witness_maps_to_singleton": _singleton(image(b.automaton, b.subset, res.witness)),
                    "within_upper_bound": res.length <= k * (2 * n - k - 1) // 2,
                }

            yield check(
                b.instance_digest,
                lambda n=n, k=k: {"length": (k - 1) * (n - k), "witness_maps_to_singleton": True, "within_upper_bound": True},
                computed,
            )


def camp_family_reviewer(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    for n in range(params.get("min_n", 4), params.get("max_n", 10) + 1):
        for k in range(2, n):
            b = family_subset_large_alphabet(n, k)

            def computed(b=b):
                res = subset_shortest_sync_word(b.automaton, b.subset)
                return {"length": res.length, "witness_maps_to_singleton": _singleton(image(b.automaton, b.subset, res.witness))}

            yield check(
                b.instance_digest,
                lambda n=n, k=k: {"length": (k - 1) * (2 * n - k - 2) // 2, "witness_maps_to_singleton": True},
                computed,
            )


# ------------------------------------------------------------ layered gadget


def camp_layered(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    max_p = params.get("max_p", 6)
    for seed in _seeds(rng, count):
        p = rng.randint(1, max_p)
        a = gen_random_dfa(p, 2, seed)
        b = gadget_layered_subset(a)

        def expected(a=a, p=p):
            res = shortest_sync_word(a)
            short = res.synchronizing and res.length <= p
            return {"synchronizing": short, "length": res.length if short else None}

        def computed(b=b):
            res = subset_shortest_sync_word(b.automaton, b.subset)
            return {"synchronizing": res.synchronizing, "length": res.length}

        yield check(_dfa_digest(a), expected, computed)


# --------------------------------------------------------- max sync set gadgets


def camp_padding(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    max_n, max_s = params.get("max_n", 4), params.get("max_s", 2)
    for seed in _seeds(rng, count):
        n = rng.randint(1, max_n)
        a = gen_random_dfa(n, 2, seed)
        s = StateSet.of(n, rng.sample(range(n), rng.randint(1, min(max_s, n))))
        b = gadget_maxsync_padding(a, s)

        def expected(a=a, s=s):
            return {"reaches_threshold": subset_shortest_sync_word(a, s).synchronizing}

        def computed(b=b):
            return {"reaches_threshold": max_sync_set(b.automaton).size >= b.threshold}

        yield check(_dfa_digest(a, list(s.members)), expected, computed)


def _graphs(rng: random.Random, count: int, exhaustive_p: int, random_p: int) -> Iterator[Graph]:
    for p in range(1, exhaustive_p + 1):
        yield from all_graphs(p)
    for seed in _seeds(rng, count):
        yield gen_random_graph(rng.randint(1, random_p), seed)


def camp_is_maxsync(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    for g in _graphs(rng, count, params.get("exhaustive_p", 4), params.get("max_p", 6)):
        b = gadget_is_maxsync_large_alphabet(g)
        yield check(
            g.digest(),
            lambda g=g: {"max_sync_set": max_independent_set_brute(g)[0] + 1},
            lambda b=b: {"max_sync_set": max_sync_set(b.automaton).size},
        )


def _witness_check(b, g: Graph, size: Callable[[int], int]):
    alpha, independent = max_independent_set_brute(g)
    s, word = is_binary_witness_set(b, independent)
    return (
        {"witness_size": size(alpha), "witness_synchronizes": True},
        {"witness_size": len(s), "witness_synchronizes": _singleton(image(b.automaton, s, word))},
    )


def camp_is_maxsync_binary(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    for g in all_graphs(2):
        if max_independent_set_brute(g)[0] <= 1:
            continue
        b = gadget_is_maxsync_binary(g)
        yield check(
            _digest(g.digest(), "exact"),
            lambda g=g: {"max_sync_set": 2 * max_independent_set_brute(g)[0] + 1},
            lambda b=b: {"max_sync_set": max_sync_set(b.automaton).size},
        )
    for g in all_graphs(3):
        b = gadget_is_maxsync_binary(g)
        pair = _witness_check(b, g, lambda alpha: 3 * alpha + 1)
        yield check(_digest(g.digest(), "witness"), lambda pair=pair: pair[0], lambda pair=pair: pair[1])


def camp_is_maxsync_binary_wa(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    for g in all_graphs(2):
        b = gadget_is_maxsync_binary_wa(g)

        def computed(b=b, g=g):
            alpha = max_independent_set_brute(g)[0]
            size = max_sync_set(b.automaton).size
            return {"in_bracket": 4 * alpha <= size <= 4 * alpha + 2 * 1 + 1}

        yield check(_digest(g.digest(), "exact"), lambda: {"in_bracket": True}, computed)
    for g in all_graphs(3):
        b = gadget_is_maxsync_binary_wa(g)
        pair = _witness_check(b, g, lambda alpha: 9 * alpha + 1)
        yield check(_digest(g.digest(), "witness"), lambda pair=pair: pair[0], lambda pair=pair: pair[1])


# ---------------------------------------------------------------- rank gadgets


def camp_chromatic_rank(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    for g in _graphs(rng, count, params.get("exhaustive_p", 4), params.get("max_p", 5)):
        b1, b2 = gadget_chromatic_rank(g), gadget_chromatic_rank_binary(g)

        def expected(g=g):
            chi = chromatic_number_brute(g)[0]
            return {"rank": chi, "rank_binary": chi}

        def computed(b1=b1, b2=b2):
            return {
                "rank": rank_of_subset(b1.automaton, b1.subset).rank,
                "rank_binary": rank_of_subset(b2.automaton, b2.subset).rank,
            }

        yield check(g.digest(), expected, computed)


# ------------------------------------------------------------------ SAT gadgets


def all_clauses(n: int) -> list[tuple[int, ...]]:
    """Every clause over distinct variables of 1..n, ordered by width then lexicographically."""
    out = []
    for w in range(1, n + 1):
        for vs in itertools.combinations(range(1, n + 1), w):
            for signs in itertools.product((1, -1), repeat=w):
                out.append(tuple(s * v for s, v in zip(signs, vs)))
    return out


def cnf_suite(rng: random.Random, count: int, params: dict) -> Iterator[CnfFormula]:
    """Exhaustive tiny formulas, a random grid over (n, m), then random 3-CNFs."""
    for n in range(1, params.get("exhaustive_n", 2) + 1):
        clauses = all_clauses(n)
        for m in range(1, params.get("exhaustive_m", 2) + 1):
            for cs in itertools.product(clauses, repeat=m):
                yield CnfFormula(n, cs)
    grid_n, grid_m, per_cell = params.get("grid_n", 4), params.get("grid_m", 4), params.get("per_cell", 10)
    for n in range(1, grid_n + 1):
        for m in range(1, grid_m + 1):
            for seed in _seeds(rng, per_cell):
                yield gen_random_cnf(n, m, seed, width=rng.randint(1, min(3, n)))
    max_n, max_m = params.get("max_n", 5), params.get("max_m", 6)
    for seed in _seeds(rng, count):
        yield gen_random_cnf(rng.randint(1, max_n), rng.randint(1, max_m), seed, width=3)


def _sat(f: CnfFormula):
    return sat_solve_brute(f)


def camp_sat_subset_sync(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    for f in cnf_suite(rng, count, params):
        b = gadget_sat_subset_sync(f)

        def expected(f=f):
            sat = _sat(f) is not None
            return {"synchronizing": sat, "assignment_word_synchronizes": True if sat else None}

        def computed(b=b, f=f):
            res = subset_shortest_sync_word(b.automaton, b.subset)
            assignment = _sat(f)
            word_ok = None if assignment is None else _singleton(image(b.automaton, b.subset, [int(v) for v in assignment]))
            return {"synchronizing": res.synchronizing, "assignment_word_synchronizes": word_ok}

        yield check(f.digest(), expected, computed)


def camp_sat_careful(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    cap = params.get("cap", 128)
    for f in cnf_suite(rng, count, params):
        b = gadget_sat_careful(f)

        def expected(f=f):
            sat = _sat(f) is not None
            return {"carefully_synchronizing": sat, "assignment_word_synchronizes": True if sat else None}

        def computed(b=b, f=f):
            res = careful_shortest_word(b.automaton, cap=cap)
            assignment = _sat(f)
            word_ok = None
            if assignment is not None:
                word = [2] + [int(v) for v in assignment] + [0]
                img = partial_image(b.automaton, b.automaton.all_states, word)
                word_ok = isinstance(img, StateSet) and _singleton(img)
            return {"carefully_synchronizing": res.synchronizing, "assignment_word_synchronizes": word_ok}

        yield check(f.digest(), expected, computed)


def camp_sat_intersection(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    for f in cnf_suite(rng, count, params):
        if not f.clauses:
            continue
        bs = gadget_sat_intersection(f)
        yield check(
            f.digest(),
            lambda f=f: {"nonempty": _sat(f) is not None},
            lambda bs=bs: {"nonempty": intersection_nonempty(acceptors(bs)).nonempty},
        )


def camp_sat_reachability(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    cap = params.get("cap", 128)
    for f in cnf_suite(rng, count, params):
        b = gadget_sat_reachability(f)
        yield check(
            f.digest(),
            lambda f=f: {"reachable": _sat(f) is not None},
            lambda b=b: {"reachable": is_subset_reachable(b.automaton, b.target_set, cap=cap).reachable},
        )


def camp_sat_positive(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    cap = params.get("cap")
    for f in cnf_suite(rng, count, params):
        ms = gadget_sat_matrices(f)

        def computed(ms=ms):
            res = positive_product_search(ms, cap=cap)
            if res.status == "inconclusive":
                raise ResourceError(f"semigroup cap reached after {res.explored} elements", res.explored)
            verified = None
            if res.found:
                prod = ms[res.sequence[0]]
                for i in res.sequence[1:]:
                    prod = bool_mul(prod, ms[i])
                verified = prod.is_positive
            return {"positive_product": res.found, "product_verified": verified}

        def expected(f=f):
            sat = _sat(f) is not None
            return {"positive_product": sat, "product_verified": True if sat else None}

        yield check(f.digest(), expected, computed)


def camp_triangularity(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    for f in cnf_suite(rng, count, params):

        def computed(f=f):
            ms = gadget_sat_matrices(f)
            return [is_triangular(m, o) for m, o in zip(ms, ("upper", "upper", "lower", "lower"))]

        yield check(f.digest(), lambda: [True, True, True, True], computed)


# ----------------------------------------------------------- unary, Eulerian


def camp_unary_maxsync(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    max_n = params.get("max_n", 10)
    for seed in _seeds(rng, count):
        a = gen_random_dfa(rng.randint(1, max_n), 1, seed)

        def computed(a=a):
            res = max_sync_set_unary(a)
            return {"size": res.size, "set_synchronizes": _singleton(image(a, res.set, res.witness))}

        yield check(
            _dfa_digest(a),
            lambda a=a: {"size": max_sync_set(a).size, "set_synchronizes": True},
            computed,
        )


def camp_eulerian_partition(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    max_n, k = params.get("max_n", 6), params.get("k", 2)
    for seed in _seeds(rng, count):
        a = gen_random_eulerian(rng.randint(1, max_n), k, seed)

        def computed(a=a):
            rep = verify_eulerian_partition(a)
            return {
                "is_partition": rep.is_partition,
                "count_matches_rank": rep.count_matches_rank,
                "equal_sizes_per_component": rep.equal_sizes_per_component,
            }

        yield check(
            _dfa_digest(a),
            lambda: {"is_partition": True, "count_matches_rank": True, "equal_sizes_per_component": True},
            computed,
        )


# ------------------------------------------------------------ engine oracle


def camp_engine_oracle(rng: random.Random, count: int, params: dict) -> Iterator[Record]:
    max_n, k = params.get("max_n", 6), params.get("k", 2)
    for seed in _seeds(rng, count):
        a = gen_random_dfa(rng.randint(1, max_n), k, seed)

        def expected(a=a):
            sync, length, word = sync_by_word_enumeration(a)
            return {"synchronizing": sync, "pair_test": sync, "length": length, "word": word}

        def computed(a=a):
            res = shortest_sync_word(a)
            fast = is_synchronizing(a)
            if fast.synchronizing and not _singleton(image(a, a.all_states, fast.witness)):
                return {"pair_test_witness": "does not synchronize"}
            listed = res.synchronizing and a.n_letters ** res.length <= 1 << MAX_ENUM_WORD_LENGTH
            return {
                "synchronizing": res.synchronizing,
                "pair_test": fast.synchronizing,
                "length": res.length,
                # the oracle only lists words when k**length is small
                "word": res.witness if listed else None,
            }

        yield check(_dfa_digest(a), expected, computed)


@dataclass(frozen=True)
class Campaign:
    name: str
    run: Callable[[random.Random, int, dict], Iterator[Record]]
    default_count: int
    description: str


CAMPAIGNS: dict[str, Campaign] = {
    c.name: c
    for c in [
        Campaign("bound-prop1", camp_bound_prop1, 500, "greedy rank word of weakly acyclic automata: rank r, length <= n - r"),
        Campaign("family-tight", camp_family_tight, 0, "tight family: shortest rank-r word has length n - r"),
        Campaign("family-fig1", camp_family_fig1, 0, "binary subset family: shortest length (k-1)(n-k)"),
        Campaign("family-reviewer", camp_family_reviewer, 0, "large-alphabet family: length (k-1)(2n-k-2)/2"),
        Campaign("layered", camp_layered, 200, "layered copies: subset sync iff a word of length <= p exists"),
        Campaign("padding", camp_padding, 100, "padding gadget: max sync set reaches (n+1)|S| iff S synchronizes"),
        Campaign("is-maxsync", camp_is_maxsync, 300, "independent set gadget: max sync set = alpha + 1"),
        Campaign("is-maxsync-binary", camp_is_maxsync_binary, 0, "binary independent set gadget: p*alpha + 1"),
        Campaign("is-maxsync-binary-wa", camp_is_maxsync_binary_wa, 0, "weakly acyclic binary gadget: bracket and witness"),
        Campaign("chromatic-rank", camp_chromatic_rank, 100, "both chromatic gadgets: subset rank = chi"),
        Campaign("sat-subset-sync", camp_sat_subset_sync, 300, "subset synchronizability iff satisfiable"),
        Campaign("sat-careful", camp_sat_careful, 300, "careful synchronizability iff satisfiable"),
        Campaign("sat-intersection", camp_sat_intersection, 300, "acceptor intersection nonempty iff satisfiable"),
        Campaign("sat-reachability", camp_sat_reachability, 300, "target set reachable iff satisfiable"),
        Campaign("sat-positive", camp_sat_positive, 300, "positive matrix product iff satisfiable"),
        Campaign("triangularity", camp_triangularity, 300, "matrix gadget: two upper, two lower triangular"),
        Campaign("unary-maxsync", camp_unary_maxsync, 500, "unary max sync set agrees with exact search"),
        Campaign("eulerian-partition", camp_eulerian_partition, 100, "maximal sync sets of Eulerian automata partition Q"),
        Campaign("engine-oracle", camp_engine_oracle, 10_000, "BFS engines agree with word enumeration"),
    ]
}


def run_campaign(name: str, params: dict | None = None, seed: int = 0, count: int | None = None) -> VerificationReport:
    """Run a registered campaign.  ``count`` sizes its random part; exhaustive parts always run."""
    if name not in CAMPAIGNS:
        raise InputError(f"unknown campaign {name!r}; known: {', '.join(CAMPAIGNS)}")
    camp = CAMPAIGNS[name]
    params = dict(params or {})
    count = camp.default_count if count is None else count
    if count < 0:
        raise InputError("count must be non-negative")
    rng = random.Random(f"{name}:{seed}")
    t0 = time.perf_counter()
    records = list(camp.run(rng, count, params))
    records.sort(key=lambda r: r.digest)
    return VerificationReport(name, seed, {**params, "count": count}, records, time.perf_counter() - t0)
