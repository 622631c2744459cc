"""Complete and partial deterministic automata, state sets and structural predicates.

States and letters are 0-indexed integers.  A transition table is a tuple of
rows, one per state, each holding one target per letter.  Partial automata
use ``UNDEFINED`` (-1) for missing transitions.

State sets are carried as Python ints used as bit-vectors; ``StateSet`` wraps
such a mask together with the size of its universe.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .errors import InputError

UNDEFINED = -1

Word = tuple[int, ...]


def popcount(mask: int) -> int:
    return mask.bit_count()


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class StateSet:
    """An immutable subset of ``range(universe_size)``."""

    universe_size: int
    mask: int

    def __post_init__(self):
        if self.universe_size < 0:
            raise InputError("universe size must be non-negative")
        if self.mask < 0 or self.mask >> self.universe_size:
            raise InputError(f"state set {self.mask:#x} exceeds universe of size {self.universe_size}")

    @classmethod
    def of(cls, universe_size: int, members: Iterable[int]) -> StateSet:
        mask = 0
        for q in members:
            q = int(q)
            if not 0 <= q < universe_size:
                raise InputError(f"state {q} out of range 0..{universe_size - 1}")
            mask |= 1 << q
        return cls(universe_size, mask)

    @classmethod
    def full(cls, universe_size: int) -> StateSet:
        return cls(universe_size, (1 << universe_size) - 1)

    @classmethod
    def empty(cls, universe_size: int) -> StateSet:
        return cls(universe_size, 0)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, q: object) -> bool:
        return isinstance(q, int) and 0 <= q < self.universe_size and bool(self.mask >> q & 1)

    def _same(self, other: StateSet) -> None:
        if self.universe_size != other.universe_size:
            raise InputError("state sets over different universes")

    def __or__(self, other: StateSet) -> StateSet:
        self._same(other)
        return StateSet(self.universe_size, self.mask | other.mask)

    def __and__(self, other: StateSet) -> StateSet:
        self._same(other)
        return StateSet(self.universe_size, self.mask & other.mask)

    def __sub__(self, other: StateSet) -> StateSet:
        self._same(other)
        return StateSet(self.universe_size, self.mask & ~other.mask)

    def issubset(self, other: StateSet) -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    def __repr__(self) -> str:
        return f"StateSet({self.universe_size}, {set(self.members) or '{}'})"


class _Stepper:
    """Image of a bit-mask under one letter, via per-byte lookup tables."""

    __slots__ = ("n", "tables", "undefined")

    def __init__(self, table: Sequence[Sequence[int]], n_letters: int):
        n = len(table)
        self.n = n
        chunks = (n + 7) // 8
        self.tables: list[list[list[int]]] = []
        self.undefined: list[int] = []
        for a in range(n_letters):
            undefined = 0
            per_chunk = []
            for c in range(chunks):
                singles = []
                for b in range(8):
                    q = 8 * c + b
                    if q < n and table[q][a] != UNDEFINED:
                        singles.append(1 << table[q][a])
                    else:
                        if q < n:
                            undefined |= 1 << q
                        singles.append(0)
                lut = [0] * 256
                for v in range(1, 256):
                    low = v & -v
                    lut[v] = lut[v ^ low] | singles[low.bit_length() - 1]
                per_chunk.append(lut)
            self.tables.append(per_chunk)
            self.undefined.append(undefined)

    def step(self, mask: int, letter: int) -> int:
        """Image of ``mask``; states with an undefined transition are dropped."""
        luts = self.tables[letter]
        out = 0
        c = 0
        while mask:
            out |= luts[c][mask & 255]
            mask >>= 8
            c += 1
        return out

    def careful_step(self, mask: int, letter: int) -> int | None:
        if mask & self.undefined[letter]:
            return None
        return self.step(mask, letter)


@dataclass(frozen=True)
class _Automaton:
    table: tuple[tuple[int, ...], ...]
    letter_names: tuple[str, ...] | None = None
    state_names: tuple[str, ...] | None = None

    partial = False

    def __post_init__(self):
        table = tuple(tuple(int(t) for t in row) for row in self.table)
        object.__setattr__(self, "table", table)
        if not table:
            raise InputError("an automaton needs at least one state")
        k = len(table[0])
        if k == 0:
            raise InputError("an automaton needs at least one letter")
        n = len(table)
        for q, row in enumerate(table):
            if len(row) != k:
                raise InputError(f"state {q} has {len(row)} transitions, expected {k}")
            for a, t in enumerate(row):
                if t == UNDEFINED and self.partial:
                    continue
                if not 0 <= t < n:
                    raise InputError(f"transition ({q}, {a}) -> {t} is not a valid state")
        for attr, size in (("letter_names", k), ("state_names", n)):
            names = getattr(self, attr)
            if names is None:
                continue
            names = tuple(str(x) for x in names)
            object.__setattr__(self, attr, names)
            if len(names) != size:
                raise InputError(f"{attr} has {len(names)} entries, expected {size}")
            if len(set(names)) != size:
                raise InputError(f"{attr} are not unique")
            for x in names:
                if not x or any(ch.isspace() for ch in x) or x.startswith("#") or "," in x:
                    raise InputError(f"invalid name {x!r} in {attr}")

    @property
    def n_states(self) -> int:
        return len(self.table)

    @property
    def n_letters(self) -> int:
        return len(self.table[0])

    @cached_property
    def _stepper(self) -> _Stepper:
        return _Stepper(self.table, self.n_letters)

    @property
    def all_states(self) -> StateSet:
        return StateSet.full(self.n_states)

    def delta(self, q: int, a: int) -> int:
        return self.table[q][a]

    def letter_label(self, a: int) -> str:
        if self.letter_names is not None:
            return self.letter_names[a]
        if self.n_letters <= 2:
            return str(a)
        return f"a{a}"

    def state_label(self, q: int) -> str:
        return self.state_names[q] if self.state_names is not None else str(q)

    def render(self, word: Sequence[int]) -> str:
        """Letters concatenated when every label is one character, else space-separated."""
        labels = [self.letter_label(a) for a in word]
        if all(len(self.letter_label(a)) == 1 for a in range(self.n_letters)):
            return "".join(labels)
        return " ".join(labels)

    def render_set(self, s: StateSet | int) -> str:
        mask = s.mask if isinstance(s, StateSet) else s
        return "{" + ", ".join(self.state_label(q) for q in bits(mask)) + "}"

    def parse_word(self, text: str) -> Word:
        """Inverse of :meth:`render`."""
        labels = {self.letter_label(a): a for a in range(self.n_letters)}
        tokens = text.split() if any(ch.isspace() for ch in text.strip()) else None
        if tokens is None:
            single = all(len(x) == 1 for x in labels)
            tokens = list(text.strip()) if single else ([text.strip()] if text.strip() else [])
        try:
            return tuple(labels[t] for t in tokens)
        except KeyError as exc:
            raise InputError(f"unknown letter {exc.args[0]!r}") from None

    def state_index(self, token: str) -> int:
        token = token.strip()
        if self.state_names is not None and token in self.state_names:
            return self.state_names.index(token)
        try:
            q = int(token)
        except ValueError:
            raise InputError(f"unknown state {token!r}") from None
        if not 0 <= q < self.n_states:
            raise InputError(f"state {q} out of range 0..{self.n_states - 1}")
        return q

    def parse_states(self, text: str) -> StateSet:
        """Comma-separated state indices or names."""
        tokens = [t for t in text.split(",") if t.strip()]
        return StateSet.of(self.n_states, (self.state_index(t) for t in tokens))

    def state_set(self, members: Iterable[int]) -> StateSet:
        return StateSet.of(self.n_states, members)

    def _check_word(self, w: Sequence[int]) -> None:
        for a in w:
            if not 0 <= a < self.n_letters:
                raise InputError(f"letter {a} out of range 0..{self.n_letters - 1}")

    def _check_state(self, q: int) -> None:
        if not 0 <= q < self.n_states:
            raise InputError(f"state {q} out of range 0..{self.n_states - 1}")

    def _as_mask(self, s: StateSet | Iterable[int]) -> int:
        if isinstance(s, StateSet):
            if s.universe_size != self.n_states:
                raise InputError(
                    f"state set over {s.universe_size} states used with a {self.n_states}-state automaton"
                )
            return s.mask
        return StateSet.of(self.n_states, s).mask


@dataclass(frozen=True)
class Dfa(_Automaton):
    """Complete deterministic automaton without initial or accepting states."""


@dataclass(frozen=True)
class PartialDfa(_Automaton):
    """Deterministic automaton whose table may contain ``UNDEFINED`` entries."""

    partial = True

    @property
    def is_complete(self) -> bool:
        return all(t != UNDEFINED for row in self.table for t in row)

    def to_dfa(self) -> Dfa:
        if not self.is_complete:
            raise InputError("partial automaton has undefined transitions")
        return Dfa(self.table, self.letter_names, self.state_names)

    @classmethod
    def from_dfa(cls, a: Dfa) -> PartialDfa:
        return cls(a.table, a.letter_names, a.state_names)


Automaton = Union[Dfa, PartialDfa]


def apply(a: Dfa, q: int, w: Sequence[int]) -> int:
    """Fold ``w`` left to right from state ``q``."""
    a._check_state(q)
    a._check_word(w)
    table = a.table
    for x in w:
        q = table[q][x]
        if q == UNDEFINED:
            raise InputError("word leaves the domain of the partial transition function")
    return q


def image(a: Automaton, s: StateSet | Iterable[int], w: Sequence[int]) -> StateSet:
    mask = a._as_mask(s)
    a._check_word(w)
    step = a._stepper.step
    for x in w:
        mask = step(mask, x)
    return StateSet(a.n_states, mask)


@dataclass(frozen=True)
class UndefinedStep:
    """Where a careful application of a word failed."""

    position: int
    state: int
    letter: int


def partial_image(a: Automaton, s: StateSet | Iterable[int], w: Sequence[int]) -> StateSet | UndefinedStep:
    """Image of ``s`` under ``w`` if every prefix is defined on the running image.

    A failure is returned as :class:`UndefinedStep`, naming the first position,
    the lowest offending state and the letter.
    """
    mask = a._as_mask(s)
    a._check_word(w)
    stepper = a._stepper
    for i, x in enumerate(w):
        bad = mask & stepper.undefined[x]
        if bad:
            return UndefinedStep(i, (bad & -bad).bit_length() - 1, x)
        mask = stepper.step(mask, x)
    return StateSet(a.n_states, mask)


@dataclass(frozen=True)
class TopoOrder:
    """A topological sort: ``sequence`` lists states in order, ``position`` inverts it."""

    sequence: tuple[int, ...]
    position: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        pos = [0] * len(self.sequence)
        for i, q in enumerate(self.sequence):
            pos[q] = i
        object.__setattr__(self, "position", tuple(pos))

    def respects(self, a: Automaton) -> bool:
        for q, row in enumerate(a.table):
            for t in row:
                if t != UNDEFINED and t != q and self.position[q] >= self.position[t]:
                    return False
        return True


@dataclass(frozen=True)
class NotWeaklyAcyclic:
    """Outcome of a failed topological sort; ``cycle`` is a simple cycle of length >= 2."""

    cycle: tuple[int, ...]

    def __bool__(self) -> bool:
        return False


def _successors(a: Automaton) -> list[list[int]]:
    succ = []
    for q, row in enumerate(a.table):
        succ.append(sorted({t for t in row if t != UNDEFINED and t != q}))
    return succ


def topological_sort(a: Automaton) -> TopoOrder | NotWeaklyAcyclic:
    """Kahn's algorithm over non-self-loop transitions, smallest index first."""
    n = a.n_states
    succ = _successors(a)
    indeg = [0] * n
    for q in range(n):
        for t in succ[q]:
            indeg[t] += 1
    heap = [q for q in range(n) if indeg[q] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        q = heapq.heappop(heap)
        order.append(q)
        for t in succ[q]:
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(heap, t)
    if len(order) == n:
        return TopoOrder(tuple(order))
    return NotWeaklyAcyclic(_find_cycle(succ, {q for q in range(n) if indeg[q] > 0}))


def _find_cycle(succ: list[list[int]], remaining: set[int]) -> tuple[int, ...]:
    # every remaining state keeps a predecessor inside ``remaining``
    pred: dict[int, int] = {}
    for q in sorted(remaining):
        for t in succ[q]:
            if t in remaining and t not in pred:
                pred[t] = q
    q = min(remaining)
    seen: dict[int, int] = {}
    path = []
    while q not in seen:
        seen[q] = len(path)
        path.append(q)
        q = pred[q]
    cycle = path[seen[q]:]
    cycle.reverse()
    i = cycle.index(min(cycle))
    return tuple(cycle[i:] + cycle[:i])


def is_weakly_acyclic(a: Automaton) -> bool:
    return isinstance(topological_sort(a), TopoOrder)


def sink_states(a: Automaton) -> StateSet:
    mask = 0
    for q, row in enumerate(a.table):
        if all(t == q for t in row):
            mask |= 1 << q
    return StateSet(a.n_states, mask)


def in_degrees(a: Automaton) -> tuple[int, ...]:
    deg = [0] * a.n_states
    for row in a.table:
        for t in row:
            if t != UNDEFINED:
                deg[t] += 1
    return tuple(deg)


def is_eulerian(a: Automaton) -> tuple[bool, tuple[int, ...]]:
    """Whether every state has in-degree ``n_letters``, with the per-state in-degrees."""
    deg = in_degrees(a)
    return all(d == a.n_letters for d in deg), deg


def identity_dfa(n: int, k: int = 1) -> Dfa:
    return Dfa(tuple(tuple(q for _ in range(k)) for q in range(n)))
