"""Boolean matrices and exhaustive search for an all-ones product."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .budget import SEMIGROUP_ELEMENTS, budget
from .errors import InputError


@dataclass(frozen=True)
class BoolMatrix:
    """Square 0/1 matrix; ``rows[i]`` is a bit-mask whose bit ``j`` is entry (i, j)."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", tuple(rows))
        if self.n < 1 or len(rows) != self.n:
            raise InputError(f"matrix needs {self.n} rows, got {len(rows)}")
        for r in rows:
            if r < 0 or r >> self.n:
                raise InputError("row has entries outside the matrix")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> BoolMatrix:
        n = len(entries)
        return cls(n, tuple(sum(1 << j for j, x in enumerate(row) if x) for row in entries))

    @classmethod
    def identity(cls, n: int) -> BoolMatrix:
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> BoolMatrix:
        return cls(n, (0,) * n)

    @classmethod
    def ones(cls, n: int) -> BoolMatrix:
        return cls(n, ((1 << n) - 1,) * n)

    def to_lists(self) -> list[list[int]]:
        return [[r >> j & 1 for j in range(self.n)] for r in self.rows]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i] >> j & 1

    @property
    def is_positive(self) -> bool:
        full = (1 << self.n) - 1
        return all(r == full for r in self.rows)

    def __matmul__(self, other: BoolMatrix) -> BoolMatrix:
        return bool_mul(self, other)


def bool_mul(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    if a.n != b.n:
        raise InputError(f"dimension mismatch: {a.n} vs {b.n}")
    brows = b.rows
    out = []
    for r in a.rows:
        acc = 0
        while r:
            low = r & -r
            acc |= brows[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BoolMatrix(a.n, tuple(out))


def transition_matrix(a, letter: int) -> BoolMatrix:
    """Entry (q, q') is 1 iff the letter maps q to q'; undefined rows are zero."""
    if not 0 <= letter < a.n_letters:
        raise InputError(f"letter {letter} out of range 0..{a.n_letters - 1}")
    return BoolMatrix(a.n_states, tuple(0 if row[letter] < 0 else 1 << row[letter] for row in a.table))


def is_triangular(m: BoolMatrix, orientation: str) -> bool:
    """``orientation`` is ``"upper"`` (entries on/above the diagonal) or ``"lower"``."""
    if orientation == "upper":
        return all(r & ((1 << i) - 1) == 0 for i, r in enumerate(m.rows))
    if orientation == "lower":
        return all(r >> (i + 1) == 0 for i, r in enumerate(m.rows))
    raise InputError(f"unknown orientation {orientation!r}")


class _RightMultiplier:
    # row-set images through per-byte lookup tables
    def __init__(self, m: BoolMatrix):
        n = m.n
        self.luts = []
        for c in range((n + 7) // 8):
            singles = [m.rows[8 * c + b] if 8 * c + b < n else 0 for b in range(8)]
            lut = [0] * 256
            for v in range(1, 256):
                low = v & -v
                lut[v] = lut[v ^ low] | singles[low.bit_length() - 1]
            self.luts.append(lut)

    def __call__(self, rows: tuple[int, ...]) -> tuple[int, ...]:
        luts = self.luts
        out = []
        for r in rows:
            acc = 0
            c = 0
            while r:
                acc |= luts[c][r & 255]
                r >>= 8
                c += 1
            out.append(acc)
        return tuple(out)


@dataclass(frozen=True)
class ProductSearch:
    """``status`` is ``"found"``, ``"exhausted"`` (no positive product) or ``"inconclusive"``."""

    status: str
    sequence: tuple[int, ...] | None
    explored: int

    @property
    def found(self) -> bool:
        return self.status == "found"


def positive_product_search(ms: Sequence[BoolMatrix], cap: int | None = None) -> ProductSearch:
    """Shortest generator sequence whose product is all ones.

    Breadth-first over the generated semigroup, deduplicated by matrix value,
    generators tried in index order so ties break lexicographically.
    """
    if not ms:
        raise InputError("need at least one matrix")
    n = ms[0].n
    if any(m.n != n for m in ms):
        raise InputError("matrices of different dimensions")
    cap = budget(SEMIGROUP_ELEMENTS) if cap is None else cap
    full = (1 << n) - 1
    target = (full,) * n
    mults = [_RightMultiplier(m) for m in ms]
    parent: dict[tuple[int, ...], tuple[tuple[int, ...] | None, int]] = {}

    def sequence(key):
        seq = []
        while key is not None:
            key, g = parent[key]
            seq.append(g)
        return tuple(reversed(seq))

    frontier = []
    for g, m in enumerate(ms):
        if m.rows not in parent:
            parent[m.rows] = (None, g)
            if m.rows == target:
                return ProductSearch("found", sequence(m.rows), len(parent))
            frontier.append(m.rows)
    while frontier:
        nxt = []
        for rows in frontier:
            for g, mult in enumerate(mults):
                prod = mult(rows)
                if prod in parent:
                    continue
                parent[prod] = (rows, g)
                if prod == target:
                    return ProductSearch("found", sequence(prod), len(parent))
                if len(parent) >= cap:
                    return ProductSearch("inconclusive", None, len(parent))
                nxt.append(prod)
        frontier = nxt
    return ProductSearch("exhausted", None, len(parent))
