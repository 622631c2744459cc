"""Default search caps, overridable through the ``WASYNC_BUDGET`` environment variable."""

from __future__ import annotations

import os

VISITED_SETS = 2**24
SEMIGROUP_ELEMENTS = 2**20
SUBSET_TESTS = 2**20
PRODUCT_STATES = 2**22
STATE_CAPACITY = 64


def budget(default: int) -> int:
    raw = os.environ.get("WASYNC_BUDGET")
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value > 0 else default
