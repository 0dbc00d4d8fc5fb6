"""Exhaustive search for layer-rainbow extensions of a corner, for tiny orders.

Deliberately simple so that it can be trusted as an independent check of the
constructive pipeline: cells are filled in lexicographic ``(x, y, z)`` order,
symbols are tried in ascending order, and after every placement each empty
cell sharing a layer with it must keep at least one candidate symbol.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .cube import LayerRainbowCube

SEARCH_MAX_ORDER = 5


class Outcome(enum.Enum):
    FOUND = "found"
    PROVED_IMPOSSIBLE = "proved-impossible"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class SearchLimits:
    max_nodes: int = 10_000_000
    time_budget: float = 60.0  # seconds

    def __post_init__(self):
        if self.max_nodes <= 0 or self.time_budget <= 0:
            raise ValueError("search limits must be positive")


@dataclass(frozen=True)
class SearchResult:
    outcome: Outcome
    cube: LayerRainbowCube | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


@dataclass(frozen=True)
class CountResult:
    outcome: Outcome
    count: int | None
    nodes: int = 0


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, small: LayerRainbowCube, n: int, limits: SearchLimits, symmetry: bool):
        m = small.order
        if n < m:
            raise ValueError("target order is smaller than the corner")
        if n > SEARCH_MAX_ORDER:
            raise ValueError(f"exhaustive search is limited to n <= {SEARCH_MAX_ORDER}")
        self.n = n
        self.full = (1 << (n * n)) - 1
        self.limits = limits
        self.symmetry = symmetry
        self.deadline = time.monotonic() + limits.time_budget
        self.nodes = 0

        self.grid = np.full((n, n, n), -1, dtype=np.int64)
        self.grid[:m, :m, :m] = small.cells
        self.used = [[0] * n for _ in range(3)]  # used[axis][index] bitmask
        self.seen = 0  # symbols placed anywhere so far
        for (x, y, z), s in np.ndenumerate(small.cells):
            if not 0 <= s < n * n or self.used[0][x] >> s & 1:
                raise ValueError("corner is not a valid partial cube for this order")
            self._mark(x, y, z, int(s))
        self.cells = [(x, y, z) for x in range(n) for y in range(n) for z in range(n)
                      if self.grid[x, y, z] < 0]

    def _mark(self, x, y, z, s):
        bit = 1 << s
        self.used[0][x] |= bit
        self.used[1][y] |= bit
        self.used[2][z] |= bit

    def _unmark(self, x, y, z, s):
        bit = ~(1 << s)
        self.used[0][x] &= bit
        self.used[1][y] &= bit
        self.used[2][z] &= bit

    def _candidates(self, x, y, z) -> int:
        return self.full & ~(self.used[0][x] | self.used[1][y] | self.used[2][z])

    def _consistent(self, x, y, z) -> bool:
        n, g = self.n, self.grid
        for a in range(n):
            for b in range(n):
                if (g[x, a, b] < 0 and not self._candidates(x, a, b)) or \
                   (g[a, y, b] < 0 and not self._candidates(a, y, b)) or \
                   (g[a, b, z] < 0 and not self._candidates(a, b, z)):
                    return False
        return True

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.limits.max_nodes:
            raise _Budget
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _Budget

    def solutions(self, pos: int = 0) -> Iterator[LayerRainbowCube]:
        if pos == len(self.cells):
            yield LayerRainbowCube(self.grid.copy())
            return
        x, y, z = self.cells[pos]
        cand = self._candidates(x, y, z)
        fresh_done = False
        while cand:
            low = cand & -cand
            cand ^= low
            s = low.bit_length() - 1
            if self.symmetry and not (self.seen >> s & 1):
                # unseen symbols are interchangeable: try only the first one
                if fresh_done:
                    continue
                fresh_done = True
            self._tick()
            self.grid[x, y, z] = s
            self._mark(x, y, z, s)
            before = self.seen
            self.seen |= low
            if self._consistent(x, y, z):
                yield from self.solutions(pos + 1)
            self.seen = before
            self._unmark(x, y, z, s)
            self.grid[x, y, z] = -1


def brute_force_extend(small: LayerRainbowCube, n: int, limits: SearchLimits | None = None,
                       symmetry: bool = False) -> SearchResult:
    """Find one order-``n`` layer-rainbow cube with ``small`` in its corner, or prove none exists."""
    search = _Search(small, n, limits or SearchLimits(), symmetry)
    try:
        for cube in search.solutions():
            return SearchResult(Outcome.FOUND, cube, search.nodes)
    except _Budget:
        return SearchResult(Outcome.BUDGET_EXHAUSTED, None, search.nodes)
    return SearchResult(Outcome.PROVED_IMPOSSIBLE, None, search.nodes)


def iter_extensions(small: LayerRainbowCube, n: int, limits: SearchLimits | None = None,
                    symmetry: bool = False) -> Iterator[LayerRainbowCube]:
    """Every extension in search order; raises ``TimeoutError`` if the budget runs out."""
    search = _Search(small, n, limits or SearchLimits(), symmetry)
    try:
        yield from search.solutions()
    except _Budget:
        raise TimeoutError(f"search budget exhausted after {search.nodes} nodes") from None


def count_extensions(small: LayerRainbowCube, n: int, limits: SearchLimits | None = None,
                     symmetry: bool = False) -> CountResult:
    """Number of distinct extensions of ``small`` to order ``n`` (raw unless ``symmetry``)."""
    if n > 4:
        raise ValueError("counting is limited to n <= 4")
    search = _Search(small, n, limits or SearchLimits(), symmetry)
    count = 0
    try:
        for _ in search.solutions():
            count += 1
    except _Budget:
        return CountResult(Outcome.BUDGET_EXHAUSTED, None, search.nodes)
    return CountResult(Outcome.FOUND if count else Outcome.PROVED_IMPOSSIBLE, count, search.nodes)
