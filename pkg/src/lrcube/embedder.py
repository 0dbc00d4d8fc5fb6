"""Embed a layer-rainbow cube of order m in the corner of one of order n >= 2m."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .amalgamation import (
    amalgam_profile,
    coloring_stage_one,
    coloring_stage_three,
    coloring_stage_two,
    infeasible,
    validate_table,
)
from .cube import (
    LayerRainbowCube,
    VerifyReport,
    base_cube,
    contains_as_corner,
    relabel,
    transposition,
    verify,
)
from .detachment import realize, verify_realization
from .errors import InternalInvariantError, MalformedInputError

STAGES = ("amalgamate", "color", "validate", "realize", "assemble", "verify")


@dataclass
class EmbedReport:
    input_order: int
    output_order: int
    verify: VerifyReport
    corner_ok: bool
    timings: dict[str, float] = field(default_factory=dict)  # seconds per stage

    @property
    def success(self) -> bool:
        return self.verify.valid and self.corner_ok


def _normalize_corner(small: LayerRainbowCube, n: int) -> tuple[LayerRainbowCube, np.ndarray]:
    """Map the corner's symbols onto ``0..m^2-1``.

    Returns the relabelled cube and ``back``, a bijection on ``[0, n^2)`` that
    sends ``k`` to the k-th smallest corner symbol (and the rest in order).
    """
    m = small.order
    symbols = np.unique(small.cells)
    if symbols.size != m * m or symbols[0] < 0 or symbols[-1] >= n * n:
        raise MalformedInputError(
            f"order-{m} cube must use {m * m} distinct symbols below {n * n}, found {symbols.size}"
        )
    rest = np.setdiff1d(np.arange(n * n), symbols)
    back = np.concatenate([symbols, rest])
    local = np.searchsorted(symbols, small.cells)
    normal = LayerRainbowCube(local)
    report = verify(normal)
    if not report.valid:
        raise MalformedInputError("input cube is not layer-rainbow: " + report.lines()[1].strip())
    return normal, back


def embed_m1(small: LayerRainbowCube, n: int, seed: int = 0) -> LayerRainbowCube:
    """Order-1 corner: a relabelled base cube with the right symbol at the origin."""
    if small.order != 1:
        raise ValueError("embed_m1 needs an order-1 cube")
    if n < 2:
        raise infeasible(1, n)
    symbol = small[0, 0, 0]
    if not 0 <= symbol < n * n:
        raise MalformedInputError(f"symbol {symbol} outside [0, {n * n - 1}]")
    cube = base_cube(n)
    return relabel(cube, transposition(n * n, cube[0, 0, 0], symbol))


def embed(small: LayerRainbowCube, n: int, seed: int = 0) -> tuple[LayerRainbowCube, EmbedReport]:
    """Return an order-``n`` layer-rainbow cube whose ``[0, m)^3`` corner is ``small``.

    Raises :class:`InfeasibleOrderError` when ``n < 2m`` and
    :class:`MalformedInputError` when ``small`` is not layer-rainbow.
    """
    m = small.order
    if n < 2 * m:
        raise infeasible(m, n)
    timings: dict[str, float] = {}
    clock = time.perf_counter()

    def lap(stage: str) -> None:
        nonlocal clock
        now = time.perf_counter()
        timings[stage] = now - clock
        clock = now

    if m == 1:
        out = embed_m1(small, n, seed)
        lap("assemble")
    else:
        normal, back = _normalize_corner(small, n)
        profile = amalgam_profile(m, n)
        lap("amalgamate")
        table = coloring_stage_three(coloring_stage_two(coloring_stage_one(profile)))
        lap("color")
        report = validate_table(table)
        if not report.valid:
            raise InternalInvariantError("coloring failed validation: " + "; ".join(report.lines()[1:4]))
        lap("validate")
        ext = realize(table, seed)
        lap("realize")
        check = verify_realization(ext, table)
        if not check.valid:
            raise InternalInvariantError("realization failed checks: " + "; ".join(check.lines()[1:4]))
        cells = ext.colors - 1
        cells[:m, :m, :m] = normal.cells
        out = relabel(LayerRainbowCube(cells), back)
        lap("assemble")

    result = verify(out)
    corner_ok = contains_as_corner(out, small)
    lap("verify")
    return out, EmbedReport(m, n, result, corner_ok, timings)
