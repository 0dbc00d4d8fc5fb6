"""Layer-rainbow latin cubes: representation, checking, construction, text I/O.

A cube of order ``n`` is an ``n x n x n`` integer array indexed ``(x, y, z)``
whose entries are symbols ``0 .. n*n - 1``.  It is layer-rainbow when each of
its ``3n`` axis-aligned layers holds every symbol exactly once.

Symbols are 0-based in memory and 1-based in the text format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import MalformedInputError

AXIS_NAMES = ("x", "y", "z")


class Violation(NamedTuple):
    axis: int
    layer: int
    symbol: int
    count: int

    def describe(self) -> str:
        return (
            f"layer {AXIS_NAMES[self.axis]}={self.layer}: "
            f"symbol {self.symbol + 1} occurs {self.count} times"
        )


@dataclass(frozen=True)
class VerifyReport:
    """Result of a check.  ``violations`` may hold any printable records."""

    violations: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def lines(self) -> list[str]:
        if self.valid:
            return ["valid"]
        out = [f"invalid: {len(self.violations)} violation(s)"]
        for v in self.violations:
            out.append("  " + (v.describe() if hasattr(v, "describe") else str(v)))
        return out


@dataclass(frozen=True, eq=False)
class LayerRainbowCube:
    """An order-``n`` symbol cube.

    Construction only checks the shape; use :func:`verify` to check the
    layer-rainbow property.  The backing array is made read-only.
    """

    cells: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.cells, dtype=np.int64, copy=True)
        if arr.ndim != 3 or len(set(arr.shape)) != 1 or arr.shape[0] < 1:
            raise MalformedInputError(f"expected an n x n x n array, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)

    @property
    def order(self) -> int:
        return self.cells.shape[0]

    def __getitem__(self, xyz):
        return int(self.cells[xyz])

    def __eq__(self, other):
        if not isinstance(other, LayerRainbowCube):
            return NotImplemented
        return self.cells.shape == other.cells.shape and bool(np.array_equal(self.cells, other.cells))

    def __hash__(self):
        return hash((self.order, self.cells.tobytes()))

    def __repr__(self):
        return f"LayerRainbowCube(order={self.order})"


def _check_range(cube: LayerRainbowCube) -> None:
    n = cube.order
    lo, hi = int(cube.cells.min()), int(cube.cells.max())
    if lo < 0 or hi >= n * n:
        bad = np.argwhere((cube.cells < 0) | (cube.cells >= n * n))[0]
        raise MalformedInputError(
            f"symbol {int(cube.cells[tuple(bad)])} at {tuple(int(b) for b in bad)} "
            f"outside [0, {n * n - 1}]"
        )


def layer_counts(cube: LayerRainbowCube, axis: int) -> np.ndarray:
    """``counts[layer, symbol]`` for the layers perpendicular to ``axis``."""
    n = cube.order
    flat = np.moveaxis(cube.cells, axis, 0).reshape(n, n * n)
    keys = flat + (np.arange(n) * n * n)[:, None]
    return np.bincount(keys.ravel(), minlength=n * n * n).reshape(n, n * n)


def verify(cube: LayerRainbowCube) -> VerifyReport:
    """Check that every layer along every axis contains each symbol once.

    Raises :class:`MalformedInputError` for out-of-range symbols; a well-formed
    but non-rainbow cube yields a report with ``valid == False``.
    """
    _check_range(cube)
    violations = []
    for axis in range(3):
        counts = layer_counts(cube, axis)
        for layer, symbol in np.argwhere(counts != 1):
            violations.append(Violation(axis, int(layer), int(symbol), int(counts[layer, symbol])))
    return VerifyReport(tuple(violations))


def base_cube(n: int) -> LayerRainbowCube:
    """The cube with ``cell(x, y, z) = n*((x+z) % n) + (y+z) % n``."""
    if n < 1:
        raise ValueError("order must be positive")
    x, y, z = np.ogrid[:n, :n, :n]
    cube = LayerRainbowCube(n * ((x + z) % n) + (y + z) % n)
    if __debug__ and n <= 64:
        assert verify(cube).valid
    return cube


def relabel(cube: LayerRainbowCube, perm: Sequence[int] | np.ndarray) -> LayerRainbowCube:
    """Replace each symbol ``s`` by ``perm[s]``; ``perm`` must be a bijection of [0, n^2)."""
    p = np.asarray(perm, dtype=np.int64)
    size = cube.order ** 2
    if p.shape != (size,) or not np.array_equal(np.sort(p), np.arange(size)):
        raise ValueError(f"perm is not a bijection on [0, {size})")
    return LayerRainbowCube(p[cube.cells])


def transposition(size: int, a: int, b: int) -> np.ndarray:
    perm = np.arange(size)
    perm[a], perm[b] = b, a
    return perm


def contains_as_corner(big: LayerRainbowCube, small: LayerRainbowCube) -> bool:
    m = small.order
    if m > big.order:
        raise ValueError("small cube is larger than big cube")
    return bool(np.array_equal(big.cells[:m, :m, :m], small.cells))


def permute_layers(cube: LayerRainbowCube, axis: int, order: Sequence[int]) -> LayerRainbowCube:
    return LayerRainbowCube(np.take(cube.cells, np.asarray(order), axis=axis))


# -- text format ------------------------------------------------------------
#
# line 1: n
# then n blocks (z = 0..n-1) separated by blank lines; block row r lists the
# cells (x=r, y=0..n-1, z) as 1-based symbols.


def serialize(cube: LayerRainbowCube) -> str:
    n = cube.order
    blocks = []
    for z in range(n):
        rows = (" ".join(str(int(s) + 1) for s in cube.cells[x, :, z]) for x in range(n))
        blocks.append("\n".join(rows))
    return f"{n}\n" + "\n\n".join(blocks) + "\n"


def parse(text: str) -> LayerRainbowCube:
    """Parse the text cube format, reporting problems with line/column positions."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MalformedInputError("line 1: empty input")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise MalformedInputError(f"line 1: expected the order, got {lines[0]!r}") from None
    if n < 1:
        raise MalformedInputError(f"line 1: order must be positive, got {n}")

    cells = np.zeros((n, n, n), dtype=np.int64)
    lineno = 1
    for z in range(n):
        if z > 0:
            lineno += 1
            if lineno > len(lines):
                raise MalformedInputError(f"line {lineno}: unexpected end of input, expected block z={z}")
            if lines[lineno - 1].strip():
                raise MalformedInputError(f"line {lineno}: expected a blank line before block z={z}")
        for x in range(n):
            lineno += 1
            if lineno > len(lines):
                raise MalformedInputError(f"line {lineno}: unexpected end of input in block z={z}")
            cells[x, :, z] = _parse_row(lines[lineno - 1], lineno, n)
    for extra in range(lineno, len(lines)):
        if lines[extra].strip():
            raise MalformedInputError(f"line {extra + 1}: trailing content after {n} blocks")
    return LayerRainbowCube(cells)


def _parse_row(line: str, lineno: int, n: int) -> list[int]:
    values = []
    for match in re.finditer(r"\S+", line):
        col = match.start() + 1
        try:
            v = int(match.group())
        except ValueError:
            raise MalformedInputError(
                f"line {lineno}, column {col}: not an integer: {match.group()!r}"
            ) from None
        if not 1 <= v <= n * n:
            raise MalformedInputError(f"line {lineno}, column {col}: symbol {v} outside [1, {n * n}]")
        values.append(v - 1)
    if len(values) != n:
        raise MalformedInputError(f"line {lineno}: expected {n} symbols, found {len(values)}")
    return values


def read_cube(path) -> LayerRainbowCube:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_cube(cube: LayerRainbowCube, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(cube))


def from_layers(layers: Iterable[Sequence[Sequence[int]]], one_based: bool = True) -> LayerRainbowCube:
    """Build a cube from z-layers, each given as rows indexed by x."""
    arr = np.stack([np.asarray(layer, dtype=np.int64) for layer in layers], axis=-1)
    return LayerRainbowCube(arr - 1 if one_based else arr)
