"""The amalgamated 6-vertex hypergraph and its three-stage coloring.

Collapsing the old indices ``[0, m)`` of each axis to one vertex (x, y, z)
and the new indices ``[m, n)`` to another (alpha, beta, gamma) turns the
cells of an order-``n`` cube outside the order-``m`` corner into a
multigraph with seven edge kinds.  Coloring that multigraph with ``n^2``
colors, subject to a handful of per-color degree rules, fixes how many cells
of each kind every symbol of the final cube will occupy.

Colors are 1-based: ``1..m^2`` are the corner's symbols, the rest are new.
Tables store color ``i`` in row ``i - 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .cube import VerifyReport
from .errors import InfeasibleOrderError, InternalInvariantError


class EdgeKind(enum.IntEnum):
    """Cell classes by which coordinates lie in the new range ``[m, n)``.

    Greek letter = new coordinate, latin letter = old coordinate, in axis
    order: ``AYZ`` has a new x and old y, z.
    """

    AYZ = 0
    BXZ = 1
    GXY = 2
    ABZ = 3
    AGY = 4
    BGX = 5
    ABG = 6

    @property
    def new_axes(self) -> tuple[bool, bool, bool]:
        return _NEW_AXES[self]

    @classmethod
    def of_cell(cls, x: int, y: int, z: int, m: int) -> "EdgeKind":
        return _KIND_BY_FLAGS[(x >= m, y >= m, z >= m)]


_NEW_AXES = {
    EdgeKind.AYZ: (True, False, False),
    EdgeKind.BXZ: (False, True, False),
    EdgeKind.GXY: (False, False, True),
    EdgeKind.ABZ: (True, True, False),
    EdgeKind.AGY: (True, False, True),
    EdgeKind.BGX: (False, True, True),
    EdgeKind.ABG: (True, True, True),
}
_KIND_BY_FLAGS = {flags: kind for kind, flags in _NEW_AXES.items()}

STAGE_ONE_KINDS = (EdgeKind.AYZ, EdgeKind.BXZ, EdgeKind.GXY)
# each two-new-axes kind pairs with the two one-new-axis kinds sharing its old vertex
STAGE_TWO_KINDS = {
    EdgeKind.ABZ: (EdgeKind.AYZ, EdgeKind.BXZ),
    EdgeKind.AGY: (EdgeKind.AYZ, EdgeKind.GXY),
    EdgeKind.BGX: (EdgeKind.BXZ, EdgeKind.GXY),
}
# kinds incident with each amalgamated vertex
OLD_VERTEX_KINDS = {
    "x": (EdgeKind.BGX, EdgeKind.BXZ, EdgeKind.GXY),
    "y": (EdgeKind.AGY, EdgeKind.AYZ, EdgeKind.GXY),
    "z": (EdgeKind.ABZ, EdgeKind.AYZ, EdgeKind.BXZ),
}
NEW_VERTEX_KINDS = {
    "alpha": (EdgeKind.AYZ, EdgeKind.ABZ, EdgeKind.AGY, EdgeKind.ABG),
    "beta": (EdgeKind.BXZ, EdgeKind.ABZ, EdgeKind.BGX, EdgeKind.ABG),
    "gamma": (EdgeKind.GXY, EdgeKind.AGY, EdgeKind.BGX, EdgeKind.ABG),
}


def ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


@dataclass(frozen=True)
class AmalgamProfile:
    m: int
    n: int
    total: tuple[int, ...]  # indexed by EdgeKind

    @property
    def kappa1_size(self) -> int:
        return self.m * self.m

    @property
    def kappa2_size(self) -> int:
        return self.n * self.n - self.m * self.m

    @property
    def colors(self) -> int:
        return self.n * self.n

    def __getitem__(self, kind: EdgeKind) -> int:
        return self.total[kind]


def amalgam_profile(m: int, n: int) -> AmalgamProfile:
    if m < 1:
        raise ValueError("m must be positive")
    if n < 2 * m:
        raise infeasible(m, n)
    d = n - m
    one, two, three = m * m * d, m * d * d, d ** 3
    return AmalgamProfile(m, n, (one, one, one, two, two, two, three))


class Necessity(NamedTuple):
    feasible: bool
    new_cells: int  # (n-m)^3
    required: int  # m^2 (n-m)
    witness: str


def necessity_check(m: int, n: int) -> Necessity:
    """Whether an order-``m`` cube can sit in the corner of an order-``n`` one.

    Every corner symbol needs ``n - m`` cells with all three coordinates new,
    so ``(n-m)^3 >= m^2 (n-m)``; the attached witness shows that count.  The
    returned flag is the exact criterion ``n >= 2m``.
    """
    if m < 1 or n < m:
        raise ValueError("need 1 <= m <= n")
    have, need = (n - m) ** 3, m * m * (n - m)
    rel = ">=" if have >= need else "<"
    witness = f"(n-m)^3 = {have} {rel} m^2(n-m) = {need}"
    return Necessity(n >= 2 * m, have, need, witness)


def infeasible(m: int, n: int) -> InfeasibleOrderError:
    witness = necessity_check(m, n).witness if n >= m else f"n = {n} < m = {m}"
    return InfeasibleOrderError(m, n, witness)


@dataclass(frozen=True)
class ColoringParameters:
    m: int
    n: int
    a: int
    a_clamped: int
    ell: int
    j: int
    half_m: int

    @property
    def regime(self) -> str:
        if self.ell == 1 and self.j in (0, 1):
            return "case1"
        if self.ell == 2 and self.j in (0, 1, 2):
            return "case2"
        return "main"


def coloring_parameters(m: int, n: int) -> ColoringParameters:
    a = ceil_div(3 * m - n, 3)
    return ColoringParameters(m, n, a, max(a, 0), n % 3, n - 2 * m, m // 2)


@dataclass(frozen=True, eq=False)
class ColorMultTable:
    """Per-color edge-kind multiplicities.

    ``by_kind[kind, i - 1]`` is the number of kind-``kind`` edges with color
    ``i``; ``mult`` is the same data transposed (color-major view).
    """

    profile: AmalgamProfile
    by_kind: np.ndarray

    def __post_init__(self):
        arr = np.array(self.by_kind, dtype=np.int32, order="C")
        if arr.shape != (7, self.profile.colors):
            raise ValueError(f"table shape {arr.shape} != (7, {self.profile.colors})")
        arr.setflags(write=False)
        object.__setattr__(self, "by_kind", arr)

    @classmethod
    def _wrap(cls, profile: AmalgamProfile, by_kind: np.ndarray) -> "ColorMultTable":
        # takes ownership of a freshly built int32 array, skipping the copy
        if by_kind.dtype != np.int32 or by_kind.shape != (7, profile.colors):
            return cls(profile, by_kind)
        table = object.__new__(cls)
        by_kind.setflags(write=False)
        object.__setattr__(table, "profile", profile)
        object.__setattr__(table, "by_kind", by_kind)
        return table

    @classmethod
    def from_rows(cls, profile: AmalgamProfile, mult) -> "ColorMultTable":
        return cls(profile, np.asarray(mult).T)

    @property
    def mult(self) -> np.ndarray:
        return self.by_kind.T

    @property
    def m(self) -> int:
        return self.profile.m

    @property
    def n(self) -> int:
        return self.profile.n

    def __getitem__(self, key):
        color, kind = key
        return int(self.by_kind[kind, color - 1])

    def __eq__(self, other):
        if not isinstance(other, ColorMultTable):
            return NotImplemented
        return self.profile == other.profile and bool(np.array_equal(self.by_kind, other.by_kind))

    def with_counts(self, by_kind: np.ndarray) -> "ColorMultTable":
        return ColorMultTable(self.profile, by_kind)

    def to_csv(self) -> str:
        rows = ["color," + ",".join(k.name for k in EdgeKind)]
        for i, row in enumerate(self.mult, start=1):
            rows.append(f"{i}," + ",".join(str(int(v)) for v in row))
        return "\n".join(rows) + "\n"


def _stage_one_column(params: ColoringParameters, k2: int, target: int, kind_index: int,
                      first_color: int) -> np.ndarray:
    """Multiplicities of one stage-one kind over the new colors, in color order."""
    a = params.a
    if params.regime == "main":
        base = params.a_clamped
        rest = target - k2 * base
        if rest < 0:
            raise InternalInvariantError(f"main case infeasible: {k2}*{base} > {target}")
        # round-robin in increasing color order; every entry starts equal so the
        # per-pass increments are uniform and the cap check reduces to the final max
        col = np.full(k2, base + rest // k2, dtype=np.int32)
        col[: rest % k2] += 1
        if col.max() > params.half_m:
            raise InternalInvariantError(
                f"main case exceeds cap {params.half_m} for (m, n) = ({params.m}, {params.n})"
            )
        return col

    colors = np.arange(first_color, first_color + k2)
    residue = colors % 3
    # residues of the color index that receive a-1 (case 1) or a (case 2)
    odd_residue = (1, 2, 0)[kind_index]
    if params.regime == "case1":
        col = np.where(residue == odd_residue, a - 1, a)
    else:
        col = np.where(residue == odd_residue, a, a - 1)
    deficit = target - int(col.sum(dtype=np.int64))
    lows = np.flatnonzero(col == a - 1)
    if deficit < 0 or deficit > lows.size:
        raise InternalInvariantError(
            f"{params.regime} top-up cannot reach {target} (deficit {deficit}, "
            f"{lows.size} raisable entries)"
        )
    col[lows[:deficit]] = a
    return col.astype(np.int32)


def coloring_stage_one(profile: AmalgamProfile) -> ColorMultTable:
    """Color the edges with exactly one new coordinate (AYZ, BXZ, GXY)."""
    m, n = profile.m, profile.n
    if m < 2:
        raise ValueError("the coloring stages need m >= 2")
    params = coloring_parameters(m, n)
    k1, k2 = profile.kappa1_size, profile.kappa2_size
    counts = np.zeros((7, profile.colors), dtype=np.int32)
    for idx, kind in enumerate(STAGE_ONE_KINDS):
        counts[kind, k1:] = _stage_one_column(params, k2, profile[kind], idx, k1 + 1)
    table = ColorMultTable._wrap(profile, counts)
    bad = _condition_one_failures(table)
    if bad:
        raise InternalInvariantError("stage one broke condition (1): " + "; ".join(bad[:5]))
    return table


def _carry_check(src: ColorMultTable, dst: ColorMultTable) -> ColorMultTable:
    object.__setattr__(dst, "_condition_one", src.__dict__["_condition_one"])
    return dst


def coloring_stage_two(table: ColorMultTable) -> ColorMultTable:
    """Color the edges with two new coordinates from the stage-one counts."""
    bad = _condition_one_failures(table)
    if bad:
        raise InternalInvariantError("stage two input violates condition (1): " + "; ".join(bad[:5]))
    m, k1 = table.m, table.profile.kappa1_size
    counts = table.by_kind.copy()
    for kind, (e, f) in STAGE_TWO_KINDS.items():
        counts[kind, :k1] = 0
        counts[kind, k1:] = m - counts[e, k1:] - counts[f, k1:]
    return _carry_check(table, ColorMultTable._wrap(table.profile, counts))


def coloring_stage_three(table: ColorMultTable) -> ColorMultTable:
    """Color the all-new (ABG) edges."""
    bad = _condition_one_failures(table)
    if bad:
        raise InternalInvariantError("stage three input violates condition (1): " + "; ".join(bad[:5]))
    m, n, k1 = table.m, table.n, table.profile.kappa1_size
    counts = table.by_kind.copy()
    counts[EdgeKind.ABG, :k1] = n - m
    counts[EdgeKind.ABG, k1:] = n - 3 * m + counts[:3, k1:].sum(axis=0)
    return _carry_check(table, ColorMultTable._wrap(table.profile, counts))


def color_amalgam(m: int, n: int) -> ColorMultTable:
    """All three coloring stages for ``K_{n,n,n} - K_{m,m,m}``."""
    table = coloring_stage_one(amalgam_profile(m, n))
    return coloring_stage_three(coloring_stage_two(table))


class TableViolation(NamedTuple):
    check: str
    detail: str

    def describe(self) -> str:
        return f"{self.check}: {self.detail}"


def _first_colors(mask: np.ndarray, offset: int = 0, limit: int = 5) -> str:
    idx = np.flatnonzero(mask)[:limit] + offset + 1
    more = "" if mask.sum() <= limit else f" (+{int(mask.sum()) - limit} more)"
    return "colors " + ", ".join(str(int(i)) for i in idx) + more


def _condition_one_failures(table: ColorMultTable) -> list[str]:
    # stages two and three keep the stage-one columns, so the answer is
    # cached on the (immutable) table and handed along
    cached = table.__dict__.get("_condition_one")
    if cached is None:
        cached = _check_condition_one(table)
        object.__setattr__(table, "_condition_one", cached)
    return cached


def _check_condition_one(table: ColorMultTable) -> list[str]:
    m, n, k1 = table.m, table.n, table.profile.kappa1_size
    ayz, bxz, gxy = table.by_kind[:3]
    out = []
    corner = (ayz[:k1] | bxz[:k1] | gxy[:k1]) != 0
    if corner.any():
        out.append("corner colors carry single-new-axis edges: " + _first_colors(corner))
    ayz, bxz, gxy = ayz[k1:], bxz[k1:], gxy[k1:]
    if min(ayz.min(), bxz.min(), gxy.min()) < 0:
        out.append("negative entry: " + _first_colors((ayz < 0) | (bxz < 0) | (gxy < 0), k1))
    if (ayz + bxz + gxy).min() < 3 * m - n:
        out.append(f"sum below 3m-n = {3 * m - n}: " + _first_colors(ayz + bxz + gxy < 3 * m - n, k1))
    high = np.maximum(np.maximum(ayz + bxz, ayz + gxy), bxz + gxy) > m
    if high.any():
        out.append(f"pair sum above m = {m}: " + _first_colors(high, k1))
    return out


def validate_table(table: ColorMultTable) -> VerifyReport:
    """Check every per-color identity and column sum of a fully colored table."""
    m, n = table.m, table.n
    k1 = table.profile.kappa1_size
    cols = table.by_kind
    v: list[TableViolation] = []

    if cols.min() < 0:
        v.append(TableViolation("non-negative", _first_colors((cols < 0).any(axis=0))))

    sums = cols.sum(axis=1, dtype=np.int64)
    for kind in EdgeKind:
        if sums[kind] != table.profile[kind]:
            v.append(TableViolation("column sum", f"{kind.name} = {int(sums[kind])}, "
                                    f"expected {table.profile[kind]}"))

    for vertex, kinds in OLD_VERTEX_KINDS.items():
        deg = cols[kinds[0]] + cols[kinds[1]] + cols[kinds[2]]
        if deg[:k1].any():
            v.append(TableViolation(f"degree {vertex}", "nonzero on corner "
                                    + _first_colors(deg[:k1] != 0)))
        if (deg[k1:] != m).any():
            v.append(TableViolation(f"degree {vertex}", "!= m on "
                                    + _first_colors(deg[k1:] != m, k1)))
    for vertex, kinds in NEW_VERTEX_KINDS.items():
        deg = cols[kinds[0]] + cols[kinds[1]] + cols[kinds[2]] + cols[kinds[3]]
        if (deg != n - m).any():
            v.append(TableViolation(f"degree {vertex}", "!= n-m on " + _first_colors(deg != n - m)))

    for msg in _check_condition_one(table):
        v.append(TableViolation("condition (1)", msg))

    for kind, (e, f) in STAGE_TWO_KINDS.items():
        bad = np.concatenate([cols[kind, :k1] != 0, cols[kind, k1:] != m - cols[e, k1:] - cols[f, k1:]])
        if bad.any():
            v.append(TableViolation("condition (2)", f"{kind.name} on " + _first_colors(bad)))

    return VerifyReport(tuple(v))
