"""Turn a colored amalgam back into concrete cells.

The amalgam knows, for every color, how many cells of each edge kind it
owns but not where they are.  Placement splits one axis at a time:

1. z: each color's old-z edges get distinct z in ``[0, m)`` and its new-z
   edges distinct z in ``[m, n)``, with every z-layer receiving the same
   number of edges of each kind;
2. y: likewise, balanced over (z, old/new x) classes;
3. x: likewise, balanced over (y, z) lines.

Every split is an equitable edge coloring of a bipartite multigraph
(colors on one side, balanced classes cut into degree-``k`` copies on the
other).  That multigraph is ``k``-regular, so it decomposes into ``k``
perfect matchings and no split can get stuck.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .amalgamation import ColorMultTable, EdgeKind
from .cube import AXIS_NAMES, VerifyReport
from .errors import RealizationError

# per-kind new-axis flags as arrays indexed by EdgeKind
_NEW = np.array([k.new_axes for k in EdgeKind], dtype=bool)
_KIND_OF_FLAGS = np.zeros(8, dtype=np.int64)
_KIND_OF_FLAGS[_NEW @ np.array([4, 2, 1])] = np.arange(7)

METHODS = ("matching", "exhaustive")
EXHAUSTIVE_MAX_ORDER = 6


def split_function(m: int, n: int) -> dict[str, int]:
    """Number of subvertices each amalgamated vertex splits into."""
    return {"x": m, "y": m, "z": m, "alpha": n - m, "beta": n - m, "gamma": n - m}


@dataclass(frozen=True, eq=False)
class ColoredExtension:
    """Colors of every cell of ``[0, n)^3`` outside the ``[0, m)^3`` corner.

    ``colors`` is an ``n x n x n`` array of 1-based colors; corner cells hold 0.
    """

    m: int
    n: int
    colors: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.colors, dtype=np.int64)
        if arr.shape != (self.n,) * 3:
            raise ValueError(f"colors must be {self.n}^3, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "colors", arr)

    def color(self, x: int, y: int, z: int) -> int:
        if max(x, y, z) < self.m:
            raise KeyError((x, y, z))
        return int(self.colors[x, y, z])

    def extension_mask(self) -> np.ndarray:
        mask = np.ones((self.n,) * 3, dtype=bool)
        mask[: self.m, : self.m, : self.m] = False
        return mask

    def __eq__(self, other):
        if not isinstance(other, ColoredExtension):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and bool(np.array_equal(self.colors, other.colors))

    def dump(self) -> str:
        """``x y z color`` per extension cell, lexicographic (0-based coords)."""
        xs, ys, zs = np.nonzero(self.extension_mask())
        cs = self.colors[xs, ys, zs]
        return "".join(f"{x} {y} {z} {c}\n" for x, y, z, c in zip(xs, ys, zs, cs))


class _Edges:
    """Flat edge list: one entry per extension cell, coordinates filled in as splits run."""

    def __init__(self, table: ColorMultTable):
        counts = table.mult.astype(np.int64)
        colors = np.repeat(np.arange(counts.shape[0]), counts.sum(axis=1))
        kinds = np.concatenate([np.repeat(np.arange(7), row) for row in counts]) \
            if counts.size else np.zeros(0, dtype=np.int64)
        self.color = colors  # 0-based
        self.kind = kinds
        self.new = _NEW[kinds]  # (E, 3) bool
        self.coord = np.full((colors.size, 3), -1, dtype=np.int64)

    def snapshot(self) -> dict:
        return {"color": self.color + 1, "kind": self.kind.copy(), "coord": self.coord.copy()}


def equitable_labels(left: np.ndarray, group: np.ndarray, k: int,
                     rng: np.random.Generator) -> np.ndarray:
    """Label edges ``0..k-1`` so each left vertex sees every label once and
    each group sees every label ``size/k`` times.

    Every left vertex must have degree exactly ``k`` and every group a size
    divisible by ``k``.  Groups are cut into degree-``k`` copies, giving a
    ``k``-regular bipartite multigraph, which is peeled one perfect matching
    per label.
    """
    e = left.size
    labels = np.full(e, -1, dtype=np.int64)
    if e == 0:
        return labels
    _check_split_input(left, group, k)

    # random order decides which edges of a group share a copy
    order = rng.permutation(e)
    order = order[np.argsort(group[order], kind="stable")]
    copy = np.empty(e, dtype=np.int64)
    copy[order] = np.arange(e) // k

    # relabel vertices densely, shuffled so the matcher's tie-breaking follows the seed
    lefts, left_idx = np.unique(left, return_inverse=True)
    n_left, n_right = lefts.size, e // k
    left_idx = rng.permutation(n_left)[left_idx]
    right_idx = rng.permutation(n_right)[copy]

    # edges grouped by (left, right) pair; pair p owns edges by_pair[start[p]:start[p]+mult[p]]
    key = left_idx * n_right + right_idx
    by_pair = np.argsort(key, kind="stable")
    pair_keys, start, mult = np.unique(key[by_pair], return_index=True, return_counts=True)
    used = np.zeros(pair_keys.size, dtype=np.int64)

    for label in range(k):
        live = used < mult
        rows, cols = np.divmod(pair_keys[live], n_right)
        graph = csr_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)),
                           shape=(n_left, n_right))
        match = maximum_bipartite_matching(graph, perm_type="column")
        if (match < 0).any():
            raise RealizationError(
                f"no perfect matching for label {label} of {k} "
                f"({int((match < 0).sum())} unmatched)", partial=labels)
        p = np.searchsorted(pair_keys, np.arange(n_left) * n_right + match)
        labels[by_pair[start[p] + used[p]]] = label
        used[p] += 1
    return labels


def _check_split_input(left: np.ndarray, group: np.ndarray, k: int) -> None:
    _, deg = np.unique(left, return_counts=True)
    if (deg != k).any():
        raise RealizationError(f"left degrees {sorted(set(deg.tolist()))} != {k}")
    _, size = np.unique(group, return_counts=True)
    if (size % k).any():
        raise RealizationError(f"group sizes {sorted(set(size.tolist()))} not divisible by {k}")


def equitable_labels_exhaustive(left: np.ndarray, group: np.ndarray, k: int,
                                rng: np.random.Generator | None = None) -> np.ndarray:
    """Same contract as :func:`equitable_labels`, by plain backtracking.

    Edges are labelled in order of their left vertex; a label is allowed when
    the left vertex has not used it and the group still has room for it.
    Only meant for tiny instances where it acts as an independent check.
    """
    e = left.size
    labels = np.full(e, -1, dtype=np.int64)
    if e == 0:
        return labels
    _check_split_input(left, group, k)
    groups, gidx = np.unique(group, return_inverse=True)
    room = np.repeat((np.bincount(gidx) // k)[:, None], k, axis=1)
    order = np.argsort(left, kind="stable")
    lv = left[order].tolist()
    gv = gidx[order].tolist()
    room = room.tolist()
    out = [-1] * e
    used_by_left: dict[int, set[int]] = {}

    pos = 0
    nxt = [0] * e
    while 0 <= pos < e:
        seen = used_by_left.setdefault(lv[pos], set())
        if out[pos] >= 0:  # undo previous choice, try the next label
            seen.discard(out[pos])
            room[gv[pos]][out[pos]] += 1
            out[pos] = -1
        for lab in range(nxt[pos], k):
            if lab not in seen and room[gv[pos]][lab] > 0:
                out[pos] = lab
                nxt[pos] = lab + 1
                seen.add(lab)
                room[gv[pos]][lab] -= 1
                pos += 1
                if pos < e:
                    nxt[pos] = 0
                break
        else:
            pos -= 1
    if pos < 0:
        raise RealizationError("exhaustive split found no labelling")
    labels[order] = out
    return labels


def realize(table: ColorMultTable, seed: int = 0, method: str = "matching") -> ColoredExtension:
    """Place every colored amalgam edge on a distinct cell outside the corner.

    ``table`` must pass :func:`validate_table`.  The result is deterministic
    for a given ``(table, seed, method)``.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    m, n = table.m, table.n
    if method == "exhaustive" and n > EXHAUSTIVE_MAX_ORDER:
        raise ValueError(f"exhaustive realization is limited to n <= {EXHAUSTIVE_MAX_ORDER}")
    split = equitable_labels if method == "matching" else equitable_labels_exhaustive
    rng = np.random.default_rng(np.uint64(seed & 0xFFFFFFFFFFFFFFFF))
    edges = _Edges(table)

    # (axis, how to form the balancing group from already placed coordinates)
    plan = (
        (2, lambda sel: edges.kind[sel]),
        (1, lambda sel: edges.coord[sel, 2] * 2 + edges.new[sel, 0]),
        (0, lambda sel: edges.coord[sel, 1] * n + edges.coord[sel, 2]),
    )
    for axis, grouping in plan:
        for is_new, k, offset in ((False, m, 0), (True, n - m, m)):
            sel = np.flatnonzero(edges.new[:, axis] == is_new)
            try:
                lab = split(edges.color[sel], grouping(sel), k, rng)
            except RealizationError as exc:
                raise RealizationError(
                    f"split of axis {AXIS_NAMES[axis]} ({'new' if is_new else 'old'} range) "
                    f"failed for (m, n) = ({m}, {n}): {exc}",
                    partial=edges.snapshot(),
                ) from exc
            edges.coord[sel, axis] = lab + offset

    colors = np.zeros((n, n, n), dtype=np.int64)
    x, y, z = edges.coord.T
    if edges.color.size and (np.bincount(x * n * n + y * n + z, minlength=n ** 3) > 1).any():
        raise RealizationError("two edges landed on the same cell", partial=edges.snapshot())
    colors[x, y, z] = edges.color + 1
    return ColoredExtension(m, n, colors)


class RealizationViolation(NamedTuple):
    check: str
    detail: str

    def describe(self) -> str:
        return f"{self.check}: {self.detail}"


def _listing(idx: np.ndarray, limit: int = 5) -> str:
    shown = ", ".join(str(int(i)) for i in idx[:limit])
    return shown + (f" (+{idx.size - limit} more)" if idx.size > limit else "")


def verify_realization(ext: ColoredExtension, table: ColorMultTable) -> VerifyReport:
    """Check a colored extension against the detachment conditions and the table."""
    m, n = ext.m, ext.n
    ncol = n * n
    v: list[RealizationViolation] = []
    if (table.m, table.n) != (m, n):
        return VerifyReport((RealizationViolation("orders", f"table is for {(table.m, table.n)}, "
                                                  f"extension for {(m, n)}"),))

    mask = ext.extension_mask()
    cols = ext.colors[mask]
    bad = (cols < 1) | (cols > ncol)
    if bad.any():
        cells = np.argwhere(mask)[bad]
        v.append(RealizationViolation("uncolored or out of range",
                                      f"{int(bad.sum())} cells, e.g. {tuple(int(c) for c in cells[0])}"))
        return VerifyReport(tuple(v))

    coords = np.nonzero(mask)
    c0 = cols - 1
    k1 = m * m
    for axis in range(3):
        hits = np.bincount(c0 * n + coords[axis], minlength=ncol * n).reshape(ncol, n)
        dup = np.flatnonzero((hits > 1).any(axis=1)) + 1
        if dup.size:
            v.append(RealizationViolation(f"repeated {AXIS_NAMES[axis]}", "colors " + _listing(dup)))
        expect = np.ones((ncol, n), dtype=np.int64)
        expect[:k1, :m] = 0
        off = np.flatnonzero((hits != expect).any(axis=1)) + 1
        if off.size:
            v.append(RealizationViolation(f"{AXIS_NAMES[axis]} coverage", "colors " + _listing(off)))

    flags = [(coords[a] >= m).astype(np.int64) for a in range(3)]
    kinds = _KIND_OF_FLAGS[4 * flags[0] + 2 * flags[1] + flags[2]]
    census = np.bincount(c0 * 7 + kinds, minlength=ncol * 7).reshape(ncol, 7)
    wrong = np.flatnonzero((census != table.mult).any(axis=1)) + 1
    if wrong.size:
        v.append(RealizationViolation("kind census", "colors " + _listing(wrong)))
    return VerifyReport(tuple(v))
