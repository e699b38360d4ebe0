"""Point-hyperplane incidence of PG(n, q) under the polarity of a quadratic form.

The hyperplane attached to point ``P_j`` is ``P_j^perp = {R : <P_j, R> = 0}``,
and entry ``(i, j)`` of the full matrix is 1 iff ``<P_i, P_j> = 0``.  The form
is symmetric, so the matrix is symmetric and it does not matter whether rows
or columns are read as the hyperplanes.  Hyperplane rows reuse the index of
their pole, so every block whose row and column classes agree is square
with a meaningful diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .gf2 import BitMatrix
from .quadratic import PointClass, PointTable, QuadraticSpace

MAX_MATRIX_POINTS = 100_000
_CHUNK = 1024

TWO_BLOCK_NAMES = ("A11", "A12", "A21", "A22")
NINE_BLOCK_NAMES = tuple(f"B{i}{j}" for i in range(1, 4) for j in range(1, 4))
BLOCK_NAMES = ("full",) + TWO_BLOCK_NAMES + NINE_BLOCK_NAMES

_NINE_ORDER = (PointClass.SQUARE, PointClass.NONSQUARE, PointClass.ISOTROPIC)


def incidence_bool(space: QuadraticSpace, table: PointTable | None = None,
                   max_points: int = MAX_MATRIX_POINTS) -> np.ndarray:
    """Dense boolean incidence matrix, ``[<P_i, P_j> == 0]``."""
    table = table if table is not None else space.points()
    n_pts = len(table)
    if n_pts > max_points:
        raise ValueError(f"{n_pts} points exceed the matrix bound {max_points}")
    F = space.field
    pts = table.coords
    polar = F.matmul(pts, space.gram)  # dual coordinates of each hyperplane
    out = np.empty((n_pts, n_pts), dtype=bool)
    pts_t = pts.T
    for start in range(0, n_pts, _CHUNK):
        out[start : start + _CHUNK] = F.matmul(polar[start : start + _CHUNK], pts_t) == 0
    return out


def full_matrix(space: QuadraticSpace, table: PointTable | None = None,
                max_points: int = MAX_MATRIX_POINTS) -> BitMatrix:
    return BitMatrix.from_bool(incidence_bool(space, table, max_points))


@dataclass
class BlockDecomposition:
    """The full incidence matrix together with its two- and nine-block slicings.

    ``A11..A22`` group points as (anisotropic, isotropic); ``B11..B33`` group
    them as (square, nonsquare, isotropic).  Row block ``i`` holds the
    hyperplanes of the points in column class ``i``.
    """

    space: QuadraticSpace
    table: PointTable
    bits: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, space: QuadraticSpace, max_points: int = MAX_MATRIX_POINTS) -> BlockDecomposition:
        table = space.points()
        return cls(space, table, incidence_bool(space, table, max_points))

    @cached_property
    def full(self) -> BitMatrix:
        return BitMatrix.from_bool(self.bits)

    @cached_property
    def groups(self) -> dict[str, np.ndarray]:
        """Global point indices of each block position."""
        idx = self.table.index
        out = {
            "aniso": self.table.anisotropic,
            "iso": idx[PointClass.ISOTROPIC],
        }
        for i, cls in enumerate(_NINE_ORDER, start=1):
            out[f"c{i}"] = idx[cls]
        return out

    def index_maps(self, name: str) -> tuple[np.ndarray, np.ndarray]:
        """Global (row, column) indices of the named block."""
        if name == "full":
            everything = np.arange(len(self.table))
            return everything, everything
        g = self.groups
        if name in TWO_BLOCK_NAMES:
            keys = ("aniso", "iso")
            return g[keys[int(name[1]) - 1]], g[keys[int(name[2]) - 1]]
        if name in NINE_BLOCK_NAMES:
            return g[f"c{name[1]}"], g[f"c{name[2]}"]
        raise KeyError(f"unknown block {name!r}")

    def block_bool(self, name: str) -> np.ndarray:
        rows, cols = self.index_maps(name)
        return self.bits[np.ix_(rows, cols)]

    def block(self, name: str) -> BitMatrix:
        if name == "full":
            return self.full
        return BitMatrix.from_bool(self.block_bool(name))

    def two_blocks(self) -> dict[str, BitMatrix]:
        return {name: self.block(name) for name in TWO_BLOCK_NAMES}

    def nine_blocks(self) -> dict[str, BitMatrix]:
        return {name: self.block(name) for name in NINE_BLOCK_NAMES}

    def reassemble(self, partition: str = "two") -> np.ndarray:
        """Stack the blocks back together in class-grouped order."""
        names = TWO_BLOCK_NAMES if partition == "two" else NINE_BLOCK_NAMES
        side = 2 if partition == "two" else 3
        rows = [np.hstack([self.block_bool(names[i * side + j]) for j in range(side)])
                for i in range(side)]
        return np.vstack(rows)

    def grouping(self, partition: str = "two") -> np.ndarray:
        """The permutation of global indices used by :meth:`reassemble`."""
        g = self.groups
        keys = ("aniso", "iso") if partition == "two" else ("c1", "c2", "c3")
        return np.concatenate([g[k] for k in keys])


def two_blocks(space: QuadraticSpace) -> dict[str, BitMatrix]:
    return BlockDecomposition.build(space).two_blocks()


def nine_blocks(space: QuadraticSpace) -> dict[str, BitMatrix]:
    return BlockDecomposition.build(space).nine_blocks()


LINE_TYPES = ("tangent", "secant", "passant")
_LINE_TYPE_BY_ABSOLUTE = {1: "tangent", 2: "secant", 0: "passant"}


@dataclass(frozen=True)
class LineProfile:
    """Per-type incidence counts for the lines of PG(2, q).

    ``points_on[line_type][cls]`` is the number of points of class ``cls`` on
    every line of that type; ``lines_through[cls][line_type]`` is the number
    of lines of that type through every point of class ``cls``.
    ``pole_class[line_type]`` is the class of the poles of those lines.
    """

    q: int
    points_on: dict
    lines_through: dict
    pole_class: dict
    line_counts: dict


def _uniform(values: np.ndarray, what: str) -> int:
    distinct = np.unique(values)
    if len(distinct) > 1:
        raise ValueError(f"{what} is not constant: {distinct.tolist()}")
    return int(distinct[0]) if len(distinct) else 0


def line_profile(space: QuadraticSpace, decomposition: BlockDecomposition | None = None) -> LineProfile:
    """Tangent/secant/passant statistics; lines are typed by their absolute points."""
    if space.n != 2:
        raise ValueError("line profiles are defined for PG(2, q) only")
    dec = decomposition or BlockDecomposition.build(space)
    inc = dec.bits  # row i = points on the line with pole P_i
    classes = dec.table.classes
    class_masks = {cls: classes == code for cls, code in
                   ((PointClass.ISOTROPIC, 0), (PointClass.SQUARE, 1), (PointClass.NONSQUARE, -1))}
    absolute = inc[:, class_masks[PointClass.ISOTROPIC]].sum(axis=1)
    if not np.isin(absolute, (0, 1, 2)).all():
        raise ValueError("a line meets the quadric in more than two points")
    line_type = np.array([_LINE_TYPE_BY_ABSOLUTE[int(a)] for a in absolute])

    points_on, pole_class, line_counts = {}, {}, {}
    for lt in LINE_TYPES:
        sel = line_type == lt
        line_counts[lt] = int(sel.sum())
        points_on[lt] = {cls: _uniform(inc[sel][:, mask].sum(axis=1), f"{cls.value} points on {lt} lines")
                         for cls, mask in class_masks.items()}
        poles = np.unique(classes[sel])
        if len(poles) > 1:
            raise ValueError(f"{lt} lines have poles of several classes")
        pole_class[lt] = {0: PointClass.ISOTROPIC, 1: PointClass.SQUARE, -1: PointClass.NONSQUARE}[int(poles[0])] \
            if len(poles) else None

    lines_through = {}
    for cls, mask in class_masks.items():
        # column j lists the lines through P_j
        lines_through[cls] = {lt: _uniform(inc[line_type == lt][:, mask].sum(axis=0),
                                           f"{lt} lines through {cls.value} points")
                              for lt in LINE_TYPES}
    return LineProfile(space.field.q, points_on, lines_through, pole_class, line_counts)
