"""Quadratic forms on PG(n, q) and the isotropy classification of its points.

Two forms are supported:

* ``diagonal``: ``Q(x) = x0^2 - x1^2 + x2^2 - ... + (-1)^n * alpha * xn^2``
* ``conic`` (n = 2 only): ``Q(x) = alpha * x1^2 - x0 * x2``

Points are normalized so that the first nonzero coordinate is 1 and are listed
in lexicographic order of their coordinate tuples, comparing coordinates by
element index.  Nothing here depends on which representative is stored: the
class of a point is invariant under scaling because ``Q(lx) = l^2 Q(x)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .field import FieldElement, FiniteField

MAX_POINTS = 10_000_000


class PointClass(enum.Enum):
    ISOTROPIC = "isotropic"
    SQUARE = "square"
    NONSQUARE = "nonsquare"


# codes used in PointTable.classes
CLASS_CODE = {PointClass.SQUARE: 1, PointClass.NONSQUARE: -1, PointClass.ISOTROPIC: 0}
CODE_CLASS = {v: k for k, v in CLASS_CODE.items()}


@dataclass(frozen=True)
class PointTable:
    """Normalized points of PG(n, q) with their classes.

    ``coords`` is an (N, n+1) array of element indices and ``classes`` holds
    the class codes of :data:`CLASS_CODE`.  ``index[cls]`` lists the global
    indices of the points of that class, in global order.
    """

    coords: np.ndarray
    classes: np.ndarray
    q_values: np.ndarray

    def __len__(self):
        return len(self.coords)

    @cached_property
    def index(self) -> dict[PointClass, np.ndarray]:
        return {cls: np.flatnonzero(self.classes == code) for cls, code in CLASS_CODE.items()}

    @property
    def anisotropic(self) -> np.ndarray:
        return np.flatnonzero(self.classes != 0)

    @property
    def isotropic(self) -> np.ndarray:
        return self.index[PointClass.ISOTROPIC]

    def point_class(self, i: int) -> PointClass:
        return CODE_CLASS[int(self.classes[i])]

    def position(self, coords) -> int:
        """Global index of a normalized coordinate tuple (element indices)."""
        hits = np.flatnonzero((self.coords == np.asarray(coords)).all(axis=1))
        if hits.size != 1:
            raise KeyError(tuple(coords))
        return int(hits[0])


def num_points(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def normalize(coords: list[FieldElement]) -> tuple[FieldElement, ...]:
    lead = next((c for c in coords if c.value != 0), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    inv = lead.inverse()
    return tuple(c * inv for c in coords)


class QuadraticSpace:
    """A nondegenerate quadratic form on the vector space GF(q)^(n+1)."""

    def __init__(self, n: int, field: FiniteField, alpha, form: str = "diagonal"):
        if n < 1:
            raise ValueError("projective dimension must be at least 1")
        if form not in ("diagonal", "conic"):
            raise ValueError(f"unknown form kind {form!r}")
        if form == "conic" and n != 2:
            raise ValueError("the conic form is only defined for n = 2")
        alpha = field(alpha)
        if alpha.value == 0:
            raise ValueError("alpha must be nonzero")
        self.n = n
        self.field = field
        self.form = form
        self.alpha = alpha
        if self._gram_det().value == 0:  # pragma: no cover - both families are nondegenerate
            raise ValueError("degenerate quadratic form")

    def __repr__(self):
        return f"QuadraticSpace(n={self.n}, q={self.field.q}, alpha={self.alpha.value}, form={self.form!r})"

    @property
    def alpha_class(self) -> str:
        return "square" if self.alpha.is_square() else "nonsquare"

    @cached_property
    def diag_coeffs(self) -> tuple[FieldElement, ...]:
        if self.form != "diagonal":
            raise AttributeError("diag_coeffs is only defined for the diagonal form")
        F = self.field
        coeffs = [F.one if i % 2 == 0 else -F.one for i in range(self.n)]
        last = self.alpha if self.n % 2 == 0 else -self.alpha
        return tuple(coeffs) + (last,)

    def _check(self, v):
        if len(v) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} coordinates, got {len(v)}")
        return [self.field(x) for x in v]

    def evaluate(self, v) -> FieldElement:
        x = self._check(v)
        if self.form == "conic":
            return self.alpha * x[1] * x[1] - x[0] * x[2]
        return sum((c * xi * xi for c, xi in zip(self.diag_coeffs, x)), self.field.zero)

    def bilinear(self, x, y) -> FieldElement:
        """Polarization: (Q(x + y) - Q(x) - Q(y)) / 2."""
        x, y = self._check(x), self._check(y)
        s = [a + b for a, b in zip(x, y)]
        half = self.field.from_int(2).inverse()
        return (self.evaluate(s) - self.evaluate(x) - self.evaluate(y)) * half

    @cached_property
    def gram(self) -> np.ndarray:
        """Gram matrix of the bilinear form as element indices, built by polarization."""
        F = self.field
        basis = [[F.one if i == j else F.zero for j in range(self.n + 1)] for i in range(self.n + 1)]
        return np.array([[self.bilinear(u, v).value for v in basis] for u in basis], dtype=np.int64)

    def _gram_det(self) -> FieldElement:
        F = self.field
        m = [[F.element(int(x)) for x in row] for row in self.gram]
        det = F.one
        size = len(m)
        for c in range(size):
            piv = next((r for r in range(c, size) if m[r][c].value), None)
            if piv is None:
                return F.zero
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for r in range(c + 1, size):
                f = m[r][c] * inv
                if f.value:
                    m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        return det

    def classify(self, point) -> PointClass:
        value = self.evaluate(point)
        if value.value == 0:
            return PointClass.ISOTROPIC
        return PointClass.SQUARE if value.is_square() else PointClass.NONSQUARE

    def perp_contains(self, p, r) -> int:
        """1 iff r lies on the hyperplane orthogonal to p."""
        return int(self.bilinear(p, r).value == 0)

    # -- bulk operations -------------------------------------------------------

    def evaluate_many(self, coords: np.ndarray) -> np.ndarray:
        F = self.field
        coords = np.asarray(coords, dtype=np.int64)
        if self.form == "conic":
            t = F.vmul(self.alpha.value, F.vmul(coords[:, 1], coords[:, 1]))
            return F.vsub(t, F.vmul(coords[:, 0], coords[:, 2]))
        total = np.zeros(len(coords), dtype=np.int64)
        for i, c in enumerate(self.diag_coeffs):
            total = F.vadd(total, F.vmul(c.value, F.vmul(coords[:, i], coords[:, i])))
        return total

    def points(self, max_points: int = MAX_POINTS) -> PointTable:
        return enumerate_points(self, max_points)

    def class_counts(self) -> tuple[int, int, int]:
        """(isotropic, square anisotropic, nonsquare anisotropic) point counts."""
        t = self.points()
        return tuple(int(np.count_nonzero(t.classes == code)) for code in (0, 1, -1))


def make_space(n: int, field: FiniteField, alpha, form: str = "diagonal") -> QuadraticSpace:
    return QuadraticSpace(n, field, alpha, form)


def normalized_coords(n: int, q: int) -> np.ndarray:
    """All normalized points of PG(n, q) as element-index rows, lexicographically."""
    blocks = []
    # leading 1 at position `lead`; later leading positions sort first
    for lead in range(n, -1, -1):
        tail = n - lead
        block = np.zeros((q**tail, n + 1), dtype=np.int64)
        block[:, lead] = 1
        if tail:
            block[:, lead + 1 :] = np.indices((q,) * tail).reshape(tail, -1).T
        blocks.append(block)
    return np.concatenate(blocks)


def enumerate_points(space: QuadraticSpace, max_points: int = MAX_POINTS) -> PointTable:
    cached = space.__dict__.get("_points")
    if cached is not None:
        return cached
    n, q = space.n, space.field.q
    if num_points(n, q) > max_points:
        raise ValueError(f"PG({n},{q}) has {num_points(n, q)} points, above the bound {max_points}")
    coords = normalized_coords(n, q)
    values = space.evaluate_many(coords)
    classes = space.field.square_table[values]
    table = PointTable(coords, classes, values)
    space.__dict__["_points"] = table
    return table
