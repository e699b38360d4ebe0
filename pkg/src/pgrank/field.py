"""Arithmetic in GF(p^k) for odd primes p.

Elements are stored as integers in ``range(q)``.  The element with
polynomial-basis coefficients ``(c_0, ..., c_{k-1})`` (constant term first)
has index ``c_0 + c_1 p + ... + c_{k-1} p^(k-1)``, and ascending index is the
canonical enumeration order used everywhere in the package: ``0, 1, ..., p-1,
x, x+1, ...``.  For k = 1 the index is simply the residue.

Scalar work goes through :class:`FieldElement`, which does honest polynomial
arithmetic modulo the field's modulus.  Bulk work on numpy arrays of indices
goes through the ``v*`` methods and :meth:`FiniteField.matmul`, which use
log/antilog tables and digit decompositions built from the scalar path.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache

import numpy as np

MAX_ORDER = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


# -- polynomials over GF(p): coefficient lists, constant term first ----------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    a = _poly_trim(c % p for c in a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        a = _poly_trim(a)
    return a


def _is_irreducible(m, p) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(m)//2."""
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    # constant-term-first tuples, ascending lexicographic
    for low in itertools.product(range(p), repeat=k):
        m = list(low) + [1]
        if low[0] != 0 and _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldElement:
    """An element of a :class:`FiniteField`."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        if not 0 <= value < field.q:
            raise ValueError(f"element index {value} out of range for GF({field.q})")
        self.field = field
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits_of(self.value)

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("operands belong to different fields")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return self.field.from_coeffs([(a + b) % p for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return self.field.from_coeffs([(-a) % p for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        a, b = self.coeffs, other.coeffs
        prod = [0] * (2 * f.k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return f.from_coeffs(_poly_mod(prod, f.modulus, f.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def is_square(self) -> bool:
        """Euler's criterion; zero is rejected since it is its own class."""
        if self.value == 0:
            raise ValueError("zero is neither a square nor a non-square")
        return (self ** ((self.field.q - 1) // 2)).value == 1

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field == other.field
        if isinstance(other, (int, np.integer)):
            return self == self.field.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        if self.field.k == 1:
            return f"GF({self.field.q})({self.value})"
        return f"GF({self.field.q})({self.coeffs})"


class FiniteField:
    """GF(p^k) with the lexicographically smallest monic irreducible modulus.

    Use :func:`make_field` to obtain instances; fields are cached and
    immutable, so two constructions of the same field are the same object.
    """

    def __init__(self, p: int, k: int, modulus=None):
        if k < 1:
            raise ValueError("extension degree must be at least 1")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("even characteristic is not supported")
        if p**k > MAX_ORDER:
            raise ValueError(f"field order {p}**{k} exceeds the bound {MAX_ORDER}")
        self.p = p
        self.k = k
        self.q = p**k
        if modulus is None:
            modulus = _smallest_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1 or not _is_irreducible(modulus, p):
                raise ValueError(f"{modulus} is not a monic irreducible of degree {k} over GF({p})")
        self.modulus = modulus
        self._place = np.array([p**i for i in range(k)], dtype=np.int64)
        self.primitive = self._find_primitive()

    def __repr__(self):
        return f"FiniteField(p={self.p}, k={self.k})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    # -- scalar construction ------------------------------------------------

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (tuple, list)):
            return self.from_coeffs(value)
        return self.from_int(int(value))

    def from_int(self, n: int) -> FieldElement:
        """Embed an integer via the prime subfield (so -1 maps to p - 1)."""
        return FieldElement(self, n % self.p)

    def from_coeffs(self, coeffs) -> FieldElement:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise ValueError(f"too many coefficients for GF({self.q})")
        value = sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))
        return FieldElement(self, value)

    def element(self, index: int) -> FieldElement:
        return FieldElement(self, index)

    def digits_of(self, value: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            value, r = divmod(value, self.p)
            out.append(r)
        return tuple(out)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, i) for i in range(self.q)]

    def _find_primitive(self) -> FieldElement:
        order = self.q - 1
        cofactors = [order // r for r in _prime_divisors(order)]
        for i in range(1, self.q):
            g = FieldElement(self, i)
            if all((g**c).value != 1 for c in cofactors):
                return g
        raise AssertionError("multiplicative group has no generator")  # pragma: no cover

    def multiplicative_order(self, a: FieldElement) -> int:
        if a.value == 0:
            raise ValueError("zero has no multiplicative order")
        order = self.q - 1
        for r in _prime_divisors(order):
            while order % r == 0 and (a ** (order // r)).value == 1:
                order //= r
        return order

    def canonical_alpha(self, cls: str) -> FieldElement:
        """1 for ``"square"``; the first non-square in index order for ``"nonsquare"``."""
        if cls == "square":
            return self.one
        if cls == "nonsquare":
            return FieldElement(self, int(np.flatnonzero(self.square_table == -1)[0]))
        raise ValueError(f"unknown square class {cls!r}")

    # -- vectorized arithmetic on index arrays -------------------------------

    @cached_property
    def digits(self) -> np.ndarray:
        """``digits[i]`` is the coefficient vector of element ``i``, shape (q, k)."""
        idx = np.arange(self.q, dtype=np.int64)
        return np.stack([(idx // self.p**i) % self.p for i in range(self.k)], axis=1)

    @cached_property
    def _exp_log(self):
        exp = np.empty(self.q - 1, dtype=np.int64)
        x = self.one
        for e in range(self.q - 1):
            exp[e] = x.value
            x = x * self.primitive
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(self.q - 1)
        return exp, log

    @cached_property
    def square_table(self) -> np.ndarray:
        """Quadratic character by index: 0 for zero, 1 for squares, -1 otherwise."""
        exp, _ = self._exp_log
        table = np.full(self.q, -1, dtype=np.int8)
        table[0] = 0
        table[exp[::2]] = 1
        return table

    def from_digits(self, d: np.ndarray) -> np.ndarray:
        return (d % self.p) @ self._place

    def vadd(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        return self.from_digits(self.digits[a] + self.digits[b])

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits(-self.digits[a])

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        exp, log = self._exp_log
        a, b = np.broadcast_arrays(a, b)
        out = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def matmul(self, a, b) -> np.ndarray:
        """Matrix product over the field of index arrays of shape (m, t) and (t, s)."""
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a @ b) % self.p
        p, k = self.p, self.k
        da, db = self.digits[a], self.digits[b]
        acc = np.zeros((2 * k - 1, a.shape[0], b.shape[1]), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                acc[i + j] += da[:, :, i] @ db[:, :, j]
        acc %= p
        for d in range(2 * k - 2, k - 1, -1):
            for i, m in enumerate(self.modulus[:-1]):
                if m:
                    acc[d - k + i] -= m * acc[d]
            acc[: d] %= p
        return np.moveaxis(acc[:k] % p, 0, -1) @ self._place


def _prime_divisors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)


def field_of_order(q: int) -> FiniteField:
    return make_field(*factor_prime_power(q))


def is_square(a: FieldElement) -> bool:
    return a.is_square()


def canonical_alpha(field: FiniteField, cls: str) -> FieldElement:
    return field.canonical_alpha(cls)


def enumerate_elements(field: FiniteField) -> list[FieldElement]:
    return field.elements()
