"""Exact quadratic-form arithmetic on integer lattices.

Everything here is integer or :class:`fractions.Fraction` arithmetic; no
floating point is used anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .errors import LatticeMismatch


@dataclass(frozen=True)
class Lattice:
    """A free abelian group of finite rank with a symmetric integer form."""

    gram: tuple[tuple[int, ...], ...]
    basis: tuple[str, ...] | None = None
    name: str = ""

    def __post_init__(self):
        gram = tuple(tuple(int(v) for v in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if n < 1:
            raise ValueError("lattice rank must be at least 1")
        for i, row in enumerate(gram):
            if len(row) != n:
                raise ValueError("gram matrix must be square")
            for j in range(i):
                if row[j] != gram[j][i]:
                    raise ValueError(f"gram matrix not symmetric at ({i}, {j})")
        if self.basis is not None:
            basis = tuple(self.basis)
            if len(basis) != n or len(set(basis)) != n:
                raise ValueError("basis names must be rank-many distinct strings")
            object.__setattr__(self, "basis", basis)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @classmethod
    def diagonal(cls, entries: Sequence[int], **kw) -> "Lattice":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)), **kw)

    def vector(self, coords: Iterable[int]) -> "DivisorClass":
        return DivisorClass(self, tuple(coords))

    def unit(self, i: int) -> "DivisorClass":
        return DivisorClass(self, tuple(int(i == j) for j in range(self.rank)))

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)

    def form(self, x: Sequence, y: Sequence):
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(self.rank) if x[i] for j in range(self.rank) if y[j])

    def to_json(self) -> dict:
        out = {"rank": self.rank, "gram": [list(r) for r in self.gram]}
        if self.basis is not None:
            out["basis"] = list(self.basis)
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        gram = data["gram"]
        if "rank" in data and data["rank"] != len(gram):
            raise ValueError("rank does not match gram size")
        basis = data.get("basis")
        return cls(tuple(tuple(r) for r in gram), tuple(basis) if basis else None, data.get("name", ""))


class _Vector:
    __slots__ = ()

    def _check(self, other):
        if not isinstance(other, _Vector):
            return NotImplemented
        if other.lattice != self.lattice:
            raise LatticeMismatch("vectors live in different lattices")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return _make(self.lattice, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return _make(self.lattice, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return _make(self.lattice, [-a for a in self.coords])

    def __mul__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        return _make(self.lattice, [k * a for a in self.coords])

    __rmul__ = __mul__

    def __matmul__(self, other):
        return pair(self, other)

    def square(self):
        return pair(self, self)

    def to_json(self) -> dict:
        return {"lattice": self.lattice.name, "coords": [format_rational(c) for c in self.coords]}


@dataclass(frozen=True)
class DivisorClass(_Vector):
    lattice: Lattice = field(repr=False)
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.lattice.rank:
            raise ValueError(f"expected {self.lattice.rank} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)


@dataclass(frozen=True)
class QDivisorClass(_Vector):
    lattice: Lattice = field(repr=False)
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != self.lattice.rank:
            raise ValueError(f"expected {self.lattice.rank} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)


def _make(lattice, coords):
    if all(isinstance(c, int) for c in coords):
        return DivisorClass(lattice, tuple(coords))
    return QDivisorClass(lattice, tuple(coords))


def format_rational(x) -> str | int:
    """Integers stay integers; proper rationals become ``"p/q"`` strings."""
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def divisor_from_json(data: dict, lattice: Lattice):
    if data.get("lattice", lattice.name) != lattice.name:
        raise LatticeMismatch(f"divisor refers to lattice {data.get('lattice')!r}")
    return _make(lattice, [_normalize(parse_rational(c)) for c in data["coords"]])


def _normalize(q: Fraction):
    return q.numerator if q.denominator == 1 else q


def pair(x, y):
    """The intersection number of two classes in the same lattice."""
    if x.lattice != y.lattice:
        raise LatticeMismatch("cannot pair classes from different lattices")
    value = x.lattice.form(x.coords, y.coords)
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


# -- determinants and definiteness -------------------------------------------


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss elimination)."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _principal(gram, idx):
    return [[gram[i][j] for j in idx] for i in idx]


def is_negative_definite(L: Lattice) -> bool:
    """Sylvester: all leading principal minors of ``-G`` are positive."""
    neg = [[-v for v in row] for row in L.gram]
    return all(determinant(_principal(neg, range(k))) > 0 for k in range(1, L.rank + 1))


def is_negative_semidefinite(L: Lattice) -> bool:
    # Leading minors alone cannot decide semidefiniteness; every principal
    # minor of -G has to be checked.
    neg = [[-v for v in row] for row in L.gram]
    n = L.rank
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            if determinant(_principal(neg, idx)) < 0:
                return False
    return True


def diagonalize(gram: Sequence[Sequence]) -> list[Fraction]:
    """Diagonal entries of a rational symmetric congruence diagonalisation."""
    a = [[Fraction(v) for v in row] for row in gram]
    n = len(a)
    diag = []
    for k in range(n):
        if a[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
            else:
                partner = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if partner is not None:
                    # row_k += row_j and col_k += col_j makes a[k][k] = 2 a[k][j]
                    for c in range(n):
                        a[k][c] += a[partner][c]
                    for r in range(n):
                        a[r][k] += a[r][partner]
        pivot = a[k][k]
        diag.append(pivot)
        if pivot == 0:
            continue
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f:
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
                for r in range(k, n):
                    a[r][i] -= f * a[r][k]
    return diag


def signature(L: Lattice) -> tuple[int, int, int]:
    """Sylvester inertia ``(n_plus, n_minus, n_zero)``."""
    diag = diagonalize(L.gram)
    return (sum(d > 0 for d in diag), sum(d < 0 for d in diag), sum(d == 0 for d in diag))


def discriminant(L: Lattice) -> int:
    return determinant(L.gram)


def is_unimodular(L: Lattice) -> bool:
    return abs(discriminant(L)) == 1


def parity(L: Lattice) -> str:
    return "even" if all(L.gram[i][i] % 2 == 0 for i in range(L.rank)) else "odd"


def parity_vector_check(L: Lattice, c: DivisorClass) -> bool:
    """Whether ``x.x == c.x (mod 2)`` for every x.

    ``x -> x.x mod 2`` is linear, so checking the basis vectors suffices.
    """
    if c.lattice != L:
        raise LatticeMismatch("characteristic candidate is not in this lattice")
    for i in range(L.rank):
        e = L.unit(i)
        if (L.gram[i][i] - pair(c, e)) % 2:
            return False
    return True


# -- constrained enumeration --------------------------------------------------


def _box_bounds(box, rank):
    if isinstance(box, int):
        if box < 1:
            raise ValueError("box must be at least 1")
        return [(-box, box)] * rank
    bounds = []
    for b in box:
        if isinstance(b, int):
            bounds.append((-b, b))
        else:
            lo, hi = b
            bounds.append((int(lo), int(hi)))
    if len(bounds) != rank:
        raise ValueError("box must give one bound per coordinate")
    return bounds


def vectors_with(L: Lattice, self_int: int, dots=(), box=1) -> list[DivisorClass]:
    """All x in the coordinate box with ``x.x = self_int`` and ``x.v = k`` for each ``(v, k)``.

    ``box`` is either a symmetric bound for every coordinate, or a sequence
    with one entry per coordinate (an int ``b`` meaning ``[-b, b]`` or a
    ``(lo, hi)`` pair). Completeness outside the box is the caller's business.
    Results come in lexicographic order of coordinates.
    """
    n = L.rank
    bounds = _box_bounds(box, n)
    constraints = []
    for v, k in dots:
        if v.lattice != L:
            raise LatticeMismatch("constraint vector is not in this lattice")
        row = [sum(L.gram[i][j] * v.coords[j] for j in range(n)) for i in range(n)]
        constraints.append((row, k))

    # reachable interval of each linear form from coordinates i..n-1
    tails = []
    for row, _ in constraints:
        lo = [0] * (n + 1)
        hi = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            a, b = bounds[i]
            lo[i] = lo[i + 1] + min(row[i] * a, row[i] * b)
            hi[i] = hi[i + 1] + max(row[i] * a, row[i] * b)
        tails.append((lo, hi))

    out = []
    x = [0] * n
    partial = [0] * len(constraints)

    def rec(i):
        if i == n:
            if L.form(x, x) == self_int:
                out.append(DivisorClass(L, tuple(x)))
            return
        a, b = bounds[i]
        for value in range(a, b + 1):
            ok = True
            for c, (row, k) in enumerate(constraints):
                s = partial[c] + row[i] * value
                lo, hi = tails[c]
                if not lo[i + 1] <= k - s <= hi[i + 1]:
                    ok = False
                    break
            if not ok:
                continue
            x[i] = value
            for c, (row, _) in enumerate(constraints):
                partial[c] += row[i] * value
            rec(i + 1)
            for c, (row, _) in enumerate(constraints):
                partial[c] -= row[i] * value
        x[i] = 0

    rec(0)
    return out


def ellipsoid_points(gram: Sequence[Sequence[int]], linear: Sequence, threshold, bounds):
    """Integer points x in ``bounds`` with ``x.G.x + linear.x >= threshold``.

    ``gram`` must be negative definite. Uses an exact LDL decomposition of
    ``-G`` and Fincke-Pohst style bounds, so it visits far fewer points than
    the full box. Yields tuples in lexicographic order of the reversed
    coordinates.
    """
    n = len(gram)
    A = [[-Fraction(v) for v in row] for row in gram]
    # maximise f(x) = -x.A.x + l.x  <=>  (x - c).A.(x - c) <= c.A.c - threshold
    # with c = A^{-1} l / 2
    c = _solve(A, [Fraction(v) / 2 for v in linear])
    radius = sum(c[i] * A[i][j] * c[j] for i in range(n) for j in range(n)) - Fraction(threshold)
    if radius < 0:
        return
    # A = U^T D U with U unit upper triangular
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = A[i][i] - sum(mu[k][i] ** 2 * d[k] for k in range(i))
        for j in range(i + 1, n):
            mu[i][j] = (A[i][j] - sum(mu[k][i] * mu[k][j] * d[k] for k in range(i))) / d[i]
    y = [0] * n

    def rec(i, remaining):
        # term_i = d_i (y_i - c_i + sum_{j>i} mu_ij (y_j - c_j))^2
        shift = -c[i] + sum(mu[i][j] * (y[j] - c[j]) for j in range(i + 1, n))
        r = remaining / d[i]
        s = isqrt(r.numerator // r.denominator) + 1
        lo = max(bounds[i][0], _floor(-shift) - s)
        hi = min(bounds[i][1], _floor(-shift) + s + 1)
        for v in range(lo, hi + 1):
            t = d[i] * (v + shift) ** 2
            if t > remaining:
                continue
            y[i] = v
            if i == 0:
                yield tuple(y)
            else:
                yield from rec(i - 1, remaining - t)
        y[i] = 0

    yield from rec(n - 1, radius)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _solve(A, b):
    """Solve ``A x = b`` exactly for nonsingular rational A."""
    n = len(A)
    m = [list(map(Fraction, row)) + [Fraction(b[i])] for i, row in enumerate(A)]
    for k in range(n):
        p = next(r for r in range(k, n) if m[r][k] != 0)
        m[k], m[p] = m[p], m[k]
        for r in range(n):
            if r != k and m[r][k]:
                f = m[r][k] / m[k][k]
                for col in range(k, n + 1):
                    m[r][col] -= f * m[k][col]
    return [m[i][n] / m[i][i] for i in range(n)]


solve = _solve

