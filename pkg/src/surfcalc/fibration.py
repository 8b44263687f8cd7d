"""Plurigenera of elliptic fibrations from the canonical bundle formula.

For an elliptic fibration X -> B with multiple fibres m_i E_i, the canonical
class is the pullback of a fractional divisor on the base,

    Delta = (2b - 2 + deg L) Q + sum (a_i / m_i) Q_i,

and ``P_m(X) = h0(B, floor(m Delta))``. Everything here works on degrees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidFiber


@dataclass(frozen=True)
class Fiber:
    """A multiple fibre of multiplicity m with local canonical coefficient a.

    ``n`` is the wild index; ``n == m`` (the default) is a tame fibre.
    """

    m: int
    a: int | None = None
    n: int | None = None

    def __post_init__(self):
        n = self.m if self.n is None else self.n
        a = self.m - 1 if self.a is None else self.a
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", a)
        if self.m < 2:
            raise InvalidFiber(f"multiplicity {self.m} < 2")
        if not 0 <= a < self.m:
            raise InvalidFiber(f"need 0 <= a < m, got a={a}, m={self.m}")
        if n < 1 or self.m % n or (a + 1) % n:
            raise InvalidFiber(f"n={n} must divide m={self.m} and a+1={a + 1}")
        if n < self.m and a not in (self.m - 1, self.m - n - 1):
            raise InvalidFiber(f"wild fibre (m={self.m}, n={n}) needs a in {{m-1, m-n-1}}")

    @property
    def wild(self) -> bool:
        return self.n < self.m

    def to_json(self) -> dict:
        out = {"m": self.m, "a": self.a}
        if self.wild:
            out["n"] = self.n
        return out


@dataclass(frozen=True)
class FibrationSpec:
    base_genus: int
    degL: int
    fibers: tuple[Fiber, ...] = ()

    def __post_init__(self):
        if self.base_genus < 0:
            raise ValueError("base genus must be nonnegative")
        object.__setattr__(self, "fibers", tuple(self.fibers))

    @classmethod
    def tame(cls, ms, base_genus=0, degL=0) -> "FibrationSpec":
        return cls(base_genus, degL, tuple(Fiber(m) for m in ms))

    @classmethod
    def from_json(cls, data: dict) -> "FibrationSpec":
        fibers = tuple(Fiber(int(f["m"]), f.get("a"), f.get("n")) for f in data.get("fibers", []))
        return cls(int(data.get("base_genus", 0)), int(data.get("degL", 0)), fibers)

    def to_json(self) -> dict:
        return {
            "base_genus": self.base_genus,
            "degL": self.degL,
            "fibers": [f.to_json() for f in self.fibers],
        }


@dataclass(frozen=True)
class FracDivisor:
    base_genus: int
    deg0: int
    fractions: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        fr = tuple(Fraction(q) for q in self.fractions)
        if any(not 0 <= q < 1 for q in fr):
            raise ValueError("fractional coefficients must lie in [0, 1)")
        object.__setattr__(self, "fractions", fr)

    @property
    def degree(self) -> Fraction:
        return self.deg0 + sum(self.fractions, Fraction(0))

    def floor_degree(self, m: int) -> int:
        return m * self.deg0 + sum(math.floor(m * q) for q in self.fractions)

    def floor_coefficients(self, m: int) -> tuple[int, ...]:
        return (m * self.deg0,) + tuple(math.floor(m * q) for q in self.fractions)

    def denominators(self) -> tuple[int, ...]:
        return tuple(sorted(q.denominator for q in self.fractions if q))

    def to_json(self) -> dict:
        return {
            "base_genus": self.base_genus,
            "deg0": self.deg0,
            "fractions": [str(q) for q in self.fractions],
            "degree": str(self.degree),
        }


def delta_of(F: FibrationSpec) -> FracDivisor:
    return FracDivisor(
        F.base_genus,
        2 * F.base_genus - 2 + F.degL,
        tuple(Fraction(f.a, f.m) for f in F.fibers),
    )


@dataclass(frozen=True)
class Bounds:
    """P_m is only known to lie in [lo, hi]: the degree alone does not fix it."""

    lo: int
    hi: int

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi}


def plurigenus(delta: FracDivisor, m: int):
    if m < 1:
        raise ValueError("m must be positive")
    d = delta.floor_degree(m)
    b = delta.base_genus
    if d < 0:
        return 0
    if b == 0:
        return d + 1
    if b == 1:
        return d if d >= 1 else Bounds(0, 1)
    if d > 2 * b - 2:
        return d + 1 - b
    # Riemann-Roch below, Clifford above
    return Bounds(max(0, d + 1 - b), d // 2 + 1)


@dataclass(frozen=True)
class NuKappa:
    kappa: int | str
    torsion_order: int | None = None
    multiset: tuple[int, ...] = ()
    warning: str | None = None

    def to_json(self) -> dict:
        return dict(self.__dict__, multiset=list(self.multiset))


def nu_kappa(delta: FracDivisor) -> NuKappa:
    deg = delta.degree
    ms = delta.denominators()
    if deg < 0:
        return NuKappa("-inf", multiset=ms, warning="deg Delta < 0, so K is not nef")
    if deg > 0:
        return NuKappa(1, multiset=ms)
    order = math.lcm(*ms) if delta.base_genus == 0 and ms else None
    return NuKappa(0, order, ms)


def _egyptian(k: int, target: Fraction, least: int = 2):
    """Nondecreasing k-tuples of integers >= least with sum of reciprocals = target."""
    if k == 0:
        if target == 0:
            yield ()
        return
    if target <= 0:
        return
    # the smallest part m satisfies 1/m <= target and k/m >= target
    lo = max(least, math.ceil(1 / target))
    hi = math.floor(k / target)
    for m in range(lo, hi + 1):
        for rest in _egyptian(k - 1, target - Fraction(1, m), m):
            yield (m,) + rest


def torsion_multisets(parts_max: int) -> list[tuple[int, ...]]:
    """Multisets of multiplicities with ``sum(1/m_i) = k - 2`` and k <= parts_max.

    These are exactly the tame fibre data over P^1 with deg L = 0 and
    deg Delta = 0. Since each 1/m_i <= 1/2, k - 2 <= k/2 forces k <= 4.
    """
    if parts_max < 3:
        raise ValueError("parts_max must be at least 3")
    out = []
    for k in range(1, parts_max + 1):
        out.extend(_egyptian(k, Fraction(k - 2)))
    out.sort()
    if parts_max >= 4 and out != [(2, 2, 2, 2), (2, 3, 6), (2, 4, 4), (3, 3, 3)]:
        raise AssertionError(f"unexpected torsion multisets {out}")
    return out


def _nondecreasing(k: int, lo: int, hi: int):
    if k == 0:
        yield ()
        return
    for m in range(lo, hi + 1):
        for rest in _nondecreasing(k - 1, m, hi):
            yield (m,) + rest


def p12_le1_multisets(cap: int = 12) -> list[tuple[int, ...]]:
    """Tame fibre multiplicities over P^1 (deg L = 0) with deg Delta > 0 and P_12 <= 1.

    Each part contributes ``12 - ceil(12/m) >= 6`` to deg floor(12 Delta), so
    at most 4 parts occur, and 4 parts force (2,2,2,2) with deg Delta = 0.
    With 3 parts a part above 12 contributes 11, which needs the other two
    to give 6 each, i.e. (2,2,m) with deg Delta < 0. So parts <= 12 suffice;
    ``cap`` only widens the scan.
    """
    out = []
    for k in range(1, 5):
        for ms in _nondecreasing(k, 2, cap):
            delta = delta_of(FibrationSpec.tame(ms))
            if delta.degree > 0 and plurigenus(delta, 12) <= 1:
                out.append(ms)
    return sorted(out)


def wild_equivalent(F: FibrationSpec) -> FracDivisor:
    """Replace each wild fibre with ``a = m - n - 1`` by two tame-looking terms.

    Such a fibre contributes (m-n-1)/m, which equals
    (m-1)/m + (m/n - 1)/(m/n) - 1.
    """
    deg0 = 2 * F.base_genus - 2 + F.degL
    fractions = []
    rewritten = 0
    for f in F.fibers:
        if f.wild and f.a == f.m - f.n - 1:
            k = f.m // f.n
            fractions += [Fraction(f.m - 1, f.m), Fraction(k - 1, k)]
            deg0 -= 1
            rewritten += 1
        else:
            fractions.append(Fraction(f.a, f.m))
    if not rewritten:
        raise InvalidFiber("no wild fibre with a = m - n - 1 to rewrite")
    out = FracDivisor(F.base_genus, deg0, tuple(fractions))
    if out.degree != delta_of(F).degree:
        raise AssertionError("rewriting changed deg Delta")
    return out
