"""Divisors on rational normal scrolls F(a1, ..., an).

Pic F is generated by the fibre class L and the tautological class M. A
divisor ``eL + dM`` is written ``ScrollDivisor(e, d)``; its sections are
spanned by the monomials ``t0^i t1^j x1^d1 ... xn^dn`` with ``sum(di) = d``
and ``i + j = sum(di * ai) + e``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ArityError, InvalidSubscroll


class _ContainsAll:
    """Sentinel: the linear system is empty, so its base locus is everything."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "CONTAINS_ALL"


CONTAINS_ALL = _ContainsAll()


@dataclass(frozen=True)
class ScrollSpec:
    twists: tuple[int, ...]

    def __post_init__(self):
        if not self.twists:
            raise ValueError("a scroll needs at least one twist")
        object.__setattr__(self, "twists", tuple(sorted(int(a) for a in self.twists)))

    @property
    def n(self) -> int:
        return len(self.twists)

    @property
    def top(self) -> int:
        return self.twists[-1]

    def canonical(self) -> tuple["ScrollSpec", int]:
        """Shift so the smallest twist is 0; returns the new spec and the shift."""
        m = self.twists[0]
        return ScrollSpec(tuple(a - m for a in self.twists)), m

    def shifted(self, b: int) -> "ScrollSpec":
        return ScrollSpec(tuple(a + b for a in self.twists))


@dataclass(frozen=True)
class ScrollDivisor:
    e: int
    d: int

    def __add__(self, other: "ScrollDivisor") -> "ScrollDivisor":
        return ScrollDivisor(self.e + other.e, self.d + other.d)

    def __neg__(self) -> "ScrollDivisor":
        return ScrollDivisor(-self.e, -self.d)

    def __sub__(self, other: "ScrollDivisor") -> "ScrollDivisor":
        return self + (-other)

    def __rmul__(self, k: int) -> "ScrollDivisor":
        return ScrollDivisor(k * self.e, k * self.d)

    def under_shift(self, b: int) -> "ScrollDivisor":
        """The same divisor after the twists are shifted by b (F(a) = F(a + b))."""
        return ScrollDivisor(self.e - self.d * b, self.d)


L = ScrollDivisor(1, 0)
M = ScrollDivisor(0, 1)


def compositions(d: int, n: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of d into n parts, in lexicographic order."""
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in compositions(d - first, n - 1):
            yield (first,) + rest


def h0(F: ScrollSpec, D: ScrollDivisor) -> int:
    if D.d < 0:
        return 0
    return sum(
        max(0, sum(k * a for k, a in zip(ks, F.twists)) + D.e + 1)
        for ks in compositions(D.d, F.n)
    )


def _check_subscroll(F: ScrollSpec, b: int):
    if b not in F.twists:
        raise InvalidSubscroll(f"{b} is not one of the twists {F.twists}")
    if b == F.top:
        raise InvalidSubscroll(f"b = {b} is the largest twist, so B_b is all of F")


def base_multiplicity(F: ScrollSpec, D: ScrollDivisor, b: int):
    """Multiplicity of the subscroll B_b in the base locus of |D|.

    B_b is cut out by the coordinates with twist above b. The answer is the
    least s >= 0 with ``e + b*d + (a_n - b)*s >= 0``, or CONTAINS_ALL when
    |D| is empty.
    """
    _check_subscroll(F, b)
    if D.d < 1:
        raise ValueError("d must be at least 1")
    if D.e + F.top * D.d < 0:
        return CONTAINS_ALL
    need = -(D.e + b * D.d)
    return max(0, -(-need // (F.top - b)))


def base_multiplicity_oracle(F: ScrollSpec, D: ScrollDivisor, b: int):
    """Brute force over monomials: least x-degree in the coordinates of twist above b."""
    _check_subscroll(F, b)
    if D.d < 1:
        raise ValueError("d must be at least 1")
    best = None
    for ks in compositions(D.d, F.n):
        if sum(k * a for k, a in zip(ks, F.twists)) + D.e < 0:
            continue
        s = sum(k for k, a in zip(ks, F.twists) if a > b)
        best = s if best is None else min(best, s)
    return CONTAINS_ALL if best is None else best


def linear_base_locus(F: ScrollSpec, e: int):
    """Twists spanning the base locus of ``|eL + M|``.

    The base locus is the subscroll on the coordinates with ``a_i <= -e - 1``;
    an empty tuple means base point free, CONTAINS_ALL means |eL + M| is empty.
    """
    b = -e - 1
    if F.top <= b:
        return CONTAINS_ALL
    return tuple(a for a in F.twists if a <= b)


def canonical_class(F: ScrollSpec) -> ScrollDivisor:
    return ScrollDivisor(sum(F.twists) - 2, -F.n)


def top_intersection(F: ScrollSpec, factors: Sequence[ScrollDivisor]) -> int:
    """Product of n divisor classes, from L^2 = 0, M^(n-1) L = 1, M^n = sum(a)."""
    if len(factors) != F.n:
        raise ArityError(f"need {F.n} factors on a scroll of dimension {F.n}, got {len(factors)}")
    ds = [D.d for D in factors]
    total = math.prod(ds) * sum(F.twists)
    for i, D in enumerate(factors):
        total += D.e * math.prod(ds[:i] + ds[i + 1:])
    return total


def to_ab(a: int, D: ScrollDivisor) -> tuple[int, int]:
    """Coordinates of D on F(0, a) in the basis (A, B) with M = aA + B."""
    return D.e + a * D.d, D.d


def surface_scroll_pairing(a: int, D1: tuple[int, int], D2: tuple[int, int]) -> int:
    """Intersection on F(0, a) with A.A = 0, A.B = 1, B.B = -a."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    (x1, y1), (x2, y2) = D1, D2
    return x1 * y2 + x2 * y1 - a * y1 * y2


@dataclass(frozen=True)
class MaroniType:
    a1: int
    a2: int
    kind: str  # "smooth", "cone" (image is a quadric cone) or "plane" (image is P^2)


def maroni_admissible(g: int) -> list[MaroniType]:
    """Scrolls F(a1, a2) that can carry a canonical trigonal curve of genus g."""
    if g < 3:
        raise ValueError("genus must be at least 3")
    out = []
    for a1 in range((g - 2) // 2 + 1):
        a2 = g - 2 - a1
        if 3 * (a2 - a1) > g + 2:
            continue
        if a1 > 0:
            kind = "smooth"
        elif a2 == 1:
            kind = "plane"
        else:
            kind = "cone"
        out.append(MaroniType(a1, a2, kind))
    for t in out:
        if t.kind == "cone" and g != 4:
            raise AssertionError(f"cone F(0, {t.a2}) admitted at genus {g}")
    return sorted(out, key=lambda t: (t.a1, t.a2))


@dataclass(frozen=True)
class CubicScroll:
    a2: int
    a3: int
    flags: tuple[bool, bool, bool]


def relative_cubic_range(k: int) -> list[CubicScroll]:
    """Twists (0, a2, a3) for a relative cubic X in |3M - (3k+6)L| with a section.

    Each entry carries three degeneration flags: ``k+2 < a2+a3``,
    ``k+2 < a3`` and ``k+2 < a3-a2``.
    """
    if k <= -3:
        return []
    out = []
    for a2 in range(k + 3):
        for a3 in range(a2, 2 * a2 + k + 3):
            out.append(CubicScroll(a2, a3, (k + 2 < a2 + a3, k + 2 < a3, k + 2 < a3 - a2)))
    return out
