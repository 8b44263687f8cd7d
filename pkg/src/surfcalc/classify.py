"""Numerical bookkeeping for surface classification.

Noether's formula, the table of possible invariants with p_g <= 1, regular
surface invariants, Riemann-Roch, the Hodge index test, the nef threshold of
H + tK on finite curve data, and the numerical Kodaira dimension.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import InvalidInvariants, InvariantViolation, NotAmple, NotApplicable, NotInScope


@dataclass(frozen=True)
class SurfaceInvariants:
    K2: int
    chi: int
    pg: int
    q: int
    qprime: int
    B2: int
    e: int

    def __post_init__(self):
        if min(self.pg, self.q, self.qprime) < 0 or self.B2 < 1:
            raise InvalidInvariants("pg, q, q' must be nonnegative and B2 positive")
        if self.K2 + self.e != 12 * self.chi:
            raise InvalidInvariants(f"Noether fails: K2 + e = {self.K2 + self.e} != 12 chi = {12 * self.chi}")
        if self.chi != 1 - self.qprime + self.pg:
            raise InvalidInvariants("chi != 1 - q' + pg")
        if self.qprime < self.q:
            raise InvalidInvariants("q' < q")
        if self.e != 2 - 4 * self.q + self.B2:
            raise InvalidInvariants("e != 2 - 2 b1 + B2 with b1 = 2q")


@dataclass(frozen=True)
class TableRow:
    label: str
    pg: int
    qprime: int
    q: int
    total: int  # K2 + B2
    B2_min: int

    @property
    def K2_max(self) -> int:
        return self.total - self.B2_min

    def points(self) -> list[SurfaceInvariants]:
        chi = 1 - self.qprime + self.pg
        return [
            SurfaceInvariants(K2, chi, self.pg, self.q, self.qprime, self.total - K2,
                              2 - 4 * self.q + self.total - K2)
            for K2 in range(self.K2_max + 1)
        ]

    def to_json(self) -> dict:
        return dict(asdict(self), K2_max=self.K2_max)


# conventional row names, keyed by (pg, q', q)
_LABELS = {
    (1, 0, 0): "1", (1, 1, 1): "2", (0, 0, 0): "3", (1, 1, 0): "3'",
    (1, 2, 2): "4", (0, 1, 1): "5", (1, 2, 1): "5'",
}


# enumeration constraints, reported next to the table in golden output
FAMOUS_TABLE_CONSTRAINTS = (
    "pg in {0, 1}",
    "q <= q' <= q + pg",
    "K2 >= 0",
    "B2 >= 1, and B2 >= 2 when q >= 1",
)


def famous_table() -> list[TableRow]:
    """Solutions of ``K2 + 12(q' - q) + 8q + B2 = 10 + 12 pg`` with pg <= 1.

    Constraints: q <= q' <= q + pg, K2 >= 0, B2 >= 1, and B2 >= 2 once q >= 1.
    Rows are grouped by (pg, q', q).
    """
    rows = []
    for pg in (0, 1):
        # 8q <= 10 + 12 pg bounds q
        for q in range((10 + 12 * pg) // 8 + 1):
            for qprime in range(q, q + pg + 1):
                total = 10 + 12 * pg - 12 * (qprime - q) - 8 * q
                b2_min = 2 if q >= 1 else 1
                if total < b2_min:
                    continue
                key = (pg, qprime, q)
                rows.append(TableRow(_LABELS.get(key, "?"), pg, qprime, q, total, b2_min))
    rows.sort(key=lambda r: (r.label.rstrip("'"), r.label))
    return rows


def regular_invariants(chi: int, K2: int) -> dict:
    """Invariants of a surface with q = q' = 0 from chi and K^2."""
    e = 12 * chi - K2
    B2 = e - 2
    B2p = 2 * chi - 1
    B2m = e - 2 * chi - 1
    if B2p < 0 or B2m < 0 or B2 < 1:
        raise InvalidInvariants(f"chi={chi}, K2={K2} give B2+={B2p}, B2-={B2m}")
    if B2p - B2m != 4 * chi - e:
        raise InvariantViolation("signature check failed")
    inv = SurfaceInvariants(K2, chi, chi - 1, 0, 0, B2, e)
    return dict(asdict(inv), B2p=B2p, B2m=B2m)


def rr_surface(chi: int, K_dot_D: int, D2: int) -> int:
    """``chi(O_X(D)) = chi(O_X) + D.(D - K)/2``."""
    if (D2 - K_dot_D) % 2:
        raise InvariantViolation(f"D^2 - K.D = {D2 - K_dot_D} is odd")
    return chi + (D2 - K_dot_D) // 2


@dataclass(frozen=True)
class IndexResult:
    ok: bool
    det: int
    dependent: bool
    witness: tuple[int, int] | None


def index_determinant(d11: int, d12: int, d22: int) -> IndexResult:
    """Hodge index test on the span of two classes, given their pairings.

    Needs some combination of positive square. Then the gram determinant
    must be <= 0, with equality exactly for numerically dependent classes;
    the witness ``(l, m)`` has ``l D1 + m D2`` numerically trivial.
    """
    det = d11 * d22 - d12 * d12
    if not (d11 > 0 or d22 > 0 or det < 0):
        raise NotApplicable("no combination of D1, D2 has positive square")
    if det > 0:
        return IndexResult(False, det, False, None)
    if det < 0:
        return IndexResult(True, det, False, None)
    l, m = (d12, -d11) if (d12 or d11) else (d22, -d12)
    g = math.gcd(l, m)
    l, m = l // g, m // g
    if l < 0 or (l == 0 and m < 0):
        l, m = -l, -m
    return IndexResult(True, 0, True, (l, m))


@dataclass(frozen=True)
class NefThreshold:
    """``value`` is None when no class has K.G < 0, i.e. t0 is unbounded."""

    value: Fraction | None
    argmin: str | None
    denominator_le_3: bool | None


def nef_threshold(classes) -> NefThreshold:
    """``t0 = min H.G / (-K.G)`` over declared classes with K.G < 0.

    ``classes`` holds ``(name, H_dot, K_dot)`` triples or dicts with those
    keys. Only the declared classes are consulted.
    """
    best, arg = None, None
    for c in classes:
        name, h, k = (c["name"], c["H_dot"], c["K_dot"]) if isinstance(c, dict) else c
        if h <= 0:
            raise NotAmple(f"H.{name} = {h} <= 0")
        if k < 0:
            t = Fraction(h, -k)
            if best is None or t < best:
                best, arg = t, name
    if best is None:
        return NefThreshold(None, None, None)
    return NefThreshold(best, arg, best.denominator <= 3)


_NU_NOTES = {
    0: "mK ~ 0 for some m in {1, 2, 3, 4, 6}",
    1: "P_m >= 2 for some m <= 42",
    2: "P_m >= 2 for all m >= 2",
}


def nu_table(K_nef: bool, K2: int, K_num_zero: bool) -> dict:
    if not K_nef:
        raise NotInScope("K is not nef")
    if K_num_zero and K2 != 0:
        raise ValueError("numerically trivial K has K^2 = 0")
    if K2 < 0:
        raise ValueError("nef K has K^2 >= 0")
    nu = 0 if K_num_zero else (1 if K2 == 0 else 2)
    return {"nu": nu, "note": _NU_NOTES[nu]}
