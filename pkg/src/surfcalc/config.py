"""Numerical analysis of finite curve configurations on a smooth surface.

A configuration records, for each curve, its genus and self-intersection,
plus the pairwise intersection numbers. The canonical degree of each curve
is derived by adjunction, ``K.G = 2g - 2 - G.G``, so it is never input.
Curves are assumed irreducible and nonsingular.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import lattice as lat
from .errors import (
    BudgetExceeded,
    InvariantViolation,
    NotContractible,
    NotMinimal,
    NotNegDef,
    NotNegDefSupport,
    budget,
)


@dataclass(frozen=True)
class Curve:
    name: str
    genus: int = 0
    self_int: int = -2

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError(f"curve {self.name}: genus must be nonnegative")

    @property
    def k_dot(self) -> int:
        return 2 * self.genus - 2 - self.self_int


@dataclass(frozen=True)
class CurveConfig:
    curves: tuple[Curve, ...]
    gram: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        n = len(self.curves)
        if n == 0:
            raise ValueError("a configuration needs at least one curve")
        names = [c.name for c in self.curves]
        if len(set(names)) != n:
            raise ValueError("curve names must be distinct")
        g = self.gram
        if len(g) != n or any(len(r) != n for r in g):
            raise ValueError("gram has the wrong shape")
        for i in range(n):
            if g[i][i] != self.curves[i].self_int:
                raise ValueError("gram diagonal must match self-intersections")
            for j in range(i):
                if g[i][j] != g[j][i] or g[i][j] < 0:
                    raise ValueError("distinct curves need symmetric nonnegative intersections")

    @classmethod
    def build(cls, curves: Sequence[Curve], pairs=()) -> "CurveConfig":
        """``pairs`` holds ``(name_a, name_b, k)`` triples (or index triples)."""
        curves = tuple(curves)
        index = {c.name: i for i, c in enumerate(curves)}
        n = len(curves)
        g = [[0] * n for _ in range(n)]
        for i, c in enumerate(curves):
            g[i][i] = c.self_int
        for a, b, k in pairs:
            i = index[a] if isinstance(a, str) else a
            j = index[b] if isinstance(b, str) else b
            if i == j:
                raise ValueError("use self_int for self-intersections")
            g[i][j] = g[j][i] = k
        return cls(curves, tuple(map(tuple, g)))

    @classmethod
    def from_graph(cls, n: int, edges, genus=0, self_int=-2, prefix="G") -> "CurveConfig":
        curves = [Curve(f"{prefix}{i + 1}", genus, self_int) for i in range(n)]
        return cls.build(curves, [(i, j, 1) for i, j in edges])

    @classmethod
    def from_json(cls, data: dict) -> "CurveConfig":
        curves = [Curve(c["name"], int(c.get("genus", 0)), int(c["self"])) for c in data["curves"]]
        return cls.build(curves, [tuple(p) for p in data.get("pairs", [])])

    def to_json(self) -> dict:
        pairs = [
            [self.curves[i].name, self.curves[j].name, self.gram[i][j]]
            for i in range(len(self)) for j in range(i + 1, len(self)) if self.gram[i][j]
        ]
        return {
            "curves": [{"name": c.name, "genus": c.genus, "self": c.self_int} for c in self.curves],
            "pairs": pairs,
        }

    def __len__(self):
        return len(self.curves)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.curves)

    @property
    def k_dots(self) -> tuple[int, ...]:
        return tuple(c.k_dot for c in self.curves)

    @property
    def lattice(self) -> lat.Lattice:
        return lat.Lattice(self.gram, self.names)

    def dot(self, x: Sequence, y: Sequence):
        return self.lattice.form(x, y)

    def k_dot(self, x: Sequence):
        return sum(k * a for k, a in zip(self.k_dots, x))

    def edges(self) -> list[tuple[int, int, int]]:
        n = len(self)
        return [(i, j, self.gram[i][j]) for i in range(n) for j in range(i + 1, n) if self.gram[i][j]]

    def components(self) -> list[list[int]]:
        n = len(self)
        seen = [False] * n
        out = []
        for s in range(n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in range(n):
                    if u != v and self.gram[v][u] and not seen[u]:
                        seen[u] = True
                        stack.append(u)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def restrict(self, idx: Sequence[int]) -> "CurveConfig":
        return CurveConfig(
            tuple(self.curves[i] for i in idx),
            tuple(tuple(self.gram[i][j] for j in idx) for i in idx),
        )


def dynkin_config(kind: str) -> CurveConfig:
    """-2-curve configuration of type ``A<n>``, ``D<n>``, ``E6``, ``E7`` or ``E8``.

    Node order for E_n follows Bourbaki: 1-3-4-5-...-n is the long chain and
    node 2 hangs off node 4.
    """
    t, n = kind[0].upper(), int(kind[1:])
    if t == "A" and n >= 1:
        edges = [(i, i + 1) for i in range(n - 1)]
    elif t == "D" and n >= 4:
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif t == "E" and n in (6, 7, 8):
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
    else:
        raise ValueError(f"unknown Dynkin type {kind}")
    return CurveConfig.from_graph(n, edges)


# -- genus arithmetic ----------------------------------------------------------


def _adjunction_twice(C: CurveConfig, D) -> int:
    value = C.dot(D, D) + C.k_dot(D)
    if value % 2:
        raise InvariantViolation(f"D.D + K.D = {value} is odd; configuration data inconsistent")
    return value


def pa(C: CurveConfig, D) -> int:
    """Arithmetic genus from ``2 p_a - 2 = (K + D).D``."""
    return _adjunction_twice(C, D) // 2 + 1


def chi(C: CurveConfig, D) -> int:
    """``chi(O_D) = -(D.D + K.D) / 2 = 1 - p_a(D)``."""
    return -_adjunction_twice(C, D) // 2


# -- numerical cycle -----------------------------------------------------------


def numerical_cycle(C: CurveConfig, order: Sequence[int] | None = None) -> tuple[int, ...]:
    """Minimal Z > 0 with ``Z.G <= 0`` for every curve G (Artin's algorithm).

    Start from the reduced sum and add a curve meeting Z positively until
    none is left. ``order`` fixes which such curve is taken first.
    """
    if not C.is_connected():
        raise ValueError("numerical cycle needs a connected configuration")
    if not lat.is_negative_definite(C.lattice):
        raise NotContractible("intersection matrix is not negative definite")
    n = len(C)
    order = list(range(n)) if order is None else list(order)
    z = [1] * n
    cap = budget(10**6)
    for _ in range(cap):
        for i in order:
            if sum(C.gram[i][j] * z[j] for j in range(n)) > 0:
                z[i] += 1
                break
        else:
            return tuple(z)
    raise InvariantViolation("numerical cycle iteration did not terminate")


# -- ADE recognition -----------------------------------------------------------


def dynkin_shape(n: int, edges) -> str | None:
    """Dynkin type of a simple graph by shape alone, or None if not ADE.

    ``edges`` are ``(i, j)`` or ``(i, j, multiplicity)``; any multiplicity
    other than 1 rules out ADE.
    """
    adj = {i: set() for i in range(n)}
    m = 0
    for e in edges:
        i, j = e[0], e[1]
        if len(e) > 2 and e[2] != 1:
            return None
        if i == j or j in adj[i]:
            return None
        adj[i].add(j)
        adj[j].add(i)
        m += 1
    if n == 0 or m != n - 1:
        return None
    seen, stack = {0}, [0]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != n:
        return None
    branch = [v for v in range(n) if len(adj[v]) >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        return None
    centre = branch[0]
    arms = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{n}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{n}"
    return None


ADE_DIAGNOSTICS = ("NotMinus2", "NotNegDef")


def classify_ADE(C: CurveConfig):
    """Dynkin type of a connected bunch of -2-curves, else a diagnostic.

    A disconnected configuration yields one result per component. The
    shape match and the definiteness test are computed independently and
    must agree; disagreement raises InvariantViolation.
    """
    comps = C.components()
    if len(comps) > 1:
        return [classify_ADE(C.restrict(c)) for c in comps]
    if any(c.genus != 0 or c.self_int != -2 for c in C.curves):
        return "NotMinus2"
    shape = dynkin_shape(len(C), C.edges())
    definite = lat.is_negative_definite(C.lattice)
    if definite != (shape is not None):
        raise InvariantViolation(f"shape {shape} disagrees with definiteness {definite}")
    return shape if definite else "NotNegDef"


# -- bounded searches ----------------------------------------------------------


def _box_size(bound) -> int:
    return math.prod(b + 1 for b in bound)


def _quadratic(C: CurveConfig):
    # 2 p_a(D) - 2 = D.G.D + k.D
    return C.gram, C.k_dots


def cycles_with_pa_at_least(C: CurveConfig, bound: Sequence[int], p: int) -> list[tuple[int, ...]]:
    """All cycles ``0 < D <= bound`` with ``p_a(D) >= p``, sorted."""
    threshold = 2 * p - 2
    gram, k = _quadratic(C)
    n = len(C)
    if lat.is_negative_definite(C.lattice):
        bounds = [(0, b) for b in bound]
        found = [
            d for d in lat.ellipsoid_points(gram, k, threshold, bounds)
            if any(d)
        ]
    else:
        found = [d for d in _all_cycles(bound) if C.dot(d, d) + C.k_dot(d) >= threshold]
    for d in found:
        _adjunction_twice(C, d)
    return sorted(found)


def _all_cycles(bound):
    cap = budget(10**8)
    if _box_size(bound) - 1 > cap:
        raise BudgetExceeded(f"search space of {_box_size(bound) - 1} cycles exceeds {cap}")
    for d in itertools.product(*(range(b + 1) for b in bound)):
        if any(d):
            yield d


def max_pa_bounded(C: CurveConfig, bound: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Maximum of ``p_a(D)`` over ``0 < D <= bound``, with the smallest maximiser.

    Negative definite configurations are searched with an exact ellipsoid
    enumeration, which visits only cycles at least as good as the best
    single curve; the answer is the same as the full box scan.
    """
    bound = tuple(int(b) for b in bound)
    if len(bound) != len(C) or any(b < 1 for b in bound):
        raise ValueError("bound must be at least the reduced sum of all curves")
    if lat.is_negative_definite(C.lattice):
        best_single = max(c.genus for c in C.curves)
        cands = cycles_with_pa_at_least(C, bound, best_single)
    else:
        cands = list(_all_cycles(bound))
    best = max(pa(C, d) for d in cands)
    return best, min(d for d in cands if pa(C, d) == best)


@dataclass(frozen=True)
class KConnectivity:
    connected: bool
    worst: tuple[tuple[int, ...], tuple[int, ...]] | None
    min_product: int | None


def is_k_connected(C: CurveConfig, D: Sequence[int], k: int) -> KConnectivity:
    """Whether ``D1.D2 >= k`` for every split ``D = D1 + D2`` with D1, D2 > 0."""
    D = tuple(D)
    if any(x < 0 for x in D) or not any(D):
        raise ValueError("D must be effective and nonzero")
    count = math.prod(x + 1 for x in D) - 2
    cap = budget(10**7)
    if count > cap:
        raise BudgetExceeded(f"{count} decompositions exceed the budget of {cap}")
    worst, worst_val = None, None
    for d1 in itertools.product(*(range(x + 1) for x in D)):
        if not any(d1) or d1 == D:
            continue
        d2 = tuple(a - b for a, b in zip(D, d1))
        v = C.dot(d1, d2)
        if worst_val is None or v < worst_val:
            worst, worst_val = (d1, d2), v
    return KConnectivity(worst_val is None or worst_val >= k, worst, worst_val)


# -- singularity classification ------------------------------------------------


@dataclass(frozen=True)
class SingularityReport:
    kind: str
    z_num: tuple[int, ...]
    z_squared: int
    search_bound: tuple[int, ...]
    bound_factor: Fraction
    max_pa: int
    max_pa_witness: tuple[int, ...]
    rational: bool
    elliptic_gorenstein: bool
    degree: int | None = None
    multiplicity: int | None = None
    embedding_dimension: int | None = None
    two_connected: bool | None = None
    du_val: str | None = None

    def to_json(self) -> dict:
        out = {}
        for key, value in self.__dict__.items():
            if isinstance(value, Fraction):
                value = lat.format_rational(value)
            elif isinstance(value, tuple):
                value = list(value)
            out[key] = value
        return out


def classify_singularity(C: CurveConfig, bound_factor=3) -> SingularityReport:
    """Rational / elliptic Gorenstein / other verdict for a contractible bunch.

    Quantifiers over all effective exceptional cycles are replaced by a
    search over ``D <= ceil(bound_factor * Z_num)``; the bound used is part
    of the report.
    """
    if not C.is_connected():
        raise ValueError("configuration must be connected")
    if not lat.is_negative_definite(C.lattice):
        raise NotNegDef("intersection matrix is not negative definite")
    factor = Fraction(bound_factor)
    z = numerical_cycle(C)
    z2 = C.dot(z, z)
    bound = tuple(max(1, math.ceil(factor * b)) for b in z)
    best, witness = max_pa_bounded(C, bound)
    common = dict(z_num=z, z_squared=z2, search_bound=bound, bound_factor=factor,
                  max_pa=best, max_pa_witness=witness)

    if best <= 0:
        if chi(C, z) != 1:
            raise InvariantViolation("rational verdict but chi(O_Z) != 1")
        d = -z2
        ade = classify_ADE(C)
        return SingularityReport(
            "rational", rational=True, elliptic_gorenstein=False, degree=d,
            multiplicity=d, embedding_dimension=d + 1,
            du_val=ade if isinstance(ade, str) and ade not in ADE_DIAGNOSTICS else None,
            **common,
        )

    minus_one = [c.name for c in C.curves if c.genus == 0 and c.self_int == -1]
    if minus_one:
        raise NotMinimal(f"-1-curves present: {', '.join(minus_one)}")
    n = len(C)
    kz = [C.curves[i].k_dot + sum(C.gram[i][j] * z[j] for j in range(n)) for i in range(n)]
    if pa(C, z) == 1 and not any(kz) and cycles_with_pa_at_least(C, bound, 1) == [z]:
        d = -z2
        conn = is_k_connected(C, z, 2)
        if not conn.connected:
            raise InvariantViolation("elliptic Gorenstein cycle is not 2-connected")
        return SingularityReport(
            "elliptic Gorenstein", rational=False, elliptic_gorenstein=True, degree=d,
            multiplicity=max(d, 2), embedding_dimension=max(d, 3), two_connected=True,
            **common,
        )
    return SingularityReport("other", rational=False, elliptic_gorenstein=False, **common)


# -- divisors against an ambient lattice ----------------------------------------


@dataclass(frozen=True)
class Ambient:
    """A lattice with finitely many declared curve classes.

    Nefness is only ever tested against the declared curves.
    """

    lattice: lat.Lattice
    curves: tuple[lat.DivisorClass, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.curves) != len(self.names):
            raise ValueError("one name per curve")
        for c in self.curves:
            if c.lattice != self.lattice:
                raise ValueError("curves must live in the ambient lattice")

    @classmethod
    def from_config(cls, C: CurveConfig) -> "Ambient":
        L = C.lattice
        return cls(L, tuple(L.unit(i) for i in range(len(C))), C.names)

    def vector(self, coords):
        return lat._make(self.lattice, [lat._normalize(Fraction(c)) for c in coords])

    def pairings(self, D) -> list:
        return [lat.pair(D, c) for c in self.curves]

    def is_nef(self, D) -> bool:
        return all(v >= 0 for v in self.pairings(D))


@dataclass(frozen=True)
class MobileResult:
    mobile: lat.DivisorClass
    fixed: lat.DivisorClass
    steps: tuple[str, ...]
    monogonal: bool


def mobile_reduction(A: Ambient, D: lat.DivisorClass, k3_mode: bool = True) -> MobileResult:
    """Strip curves G with ``D.G < 0`` from D until it is nef on the declared curves.

    In K3 mode every negative curve must be a -2-curve, and ``M.M >= D.D``
    is asserted after each subtraction. The lowest-index offending curve is
    taken each time.
    """
    current = D
    steps = []
    cap = 1000 * (1 + sum(abs(c) for c in D.coords))
    for _ in range(cap):
        bad = None
        for i, (g, v) in enumerate(zip(A.curves, A.pairings(current))):
            if v < 0:
                g2 = lat.pair(g, g)
                if g2 >= 0:
                    raise InvariantViolation(f"{A.names[i]} has g.g >= 0 but D.g < 0; D is not effective")
                if k3_mode and g2 != -2:
                    raise InvariantViolation(f"{A.names[i]} is a negative curve but not a -2-curve")
                bad = i
                break
        if bad is None:
            return MobileResult(current, D - current, tuple(steps), _monogonal(A, current))
        nxt = current - A.curves[bad]
        if k3_mode and lat.pair(nxt, nxt) < lat.pair(current, current):
            raise InvariantViolation("self-intersection dropped during reduction")
        current = nxt
        steps.append(A.names[bad])
    raise InvariantViolation("mobile reduction did not terminate")


def _monogonal(A: Ambient, M) -> bool:
    """``M = aE + G`` with E.E = 0, G a -2-curve, E.G = 1 and a >= 2."""
    if lat.pair(M, M) <= 0:
        return False
    for g in A.curves:
        if lat.pair(g, g) != -2:
            continue
        rest = M - g
        for e in A.curves:
            if lat.pair(e, e) != 0 or lat.pair(e, g) != 1:
                continue
            ratios = {Fraction(r, c) for r, c in zip(rest.coords, e.coords) if c}
            zero_ok = all(r == 0 for r, c in zip(rest.coords, e.coords) if not c)
            if zero_ok and len(ratios) == 1:
                a = ratios.pop()
                if a.denominator == 1 and a >= 2:
                    return True
    return False


@dataclass(frozen=True)
class ZariskiResult:
    positive: lat.QDivisorClass
    negative: lat.QDivisorClass
    coefficients: tuple[tuple[str, Fraction], ...]
    support: tuple[str, ...]
    diagnostic: str | None = None

    def to_json(self) -> dict:
        return {
            "P": [lat.format_rational(c) for c in self.positive.coords],
            "N": [lat.format_rational(c) for c in self.negative.coords],
            "coefficients": {k: lat.format_rational(v) for k, v in self.coefficients},
            "support": list(self.support),
            "diagnostic": self.diagnostic,
        }


def zariski_decomposition(A: Ambient, D) -> ZariskiResult:
    """``D = P + N`` with P nef on the declared curves and N on a negative definite support.

    The support grows by every curve that the current positive part meets
    negatively; at each stage P is recomputed from D by making it
    orthogonal to the whole support.
    """
    L = A.lattice
    D = lat.QDivisorClass(L, D.coords)
    support: list[int] = []
    for _ in range(len(A.curves) + 1):
        coeffs = []
        if support:
            sub = [[lat.pair(A.curves[i], A.curves[j]) for j in support] for i in support]
            if not lat.is_negative_definite(lat.Lattice(sub)):
                names = ", ".join(A.names[i] for i in support)
                raise NotNegDefSupport(f"support {{{names}}} is not negative definite")
            coeffs = lat.solve(sub, [lat.pair(D, A.curves[i]) for i in support])
        N = lat.QDivisorClass(L, (0,) * L.rank)
        for q, i in zip(coeffs, support):
            N = N + q * A.curves[i]
        P = lat.QDivisorClass(L, (D - N).coords)
        new = [i for i, v in enumerate(A.pairings(P)) if v < 0 and i not in support]
        if not new:
            break
        support = sorted(support + new)
    else:
        raise InvariantViolation("support growth did not stabilise")

    diagnostic = None
    bad = [A.names[i] for q, i in zip(coeffs, support) if q <= 0]
    if bad:
        diagnostic = f"nonpositive coefficient on {', '.join(bad)}; D may not be effective"
    for i in support:
        if lat.pair(P, A.curves[i]) != 0:
            raise InvariantViolation("positive part not orthogonal to the support")
    order = sorted(range(len(support)), key=lambda k: support[k])
    return ZariskiResult(
        P, N,
        tuple((A.names[support[k]], coeffs[k]) for k in order),
        tuple(A.names[i] for i in support),
        diagnostic,
    )
