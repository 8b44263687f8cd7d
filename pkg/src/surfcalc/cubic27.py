"""The 27 lines on a nonsingular cubic surface, via its lattice.

The lattice is Z^7 with form diag(1, -1, ..., -1) and hyperplane class
h = (3, -1, ..., -1). Lines are the classes with ``L.L = -1`` and ``h.L = 1``;
roots are the classes with ``x.x = -2`` and ``h.x = 0``. See
``docs/cubic_box.md`` for why the coordinate boxes used here are complete.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import lattice as lat
from .config import dynkin_shape
from .graphs import automorphism_group_order

# e0 in [-2, 2], e1..e6 in [-1, 1] contains every line
LINE_BOX = (2, 1, 1, 1, 1, 1, 1)
ROOT_BOX = 2


@dataclass(frozen=True)
class CubicLattice:
    lattice: lat.Lattice
    h: lat.DivisorClass

    def __post_init__(self):
        if lat.pair(self.h, self.h) != 3 or not lat.parity_vector_check(self.lattice, self.h):
            raise ValueError("h must satisfy h.h = 3 and h.x = x.x (mod 2)")


def cubic_lattice() -> CubicLattice:
    L = lat.Lattice.diagonal([1, -1, -1, -1, -1, -1, -1], basis=tuple(f"e{i}" for i in range(7)), name="A(X)")
    return CubicLattice(L, L.vector((3, -1, -1, -1, -1, -1, -1)))


@dataclass(frozen=True)
class LineSet:
    lines: tuple[lat.DivisorClass, ...]
    labels: tuple[str, ...]

    def __len__(self):
        return len(self.lines)

    def family(self, i: int) -> str:
        return self.labels[i][0]

    def family_counts(self) -> dict[str, int]:
        counts = {"E": 0, "F": 0, "G": 0}
        for label in self.labels:
            counts[label[0]] += 1
        return counts

    def meet(self, i: int, j: int) -> int:
        return lat.pair(self.lines[i], self.lines[j])

    def index(self, v: lat.DivisorClass) -> int:
        return self.lines.index(v)


def classify_line(coords) -> str:
    """Family label of a line class in the e-basis.

    ``E{i}`` is e_i, ``F{ij}`` is e0 - e_i - e_j, and ``G{ijklm}`` is
    2e0 minus the five listed e's.
    """
    a0, rest = coords[0], coords[1:]
    if a0 == 0 and sorted(rest) == [0, 0, 0, 0, 0, 1]:
        return "E%d" % (rest.index(1) + 1)
    if a0 == 1 and sorted(rest) == [-1, -1, 0, 0, 0, 0]:
        return "F" + "".join(str(i + 1) for i, c in enumerate(rest) if c == -1)
    if a0 == 2 and sorted(rest) == [-1, -1, -1, -1, -1, 0]:
        return "G" + "".join(str(i + 1) for i, c in enumerate(rest) if c == -1)
    raise ValueError(f"{coords} is not a line class")


def enumerate_lines(C: CubicLattice | None = None, box=LINE_BOX) -> LineSet:
    C = C or cubic_lattice()
    found = lat.vectors_with(C.lattice, -1, [(C.h, 1)], box)
    return LineSet(tuple(found), tuple(classify_line(v.coords) for v in found))


def roots(C: CubicLattice | None = None, box=ROOT_BOX) -> list[lat.DivisorClass]:
    C = C or cubic_lattice()
    return lat.vectors_with(C.lattice, -2, [(C.h, 0)], box)


def incidence_graph(S: LineSet) -> dict[int, set[int]]:
    n = len(S)
    return {i: {j for j in range(n) if j != i and S.meet(i, j) == 1} for i in range(n)}


def triangles(S: LineSet, C: CubicLattice | None = None) -> list[tuple[int, int, int]]:
    C = C or cubic_lattice()
    out = []
    for a, b, c in itertools.combinations(range(len(S)), 3):
        if S.meet(a, b) == S.meet(a, c) == S.meet(b, c) == 1:
            if S.lines[a] + S.lines[b] + S.lines[c] == C.h:
                out.append((a, b, c))
    return out


def sixers(S: LineSet) -> list[tuple[int, ...]]:
    """All sets of six pairwise disjoint lines."""
    n = len(S)
    out = []

    def grow(chosen, start):
        if len(chosen) == 6:
            out.append(tuple(chosen))
            return
        for j in range(start, n):
            if all(S.meet(i, j) == 0 for i in chosen):
                grow(chosen + [j], j + 1)

    grow([], 0)
    return out


def double_sixes(S: LineSet) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Double sixes as ``(l, m)`` with ``l[i]`` disjoint from ``m[i]`` only.

    Each unordered double six appears once, with the lexicographically
    smaller sextuple (as a sorted index set) first.
    """
    n = len(S)
    seen = set()
    out = []
    for ls in sixers(S):
        ms = []
        for i, li in enumerate(ls):
            cands = [
                j for j in range(n)
                if j not in ls and S.meet(li, j) == 0
                and all(S.meet(lk, j) == 1 for k, lk in enumerate(ls) if k != i)
            ]
            if len(cands) != 1:
                break
            ms.append(cands[0])
        else:
            if len(set(ms)) == 6 and all(S.meet(a, b) == 0 for a, b in itertools.combinations(ms, 2)):
                key = frozenset([frozenset(ls), frozenset(ms)])
                if key not in seen:
                    seen.add(key)
                    if tuple(sorted(ms)) < tuple(ls):
                        order = sorted(range(6), key=lambda k: ms[k])
                        out.append((tuple(ms[k] for k in order), tuple(ls[k] for k in order)))
                    else:
                        out.append((tuple(ls), tuple(ms)))
    out.sort()
    return out


@dataclass(frozen=True)
class SimpleRoots:
    roots: tuple[lat.DivisorClass, ...]
    gram: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    dynkin: str


def simple_roots(C: CubicLattice | None = None) -> SimpleRoots:
    """The six classes f1..f6 spanning the orthogonal complement of h.

    With e0 = L5 + L5' + L5'', e1..e4 = L1..L4, e5 = L5', e6 = L5'' one gets
    L5 = e0 - e5 - e6, so f1..f5 = e_i - e_{i+1} and f6 = L4 - L5 = e4 - e0 + e5 + e6.
    """
    C = C or cubic_lattice()
    L = C.lattice
    e = [L.unit(i) for i in range(7)]
    fs = [e[1] - e[2], e[2] - e[3], e[3] - e[4], e[4] - e[5], e[5] - e[6], e[4] - (e[0] - e[5] - e[6])]
    gram = tuple(tuple(lat.pair(a, b) for b in fs) for a in fs)
    edges = []
    for i in range(6):
        if gram[i][i] != -2 or lat.pair(fs[i], C.h) != 0:
            raise AssertionError(f"f{i + 1} is not a root orthogonal to h")
        for j in range(i + 1, 6):
            if gram[i][j] not in (0, 1):
                raise AssertionError(f"f{i + 1}.f{j + 1} = {gram[i][j]}")
            if gram[i][j] == 1:
                edges.append((i, j))
    shape = dynkin_shape(6, edges)
    if shape != "E6":
        raise AssertionError(f"simple roots give {shape}, not E6")
    return SimpleRoots(tuple(fs), gram, tuple(edges), shape)


def incidence_automorphism_order(G: dict[int, set[int]] | None = None, node_budget=None) -> int:
    if G is None:
        G = incidence_graph(enumerate_lines())
    return automorphism_group_order(G, node_budget=node_budget)
