"""Automorphism group orders of small graphs by individualisation-refinement.

The order is computed along a stabiliser chain: for the first vertex v of
the first non-singleton cell of the refined partition, count the vertices w
of that cell for which some colour-preserving automorphism sends v to w
(the orbit), then recurse with v individualised. The product of orbit sizes
is the group order.
"""

from __future__ import annotations

from .errors import BudgetExceeded, budget


class _Search:
    def __init__(self, adj, node_budget):
        self.adj = adj
        self.budget = node_budget
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"automorphism search exceeded {self.budget} nodes")

    def refine(self, cells):
        """Equitable refinement. Returns the new ordered partition and a trace.

        Splitting depends only on neighbour counts into cells and on cell
        order, so isomorphic inputs produce corresponding outputs and equal
        traces.
        """
        adj = self.adj
        trace = []
        while True:
            cell_sets = [set(c) for c in cells]
            new = []
            for cell in cells:
                if len(cell) == 1:
                    new.append(cell)
                    continue
                groups = {}
                for v in cell:
                    sig = tuple(len(adj[v] & s) for s in cell_sets)
                    groups.setdefault(sig, []).append(v)
                for sig in sorted(groups):
                    new.append(groups[sig])
                trace.append(tuple((sig, len(groups[sig])) for sig in sorted(groups)))
            if len(new) == len(cells):
                return new, tuple(trace)
            cells = new

    @staticmethod
    def individualize(cells, v):
        out = []
        for cell in cells:
            if v in cell:
                out.append([v])
                rest = [u for u in cell if u != v]
                if rest:
                    out.append(rest)
            else:
                out.append(list(cell))
        return out

    def find_isomorphism(self, p1, p2):
        """Whether some automorphism carries ordered partition p1 onto p2."""
        self.tick()
        p1, t1 = self.refine(p1)
        p2, t2 = self.refine(p2)
        if t1 != t2 or [len(c) for c in p1] != [len(c) for c in p2]:
            return False
        target = next((i for i, c in enumerate(p1) if len(c) > 1), None)
        if target is None:
            perm = {c1[0]: c2[0] for c1, c2 in zip(p1, p2)}
            adj = self.adj
            return all({perm[u] for u in adj[v]} == adj[perm[v]] for v in perm)
        v = p1[target][0]
        left = self.individualize(p1, v)
        return any(self.find_isomorphism(left, self.individualize(p2, w)) for w in p2[target])

    def order(self, cells):
        self.tick()
        cells, _ = self.refine(cells)
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            return 1
        v = target[0]
        base = self.individualize(cells, v)
        orbit = 1 + sum(
            1 for w in target[1:] if self.find_isomorphism(base, self.individualize(cells, w))
        )
        return orbit * self.order(base)


def automorphism_group_order(adjacency, colors=None, node_budget=None) -> int:
    """Order of the automorphism group of a simple undirected graph.

    ``adjacency`` maps each vertex to an iterable of neighbours (or is a
    list indexed by vertex). ``colors`` optionally assigns each vertex a
    sortable colour that automorphisms must preserve.
    """
    if isinstance(adjacency, dict):
        vertices = sorted(adjacency)
        adj = {v: set(adjacency[v]) for v in vertices}
    else:
        vertices = list(range(len(adjacency)))
        adj = {v: set(adjacency[v]) for v in vertices}
    if not vertices:
        return 1
    for v, nbrs in adj.items():
        for u in nbrs:
            if v not in adj[u]:
                raise ValueError("adjacency must be symmetric")
    if colors is None:
        cells = [vertices]
    else:
        by_color = {}
        for v in vertices:
            by_color.setdefault(colors[v], []).append(v)
        cells = [by_color[k] for k in sorted(by_color)]
    search = _Search(adj, node_budget if node_budget is not None else budget(10**6))
    return search.order(cells)
