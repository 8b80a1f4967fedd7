"""Dominating-set verification, greedy and exact solvers, and bound formulas.

Every function accepts either a :class:`~tokendom.graphs.Graph` (base graphs
included) or a :class:`~tokendom.graphs.TokenGraph`. Vertex sets are given in
the graph's own vertex form: labels for base graphs, sorted label tuples for
token graphs.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .errors import InvalidParameterError, ResourceLimitError
from .graphs import Graph, TokenGraph, _popcount_iter

DEFAULT_SOLVER_VERTICES = 500
DEFAULT_SOLVER_NODES = 10**8


@dataclass
class DominationCertificate:
    set: list
    method: str
    verified: bool
    lower_bound: int
    upper_bound: int
    optimal: bool = False
    family: str = "custom"
    n: Optional[int] = None
    k: Optional[int] = None
    nodes: int = 0

    @property
    def size(self) -> int:
        return len(self.set)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "k": self.k,
            "method": self.method,
            "size": self.size,
            "set": [list(v) if isinstance(v, tuple) else [v] for v in self.set],
            "verified": self.verified,
            "optimal": self.optimal,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
        }


@dataclass
class BoundsReport:
    max_degree_lower: int
    min_degree_log_upper: Optional[int] = None
    mantel_lower: Optional[int] = None
    independence_upper_formula: Optional[int] = None
    extras: dict = field(default_factory=dict)


def _graph_of(g) -> Graph:
    if isinstance(g, TokenGraph):
        return g.graph
    return g


def _describe(g) -> dict:
    if isinstance(g, TokenGraph):
        return {"family": g.family, "n": g.n, "k": g.k}
    fam = getattr(g, "family", "custom")
    return {"family": fam, "n": getattr(g, "n", len(g)), "k": 1 if fam != "custom" else None}


def _closed_masks(G: Graph) -> list[int]:
    return [(1 << i) | sum(1 << j for j in nbrs) for i, nbrs in enumerate(G.adj)]


def _normalise_set(g, d) -> list:
    """Canonical form of a candidate vertex set, rejecting non-vertices."""
    if isinstance(g, TokenGraph):
        return sorted({g.validate(v) for v in d}, key=lambda t: tuple(reversed(t)))
    out = []
    for v in d:
        g.index(v)
        if v not in out:
            out.append(v)
    return sorted(out, key=g.index)


def is_dominating(g, d) -> tuple[bool, object]:
    """Check whether ``d`` dominates ``g``.

    Returns ``(True, None)`` or ``(False, w)`` with ``w`` the canonical-least
    undominated vertex. Implicit token graphs are checked through the
    neighbour oracle.
    """
    members = _normalise_set(g, d)
    if isinstance(g, TokenGraph) and not g.explicit:
        chosen = {g.mask(v) for v in members}
        for v in g.iter_vertices():
            m = g.mask(v)
            if m in chosen:
                continue
            if not any(w in chosen for w in g._neighbor_masks(m)):
                return False, v
        return True, None
    G = _graph_of(g)
    covered = 0
    closed = _closed_masks(G)
    for v in members:
        covered |= closed[G.index(v)]
    full = (1 << len(G)) - 1
    if covered == full:
        return True, None
    missing = full & ~covered
    return False, G.vertices[(missing & -missing).bit_length() - 1]


def _greedy_indices(closed: list[int], n: int) -> list[int]:
    undominated = (1 << n) - 1
    chosen = []
    while undominated:
        best, best_gain = -1, 0
        for i, c in enumerate(closed):
            gain = (c & undominated).bit_count()
            if gain > best_gain:
                best, best_gain = i, gain
        chosen.append(best)
        undominated &= ~closed[best]
    return chosen


def greedy_dominating(g) -> DominationCertificate:
    """Repeatedly take the vertex dominating the most undominated vertices."""
    G = _graph_of(g)
    if len(G) == 0:
        raise InvalidParameterError("graph has no vertices")
    chosen = _greedy_indices(_closed_masks(G), len(G))
    verts = [G.vertices[i] for i in sorted(chosen)]
    ok, _ = is_dominating(G, verts)
    lower = degree_bounds(G).max_degree_lower
    return DominationCertificate(verts, "greedy", ok, lower, len(verts),
                                 optimal=len(verts) == lower, **_describe(g))


class _Search:
    """Branch-and-bound over the set-cover form of domination.

    Universe and candidate sets are both the vertex set; candidate ``c``
    covers its closed neighbourhood. Siblings exclude earlier candidates, so
    an undominated vertex left with a single allowed candidate forces it.
    """

    def __init__(self, closed, n, max_nodes, deadline):
        self.closed = closed
        self.n = n
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.nodes = 0
        self.aborted = False
        self.best = _greedy_indices(closed, n)

    def _lower_bound(self, undominated, allowed):
        need = undominated.bit_count()
        gains = sorted(((self.closed[c] & undominated).bit_count()
                        for c in _popcount_iter(allowed)), reverse=True)
        total = 0
        for t, gain in enumerate(gains, 1):
            if gain == 0:
                break
            total += gain
            if total >= need:
                return t
        return None  # allowed candidates cannot finish the cover

    def run(self, undominated, allowed, chosen):
        self.nodes += 1
        if self.nodes > self.max_nodes or (
                self.deadline is not None and self.nodes % 256 == 0
                and time.monotonic() > self.deadline):
            self.aborted = True
        if self.aborted:
            return
        chosen = list(chosen)
        # unit propagation + choose branching vertex
        while True:
            if not undominated:
                if len(chosen) < len(self.best):
                    self.best = chosen
                return
            if len(chosen) + 1 >= len(self.best):
                return
            pivot, pivot_cands, pivot_count = -1, 0, None
            forced = -1
            for u in _popcount_iter(undominated):
                cands = self.closed[u] & allowed
                cnt = cands.bit_count()
                if cnt == 0:
                    return
                if cnt == 1:
                    forced = cands.bit_length() - 1
                    break
                if pivot_count is None or cnt < pivot_count:
                    pivot, pivot_cands, pivot_count = u, cands, cnt
            if forced < 0:
                break
            chosen.append(forced)
            undominated &= ~self.closed[forced]
            allowed &= ~(1 << forced)

        lb = self._lower_bound(undominated, allowed)
        if lb is None or len(chosen) + lb >= len(self.best):
            return
        order = sorted(_popcount_iter(pivot_cands),
                       key=lambda c: (-(self.closed[c] & undominated).bit_count(), c))
        for c in order:
            self.run(undominated & ~self.closed[c], allowed & ~(1 << c), chosen + [c])
            if self.aborted:
                return
            allowed &= ~(1 << c)


def exact_min_dominating(g, max_vertices: int = DEFAULT_SOLVER_VERTICES,
                         max_nodes: int = DEFAULT_SOLVER_NODES,
                         timeout_ms: Optional[int] = None) -> DominationCertificate:
    """Minimum dominating set by branch-and-bound.

    If the node or time budget runs out the best set found so far is returned
    with ``optimal=False``.
    """
    G = _graph_of(g)
    n = len(G)
    if n == 0:
        raise InvalidParameterError("graph has no vertices")
    if n > max_vertices:
        raise ResourceLimitError(
            f"exact solver limited to {max_vertices} vertices, graph has {n}",
            "--solver-vertices")
    deadline = None if timeout_ms is None else time.monotonic() + timeout_ms / 1000
    search = _Search(_closed_masks(G), n, max_nodes, deadline)
    search.run((1 << n) - 1, (1 << n) - 1, [])
    verts = [G.vertices[i] for i in sorted(search.best)]
    ok, _ = is_dominating(G, verts)
    optimal = not search.aborted
    lower = len(verts) if optimal else degree_bounds(G).max_degree_lower
    return DominationCertificate(verts, "exact", ok, lower, len(verts), optimal=optimal,
                                 nodes=search.nodes, **_describe(g))


def _degree_extremes(g) -> tuple[int, int, int]:
    if isinstance(g, TokenGraph) and not g.explicit:
        degs = [g.degree(v) for v in g.iter_vertices()]
    else:
        degs = _graph_of(g).degrees()
    return len(degs), max(degs), min(degs)


def max_degree_lower(nv: int, max_deg: int) -> int:
    return -(-nv // (1 + max_deg))


def min_degree_log_upper(nv: int, min_deg: int) -> Optional[int]:
    if min_deg <= 1:
        return None
    return math.floor(nv * (1 + math.log(min_deg + 1)) / (min_deg + 1))


def mantel_lower_bound_f3(n: int) -> int:
    """Lower bound on the domination number of the 3-token graph of K_n.

    Pairs left uncovered by a dominating family of triples form a
    triangle-free graph, hence number at most floor(n^2/4).
    """
    if n < 3:
        raise InvalidParameterError(f"need n >= 3, got {n}")
    return -(-(comb(n, 2) - n * n // 4) // 3)


def independence_number(g) -> int:
    """Exact independence number by bitmask branching (small graphs only)."""
    G = _graph_of(g)
    nbr = [sum(1 << j for j in a) for a in G.adj]

    def best(cand):
        if not cand:
            return 0
        v = cand.bit_length() - 1
        rest = cand & ~(1 << v)
        if not nbr[v] & rest:
            return 1 + best(rest)
        return max(1 + best(rest & ~nbr[v]), best(rest))

    return best((1 << len(G)) - 1)


def degree_bounds(g) -> BoundsReport:
    """Max-degree lower bound and min-degree logarithmic upper bound.

    Token graphs additionally get the independence-number upper formula, and
    3-token graphs of complete graphs the Mantel lower bound.
    """
    nv, dmax, dmin = _degree_extremes(g)
    report = BoundsReport(max_degree_lower(nv, dmax), min_degree_log_upper(nv, dmin))
    if isinstance(g, TokenGraph):
        alpha = independence_number(g.base)
        nb = g.base.vertex_count
        report.independence_upper_formula = comb(nb, g.k - 1) * alpha // g.k
        if g.family == "complete" and g.k == 3:
            report.mantel_lower = mantel_lower_bound_f3(g.n)
    return report


def greedy_maximal_independent(g) -> list:
    """Colex-scan maximal independent set; dominating by maximality."""
    G = _graph_of(g)
    if len(G) == 0:
        raise InvalidParameterError("graph has no vertices")
    blocked = 0
    chosen = []
    for i, nbrs in enumerate(G.adj):
        if blocked >> i & 1:
            continue
        chosen.append(i)
        blocked |= 1 << i
        for j in nbrs:
            blocked |= 1 << j
    return [G.vertices[i] for i in chosen]
