"""Base graphs, k-token graphs and the colex subset indexing they share.

A token vertex is a sorted tuple of base labels. Internally the token graph
works on bitmasks over base-vertex *positions* (index into ``base.labels``),
and the canonical dense index of a token vertex is the colex rank of its
position tuple.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import InvalidParameterError, ResourceLimitError

DEFAULT_VERTEX_BUDGET = 200_000

TokenVertex = tuple  # sorted tuple of base labels


def colex_key(s: Sequence[int]) -> tuple:
    """Sort key putting sorted tuples in colex order."""
    return tuple(reversed(s))


def colex_sorted(sets: Iterable[Sequence[int]]) -> list[tuple]:
    return sorted((tuple(sorted(s)) for s in sets), key=colex_key)


def rank_subset(s: Iterable[int]) -> int:
    """Colex rank of a finite set of non-negative integers.

    The rank does not depend on the size of the ground set, which is what makes
    colex the natural dense index for k-subsets.
    """
    members = sorted(s)
    if len(set(members)) != len(members):
        raise InvalidParameterError(f"repeated element in {members}")
    if members and members[0] < 0:
        raise InvalidParameterError(f"negative element in {members}")
    return sum(comb(c, i + 1) for i, c in enumerate(members))


def unrank_subset(r: int, n: int, k: int) -> tuple:
    """Inverse of :func:`rank_subset` restricted to k-subsets of ``range(n)``."""
    if k < 0 or n < 0 or k > n:
        raise InvalidParameterError(f"need 0 <= k <= n, got n={n}, k={k}")
    if not 0 <= r < comb(n, k):
        raise InvalidParameterError(f"rank {r} outside [0, C({n},{k})={comb(n, k)})")
    out = []
    c = n - 1
    for i in range(k, 0, -1):
        while comb(c, i) > r:
            c -= 1
        out.append(c)
        r -= comb(c, i)
        c -= 1
    return tuple(reversed(out))


def multiples_of(n: int, i: int) -> list[int]:
    """``{j in [n] : i | j}``."""
    if i < 1:
        raise InvalidParameterError("divisor must be positive")
    return list(range(i, n + 1, i))


def residue_class(n: int, i: int, p: int) -> list[int]:
    """``{x in [n] : x = i (mod p)}``."""
    if p < 1:
        raise InvalidParameterError("modulus must be positive")
    return [x for x in range(1, n + 1) if x % p == i % p]


def _popcount_iter(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Explicit simple undirected graph.

    ``vertices`` is the canonical vertex order and ``adj[i]`` holds the sorted
    neighbour indices of ``vertices[i]``.
    """

    def __init__(self, vertices: Sequence, adj: Sequence[Sequence[int]]):
        self.vertices = list(vertices)
        self.adj = [sorted(a) for a in adj]
        self._index = {v: i for i, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise InvalidParameterError("duplicate vertex")
        for i, nbrs in enumerate(self.adj):
            for j in nbrs:
                if j == i:
                    raise InvalidParameterError(f"self-loop at {self.vertices[i]}")
                if i not in self.adj[j]:
                    raise InvalidParameterError("adjacency is not symmetric")

    def __len__(self):
        return len(self.vertices)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def index(self, v) -> int:
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise InvalidParameterError(f"{v!r} is not a vertex of this graph") from None

    def __contains__(self, v) -> bool:
        try:
            return v in self._index
        except TypeError:
            return False

    def neighbors(self, v) -> list:
        return [self.vertices[j] for j in self.adj[self.index(v)]]

    def degree(self, v) -> int:
        return len(self.adj[self.index(v)])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as index pairs ``(i, j)`` with ``i < j``, sorted."""
        return [(i, j) for i, nbrs in enumerate(self.adj) for j in nbrs if i < j]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2


class BaseGraph(Graph):
    """Graph on integer labels; ``family`` is ``star``, ``complete`` or ``custom``."""

    def __init__(self, labels, edges, family="custom", n=None):
        labels = sorted(labels)
        pos = {v: i for i, v in enumerate(labels)}
        adj = [set() for _ in labels]
        for u, v in edges:
            if u == v:
                raise InvalidParameterError(f"self-loop at {u}")
            if u not in pos or v not in pos:
                raise InvalidParameterError(f"edge ({u},{v}) uses an unknown label")
            adj[pos[u]].add(pos[v])
            adj[pos[v]].add(pos[u])
        super().__init__(labels, adj)
        self.family = family
        self.n = len(labels) if n is None else n

    @property
    def labels(self) -> list[int]:
        return self.vertices

    def label_edges(self) -> list[tuple[int, int]]:
        return [(self.vertices[i], self.vertices[j]) for i, j in self.edges()]

    def __repr__(self):
        return f"BaseGraph(family={self.family!r}, n={self.n}, edges={self.edge_count})"


def build_star(n: int) -> BaseGraph:
    """Star with centre 0 and leaves 1..n."""
    if n < 1:
        raise InvalidParameterError(f"star needs n >= 1 leaves, got {n}")
    return BaseGraph(range(n + 1), [(0, i) for i in range(1, n + 1)], "star", n)


def build_complete(n: int) -> BaseGraph:
    if n < 1:
        raise InvalidParameterError(f"complete graph needs n >= 1, got {n}")
    return BaseGraph(range(1, n + 1), combinations(range(1, n + 1), 2), "complete", n)


def build_graph(labels, edges) -> BaseGraph:
    return BaseGraph(labels, edges, "custom")


class TokenGraph:
    """The k-token graph of ``base``.

    With ``explicit=True`` the full adjacency is materialised (refused above
    ``budget`` vertices); otherwise only the neighbour oracle is available.
    Both modes answer :meth:`neighbors` identically.
    """

    def __init__(self, base: BaseGraph, k: int, explicit: bool = True,
                 budget: int = DEFAULT_VERTEX_BUDGET):
        nb = base.vertex_count
        # k = nb is allowed: a single isolated vertex, needed for F_2(K_2)
        if not 1 <= k <= nb:
            raise InvalidParameterError(
                f"token count k={k} must satisfy 1 <= k <= {nb} for a base graph on {nb} vertices")
        self.base = base
        self.k = k
        self.vertex_count = comb(nb, k)
        self.explicit = explicit
        self._labels = base.labels
        self._pos = {v: i for i, v in enumerate(self._labels)}
        self._nbr_mask = [sum(1 << j for j in a) for a in base.adj]
        self._graph = None
        if explicit:
            if self.vertex_count > budget:
                raise ResourceLimitError(
                    f"F_{k} of {base.family} graph has {self.vertex_count} vertices, "
                    f"over the explicit budget --budget-vertices={budget}",
                    "--budget-vertices")
            self._graph = self._materialise()

    @property
    def family(self) -> str:
        return self.base.family

    @property
    def n(self) -> int:
        return self.base.n

    def __repr__(self):
        mode = "explicit" if self.explicit else "implicit"
        return f"TokenGraph({self.family}, n={self.n}, k={self.k}, {mode})"

    def __len__(self):
        return self.vertex_count

    # encoding ---------------------------------------------------------------

    def mask(self, v) -> int:
        return sum(1 << self._pos[x] for x in v)

    def from_mask(self, m: int) -> tuple:
        return tuple(self._labels[i] for i in _popcount_iter(m))

    def validate(self, v) -> tuple:
        """Return ``v`` as a sorted label tuple, or raise if it is not a vertex."""
        try:
            t = tuple(sorted(v))
        except TypeError:
            raise InvalidParameterError(f"{v!r} is not a token vertex") from None
        if len(t) != self.k or len(set(t)) != self.k or any(x not in self._pos for x in t):
            raise InvalidParameterError(
                f"{v!r} is not a {self.k}-subset of the base vertex set")
        return t

    def rank(self, v) -> int:
        return rank_subset(self._pos[x] for x in self.validate(v))

    def unrank(self, r: int) -> tuple:
        return tuple(self._labels[i] for i in unrank_subset(r, self.base.vertex_count, self.k))

    def vertices(self) -> list[tuple]:
        if self._graph is not None:
            return list(self._graph.vertices)
        return list(self.iter_vertices())

    def iter_vertices(self) -> Iterator[tuple]:
        """All vertices in colex order, generated lazily."""
        nb = self.base.vertex_count
        c = list(range(self.k))
        while True:
            yield tuple(self._labels[i] for i in c)
            # colex successor: bump the lowest position that can move
            i = 0
            while i < self.k - 1 and c[i] + 1 == c[i + 1]:
                i += 1
            if i == self.k - 1 and c[i] + 1 == nb:
                return
            c[i] += 1
            for j in range(i):
                c[j] = j

    # adjacency --------------------------------------------------------------

    def _neighbor_masks(self, m: int) -> list[int]:
        out = []
        for a in _popcount_iter(m):
            free = self._nbr_mask[a] & ~m
            for b in _popcount_iter(free):
                out.append(m ^ (1 << a) ^ (1 << b))
        return out

    def neighbors(self, v) -> list[tuple]:
        """Vertices reachable by sliding one token along a base edge, colex order."""
        t = self.validate(v)
        if self._graph is not None:
            return self._graph.neighbors(t)
        return colex_sorted(self.from_mask(w) for w in self._neighbor_masks(self.mask(t)))

    def degree(self, v) -> int:
        t = self.validate(v)
        return len(self._neighbor_masks(self.mask(t)))

    def is_adjacent(self, u, v) -> bool:
        x = self.mask(self.validate(u)) ^ self.mask(self.validate(v))
        if x.bit_count() != 2:
            return False
        a, b = _popcount_iter(x)
        return bool(self._nbr_mask[a] >> b & 1)

    def _materialise(self) -> Graph:
        verts = list(self.iter_vertices())
        masks = [self.mask(v) for v in verts]
        index = {m: i for i, m in enumerate(masks)}
        adj = [sorted(index[w] for w in self._neighbor_masks(m)) for m in masks]
        return Graph(verts, adj)

    @property
    def graph(self) -> Graph:
        if self._graph is None:
            raise ResourceLimitError(
                "operation needs an explicit token graph; rebuild with explicit=True",
                "--budget-vertices")
        return self._graph

    @property
    def edge_count(self) -> int:
        if self._graph is not None:
            return self._graph.edge_count
        return sum(len(self._neighbor_masks(self.mask(v))) for v in self.iter_vertices()) // 2


def build_token_graph(g: BaseGraph, k: int, mode: str = "explicit",
                      budget: int = DEFAULT_VERTEX_BUDGET) -> TokenGraph:
    if mode not in ("explicit", "implicit"):
        raise InvalidParameterError(f"mode must be 'explicit' or 'implicit', got {mode!r}")
    return TokenGraph(g, k, explicit=(mode == "explicit"), budget=budget)


def token_neighbors(tg: TokenGraph, v) -> list[tuple]:
    return tg.neighbors(v)


def base_graph(family: str, n: int) -> BaseGraph:
    if family == "star":
        return build_star(n)
    if family == "complete":
        return build_complete(n)
    raise InvalidParameterError(f"unknown family {family!r}; expected 'star' or 'complete'")
