"""Brute-force reference implementations, independent of the package code."""

from itertools import combinations


def brute_token_edges(labels, base_edges, k):
    """Edges of F_k(G) by testing every pair of k-sets directly."""
    edge_set = {frozenset(e) for e in base_edges}
    verts = [frozenset(c) for c in combinations(sorted(labels), k)]
    out = set()
    for a, b in combinations(verts, 2):
        diff = a ^ b
        if len(diff) == 2 and diff in edge_set:
            out.add(frozenset((tuple(sorted(a)), tuple(sorted(b)))))
    return verts, out


def naive_gamma(vertices, adj):
    """Smallest dominating set size by trying every subset in size order."""
    n = len(vertices)
    closed = [set(adj[i]) | {i} for i in range(n)]
    everything = set(range(n))
    for s in range(n + 1):
        for combo in combinations(range(n), s):
            covered = set()
            for i in combo:
                covered |= closed[i]
            if covered == everything:
                return s
    raise AssertionError("unreachable")


def brute_min_cover_size(n, k, l):
    blocks = list(combinations(range(1, n + 1), k))
    targets = set(combinations(range(1, n + 1), l))
    for s in range(1, len(blocks) + 1):
        for fam in combinations(blocks, s):
            if {t for b in fam for t in combinations(b, l)} >= targets:
                return s
