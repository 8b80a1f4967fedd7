"""Explicit dominating sets for token graphs of stars and complete graphs.

Also collects the known bounds on the domination number per family in
:func:`theoretical_gamma`.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional

from .coverings import _greedy_blocks, greedy_cover, relabel, steiner_triple_system
from .domination import (DominationCertificate, greedy_maximal_independent, is_dominating,
                         mantel_lower_bound_f3, max_degree_lower, min_degree_log_upper)
from .errors import InvalidParameterError
from .graphs import (DEFAULT_VERTEX_BUDGET, build_complete, build_star, build_token_graph,
                     colex_sorted, residue_class)


def smallest_prime_factor(m: int) -> int:
    if m < 2:
        raise InvalidParameterError(f"smallest prime factor needs m >= 2, got {m}")
    d = 2
    while d * d <= m:
        if m % d == 0:
            return d
        d += 1
    return m


def strictly_above(x) -> int:
    """Least integer strictly greater than the rational ``x``."""
    return math.floor(Fraction(x)) + 1


# --- bounds table -------------------------------------------------------------


@dataclass
class GammaBounds:
    family: str
    n: int
    k: int
    lower: int
    upper: int
    source: str
    exact: Optional[int] = None
    extras: dict = field(default_factory=dict)


def theoretical_gamma(family: str, n: int, k: int) -> GammaBounds:
    """Proven lower/upper bounds (and the exact value where known).

    ``k`` is folded onto ``min(k, N - k)`` for an N-vertex base graph, since a
    token graph and its complementary token graph are isomorphic.
    """
    if family == "star":
        nb = n + 1
    elif family == "complete":
        nb = n
    else:
        raise InvalidParameterError(f"unknown family {family!r}; expected 'star' or 'complete'")
    if n < 1 or not 1 <= k <= nb:
        raise InvalidParameterError(f"invalid parameters n={n}, k={k} for family {family}")
    kk = min(k, nb - k)

    if kk == 0:
        return GammaBounds(family, n, k, 1, 1, "all tokens placed: a single vertex", exact=1)
    if kk == 1:
        return GammaBounds(family, n, k, 1, 1, "single-token graph is the base graph", exact=1)

    if family == "star":
        if kk == 2:
            return GammaBounds(family, n, k, n - 1, n - 1, "gamma(F2(Sn)) = n-1", exact=n - 1)
        p = smallest_prime_factor(kk - 1)
        nv = comb(nb, kk)
        log_upper = min_degree_log_upper(nv, min(kk, n - kk + 1))
        upper = comb(n, kk - 1)  # the k-sets holding the centre dominate
        if log_upper is not None:
            upper = min(upper, log_upper)
        leading = (1 - Fraction(1, p) + Fraction(1, kk + p - 1)) * comb(n, kk - 1)
        return GammaBounds(
            family, n, k, strictly_above(Fraction(comb(n, kk - 1), kk)), upper,
            "C(n,k-1)/k < gamma(Fk(Sn)) <= (1 - 1/p + 1/(k+p-1) + o(1)) C(n,k-1)",
            extras={"p": p, "leading_upper": float(leading),
                    "max_degree_lower": max_degree_lower(nv, n - kk + 1)})

    if kk == 2:
        return GammaBounds(family, n, k, n // 2, n // 2, "gamma(F2(Kn)) = floor(n/2)", exact=n // 2)
    upper = comb(n, kk - 1) // kk
    if kk == 3:
        lower = mantel_lower_bound_f3(n)
        if n % 12 in (2, 6):
            return GammaBounds(family, n, k, lower, lower,
                               "gamma(F3(Kn)) = n^2/12 - n/6 for n = 2,6 (mod 12)", exact=lower)
        return GammaBounds(family, n, k, lower, upper,
                           "Mantel lower bound; C(n,2)/3 upper bound")
    return GammaBounds(
        family, n, k, strictly_above(Fraction(comb(n, kk - 1), kk * kk)), upper,
        "C(n,k-1)/k^2 < gamma(Fk(Kn)) <= C(n,k-1)/k",
        extras={"proof_chain_lower": strictly_above(Fraction(comb(n - 1, kk), kk * kk)),
                "max_degree_lower": max_degree_lower(comb(n, kk), kk * (n - kk))})


def _proven_lower(family, n, k) -> int:
    """Best lower bound that does not rest on an exact-value theorem."""
    if family == "star":
        nb, dmax = n + 1, max(n - k + 1, k)
    else:
        kk = min(k, n - k)
        nb, dmax = n, kk * (n - kk)
    best = max_degree_lower(comb(nb, k), dmax)
    t = theoretical_gamma(family, n, k)
    if t.exact is None:
        best = max(best, t.lower)
    if family == "complete" and min(k, n - k) == 3:
        best = max(best, mantel_lower_bound_f3(n))
    return best


def _certificate(family, n, k, vertices, method, budget, verified=None) -> DominationCertificate:
    vertices = colex_sorted(vertices)
    if verified is None:
        verified = False
        base = build_star(n) if family == "star" else build_complete(n)
        if comb(base.vertex_count, k) <= budget:
            tg = build_token_graph(base, k, "implicit")
            verified, _ = is_dominating(tg, vertices)
    lower = _proven_lower(family, n, k)
    return DominationCertificate(vertices, method, verified, lower, len(vertices),
                                 optimal=verified and len(vertices) == lower,
                                 family=family, n=n, k=k)


# --- star ---------------------------------------------------------------------


def star_f2_construction(n: int, i: int = 1, j: int = 2) -> list[tuple]:
    """Centre pairs other than {0,i}, {0,j}, plus the leaf pair {i,j}."""
    if n < 2:
        raise InvalidParameterError(f"need n >= 2, got {n}")
    if not 1 <= i < j <= n:
        raise InvalidParameterError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    d = [(0, t) for t in range(1, n + 1) if t not in (i, j)]
    d.append((i, j))
    return colex_sorted(d)


@dataclass
class StarFkPlan:
    p: int
    d1: list
    partition: dict
    covers: dict
    d2: list
    residue_classes: dict


def _largest_residue(members, p) -> tuple[int, int]:
    counts = [0] * p
    for x in members:
        counts[x % p] += 1
    j = max(counts)
    return counts.index(j), j


def star_fk_plan(n: int, k: int) -> StarFkPlan:
    """Residue-sum dominating set for the k-token graph of the star, k >= 3.

    D1 keeps every centre-holding k-set whose sum is not 1 mod p. A remaining
    set A is classified by its most populous residue class i (smallest on
    ties) and that class's size j; its class-i part is swapped for a covering
    (j+1)-subset of the class, dropping the centre. The result is adjacent to
    A by sliding the centre token onto the added leaf.
    """
    if k < 3:
        raise InvalidParameterError("k must be >= 3; use star_f2_construction for k = 2")
    if 2 * k > n:
        raise InvalidParameterError(f"need k <= n/2, got n={n}, k={k}")
    p = smallest_prime_factor(k - 1)
    classes = {i: residue_class(n, i, p) for i in range(p)}
    d1, partition = [], defaultdict(list)
    for leaves in combinations(range(1, n + 1), k - 1):
        a = (0,) + leaves
        if sum(a) % p != 1:
            d1.append(a)
        else:
            partition[_largest_residue(leaves, p)].append(a)

    covers, d2 = {}, set()
    for (i, j) in sorted(partition):
        ground = classes[i]
        if j + 1 > len(ground):
            # class too small to host a (j+1)-cover; these sets dominate themselves
            covers[(i, j)] = []
            d2.update(partition[(i, j)])
            continue
        blocks = colex_sorted(relabel(_greedy_blocks(len(ground), j + 1, j), ground))
        covers[(i, j)] = blocks
        witness = {}
        for b in blocks:
            for s in combinations(b, j):
                witness.setdefault(s, b)
        for a in partition[(i, j)]:
            part = tuple(x for x in a[1:] if x % p == i)
            d2.add(tuple(sorted(set(a[1:]) - set(part) | set(witness[part]))))
    return StarFkPlan(p, colex_sorted(d1), dict(partition), covers, colex_sorted(d2), classes)


def star_fk_construction(n: int, k: int, budget: int = DEFAULT_VERTEX_BUDGET):
    """Returns ``(certificate, plan)``; verified when C(n+1, k) <= budget."""
    plan = star_fk_plan(n, k)
    d = set(plan.d1) | set(plan.d2)
    return _certificate("star", n, k, d, "star-fk-residue", budget), plan


def d1_claim_failures(n: int, k: int, d1) -> list[tuple]:
    """Vertices avoiding the centre with no neighbour in ``d1`` (should be none)."""
    tg = build_token_graph(build_star(n), k, "implicit")
    chosen = {tg.mask(a) for a in d1}
    bad = []
    for v in tg.iter_vertices():
        if v[0] == 0:
            continue
        if not any(w in chosen for w in tg._neighbor_masks(tg.mask(v))):
            bad.append(v)
    return bad


# --- complete -----------------------------------------------------------------


def complete_f2_construction(n: int) -> list[tuple]:
    """floor(n/2) disjoint pairs {1,2}, {3,4}, ..."""
    if n < 2:
        raise InvalidParameterError(f"need n >= 2, got {n}")
    return [(2 * i + 1, 2 * i + 2) for i in range(n // 2)]


def _half_cover(half: list[int], other: list[int]) -> tuple[list[tuple], str]:
    h = len(half)
    if h < 2:
        return [], "empty"
    if h == 2:
        # no triple inside a pair; borrow the least point of the other half
        return [tuple(sorted(half + [other[0]]))], "pair+1"
    if h % 6 in (1, 3) and h != 1:
        return relabel(steiner_triple_system(h).blocks, half), "sts"
    return relabel(greedy_cover(h, 3, 2).blocks, half), "greedy"


def complete_f3_split(n: int) -> tuple[list[tuple], list[list[tuple]]]:
    """Blocks covering every pair inside each half of [n], and each half's blocks."""
    if n < 4:
        raise InvalidParameterError(f"need n >= 4, got {n}")
    v1 = list(range(1, n // 2 + 1))
    v2 = list(range(n // 2 + 1, n + 1))
    b1, _ = _half_cover(v1, v2)
    b2, _ = _half_cover(v2, v1)
    return colex_sorted(set(b1) | set(b2)), [b1, b2]


def complete_f3_construction(n: int, budget: int = DEFAULT_VERTEX_BUDGET) -> DominationCertificate:
    """Union of pair-covering triple systems on the two halves of [n].

    Every triple meets one half in at least two points, and the block
    covering that pair shares two points with it. Beyond ``budget`` the
    certificate is backed by checking that pair coverage instead of a full
    domination scan.
    """
    blocks, halves = complete_f3_split(n)
    verified = None
    if comb(n, 3) > budget:
        verified = all(_pairs_covered(h, b) for h, b in
                       zip((range(1, n // 2 + 1), range(n // 2 + 1, n + 1)), halves))
    return _certificate("complete", n, 3, blocks, "complete-f3-split-sts", budget, verified)


def _pairs_covered(half, blocks) -> bool:
    covered = {s for b in blocks for s in combinations(sorted(b), 2)}
    return all(s in covered for s in combinations(sorted(half), 2))


def complete_fk_construction(n: int, k: int, budget: int = DEFAULT_VERTEX_BUDGET) -> DominationCertificate:
    """Colex-greedy maximal independent set of the Johnson graph J(n, k)."""
    if not 1 <= k <= n / 2:
        raise InvalidParameterError(f"need 1 <= k <= n/2, got n={n}, k={k}")
    tg = build_token_graph(build_complete(n), k, "explicit", budget)
    mis = greedy_maximal_independent(tg)
    ok, _ = is_dominating(tg, mis)
    return _certificate("complete", n, k, mis, "complete-fk-mis", budget, ok)


def construct(family: str, n: int, k: int, budget: int = DEFAULT_VERTEX_BUDGET) -> DominationCertificate:
    """Pick the family-appropriate construction for F_k of the base graph."""
    if family == "star":
        if k == 1:
            return _certificate("star", n, 1, [(0,)], "star-center", budget)
        if k == 2:
            return _certificate("star", n, 2, star_f2_construction(n), "star-f2-Dij", budget)
        return star_fk_construction(n, k, budget)[0]
    if family == "complete":
        if k == 2:
            return _certificate("complete", n, 2, complete_f2_construction(n),
                                "complete-f2-disjoint", budget)
        if k == 3 and n >= 4:
            return complete_f3_construction(n, budget)
        return complete_fk_construction(n, k, budget)
    raise InvalidParameterError(f"unknown family {family!r}; expected 'star' or 'complete'")
