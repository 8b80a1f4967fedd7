"""(n, k, l) covering designs on the ground set [n] = {1, ..., n}."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

from .errors import InvalidParameterError, ResourceLimitError
from .graphs import colex_key, colex_sorted, rank_subset

DEFAULT_COVER_BUDGET = 5_000_000


@dataclass
class CoveringDesign:
    n: int
    k: int
    l: int
    blocks: list
    exact: bool = False

    def __post_init__(self):
        self.blocks = colex_sorted(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "l": self.l, "exact": self.exact,
                "blocks": [list(b) for b in self.blocks]}

    def to_text(self) -> str:
        return "".join(" ".join(map(str, b)) + "\n" for b in self.blocks)


@dataclass
class CoverReport:
    covering: bool
    exact: bool
    multiplicity: dict = field(repr=False)
    uncovered: Optional[tuple] = None


def _check_params(n, k, l):
    if not 2 <= l < k < n:
        raise InvalidParameterError(f"need 2 <= l < k < n, got (n,k,l)=({n},{k},{l})")


def trivial_cover_lower_bound(n: int, k: int, l: int) -> int:
    """ceil(C(n,l) / C(k,l)): each block covers C(k,l) of the l-sets."""
    _check_params(n, k, l)
    return -(-comb(n, l) // comb(k, l))


def verify_cover(d: CoveringDesign) -> CoverReport:
    multiplicity = {s: 0 for s in combinations(range(1, d.n + 1), d.l)}
    for b in d.blocks:
        if len(b) != d.k or len(set(b)) != d.k or any(not 1 <= x <= d.n for x in b):
            raise InvalidParameterError(f"malformed block {list(b)} for (n,k)=({d.n},{d.k})")
        for s in combinations(sorted(b), d.l):
            multiplicity[s] += 1
    missing = [s for s, m in multiplicity.items() if m == 0]
    uncovered = min(missing, key=colex_key) if missing else None
    exact = not missing and all(m == 1 for m in multiplicity.values())
    d.exact = exact
    return CoverReport(not missing, exact, multiplicity, uncovered)


def _greedy_blocks(n, k, l, budget=DEFAULT_COVER_BUDGET) -> list[tuple]:
    # looser than the public contract: 1 <= l < k <= n, used for residue-class covers
    if comb(n, k) * comb(k, l) > budget:
        raise ResourceLimitError(
            f"greedy cover ({n},{k},{l}) needs {comb(n, k) * comb(k, l)} incidences, "
            f"budget is {budget}", "--budget-vertices")
    blocks = colex_sorted(combinations(range(n), k))
    masks = [sum(1 << rank_subset(s) for s in combinations(b, l)) for b in blocks]
    uncovered = (1 << comb(n, l)) - 1
    chosen = []
    while uncovered:
        best, best_gain = -1, 0
        for i, m in enumerate(masks):
            gain = (m & uncovered).bit_count()
            if gain > best_gain:
                best, best_gain = i, gain
        chosen.append(tuple(x + 1 for x in blocks[best]))
        uncovered &= ~masks[best]
    return chosen


def greedy_cover(n: int, k: int, l: int, budget: int = DEFAULT_COVER_BUDGET) -> CoveringDesign:
    """Greedy covering: repeatedly add the k-set covering most uncovered l-sets."""
    _check_params(n, k, l)
    d = CoveringDesign(n, k, l, _greedy_blocks(n, k, l, budget))
    if not verify_cover(d).covering:
        raise AssertionError("greedy cover failed to cover")
    return d


def bose_sts(n: int) -> CoveringDesign:
    """Steiner triple system of order n = 3 (mod 6).

    Points (x, i) with x in Z_t, t = n/3, i in Z_3, labelled x + i*t + 1.
    Uses the idempotent commutative quasigroup x.y = (x+y)(t+1)/2 mod t.
    """
    if n < 3 or n % 6 != 3:
        raise InvalidParameterError(f"Bose construction needs n = 3 (mod 6), got {n}")
    t = n // 3
    half = (t + 1) // 2

    def pt(x, i):
        return x + (i % 3) * t + 1

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(t)]
    for x, y in combinations(range(t), 2):
        z = (x + y) * half % t
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(z, i + 1)))
    d = CoveringDesign(n, 3, 2, blocks)
    verify_cover(d)
    return d


def skolem_sts(n: int) -> CoveringDesign:
    """Steiner triple system of order n = 1 (mod 6), n >= 7.

    Points (x, i) with x in Z_2m, m = (n-1)/6, i in Z_3, labelled
    x + i*2m + 1, plus the point n. Uses the half-idempotent commutative
    quasigroup on Z_2m: (x+y)/2 for even sums, (x+y-1)/2 + m otherwise.
    """
    if n < 7 or n % 6 != 1:
        raise InvalidParameterError(f"Skolem construction needs n = 1 (mod 6), n >= 7, got {n}")
    m = (n - 1) // 6
    order = 2 * m
    inf = n

    def pt(x, i):
        return x + (i % 3) * order + 1

    def op(x, y):
        s = (x + y) % order
        return s // 2 if s % 2 == 0 else (s - 1) // 2 + m

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)]
    for x in range(m):
        for i in range(3):
            blocks.append((inf, pt(x + m, i), pt(x, i + 1)))
    for x, y in combinations(range(order), 2):
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
    d = CoveringDesign(n, 3, 2, blocks)
    verify_cover(d)
    return d


def steiner_triple_system(n: int) -> CoveringDesign:
    if n % 6 == 3:
        return bose_sts(n)
    if n % 6 == 1:
        return skolem_sts(n)
    raise InvalidParameterError(f"no Steiner triple system of order {n}; need n = 1,3 (mod 6)")


def relabel(blocks, ground) -> list[tuple]:
    """Map blocks over [len(ground)] onto the sorted ``ground`` labels."""
    ground = sorted(ground)
    return [tuple(ground[x - 1] for x in b) for b in blocks]
