"""Counts of k-nearly independent vertex subsets.

``sigma_k(G)`` is the number of vertex subsets inducing exactly ``k`` edges;
``sigma_0`` is the Merrifield-Simmons index.  Counts are Python integers and
never overflow.
"""
from __future__ import annotations

import sys
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

import numpy as np

from .graph import Graph, complement, iter_bits

ORACLE_MAX_ORDER = 28
_CHUNK_BITS = 20

# pivot(adj, mask) -> vertex in mask with at least one neighbour in mask
PivotRule = Callable[[tuple, int], int]


def max_degree_pivot(adj, mask: int) -> int:
    """Vertex of largest degree inside ``mask``; ties go to the smallest index."""
    best = -1
    bd = -1
    for v in iter_bits(mask):
        d = (adj[v] & mask).bit_count()
        if d > bd:
            best, bd = v, d
    return best


class _Counter:
    """Memoised sigma_0 / sigma_1 over induced subgraphs of one root graph."""

    def __init__(self, g: Graph, pivot: PivotRule = max_degree_pivot):
        self.adj = g.adj
        self.pivot = pivot
        self.memo0: dict[int, int] = {}
        self.memo1: dict[int, int] = {}

    def _edgeless(self, mask: int) -> bool:
        adj = self.adj
        return all(not adj[v] & mask for v in iter_bits(mask))

    def sigma0(self, mask: int) -> int:
        if mask == 0:
            return 1
        hit = self.memo0.get(mask)
        if hit is not None:
            return hit
        if self._edgeless(mask):
            val = 1 << mask.bit_count()
        else:
            v = max_degree_pivot(self.adj, mask)
            val = self.sigma0(mask & ~(1 << v)) + self.sigma0(mask & ~(self.adj[v] | 1 << v))
        self.memo0[mask] = val
        return val

    def sigma1(self, mask: int) -> int:
        if mask == 0:
            return 0
        hit = self.memo1.get(mask)
        if hit is not None:
            return hit
        if self._edgeless(mask):
            val = 0
        else:
            adj = self.adj
            v = self.pivot(adj, mask)
            nv = adj[v] | 1 << v
            val = self.sigma1(mask & ~(1 << v)) + self.sigma1(mask & ~nv)
            for u in iter_bits(adj[v] & mask):
                val += self.sigma0(mask & ~(nv | adj[u] | 1 << u))
        self.memo1[mask] = val
        return val


def _deep(fn, *args):
    # recursion depth grows with order; 64 vertices need a few hundred frames
    limit = sys.getrecursionlimit()
    if limit < 2000:
        sys.setrecursionlimit(2000)
    return fn(*args)


def sigma0(g: Graph) -> int:
    """Number of independent vertex subsets, the empty set included."""
    return _deep(_Counter(g).sigma0, g.vertex_mask)


def sigma1_recursive(g: Graph, pivot: PivotRule = max_degree_pivot) -> int:
    """Number of vertex subsets inducing exactly one edge.

    Branches on a pivot vertex ``v``: subsets avoiding ``v``, subsets containing
    ``v`` as an isolated vertex (so avoiding ``N(v)``), and for each neighbour
    ``u`` the subsets whose single edge is ``uv``, which are ``{u, v}`` plus an
    independent set of ``G - (N[u] | N[v])``.
    """
    return _deep(_Counter(g, pivot).sigma1, g.vertex_mask)


def sigma_k_counts(g: Graph) -> list[int]:
    """``[sigma_0, sigma_1, ...]`` by enumerating all 2^n subsets.

    The list runs up to the edge count of ``g``; entries sum to 2^n.
    """
    n = g.order
    if n > ORACLE_MAX_ORDER:
        raise ValueError(f"subset enumeration refused above order {ORACLE_MAX_ORDER} (got {n})")
    m = g.size
    counts = np.zeros(m + 1, dtype=np.int64)
    adj = np.array(g.adj, dtype=np.int64)
    total = 1 << n
    step = 1 << min(n, _CHUNK_BITS)
    for start in range(0, total, step):
        subsets = np.arange(start, start + step, dtype=np.int64)
        twice = np.zeros(step, dtype=np.int64)
        for v in range(n):
            inside = (subsets >> v) & 1
            twice += inside * np.bitwise_count(subsets & adj[v])
        counts += np.bincount(twice // 2, minlength=m + 1)
    return [int(c) for c in counts]


def sigma_k_oracle(g: Graph, k: int) -> int:
    """Number of vertex subsets inducing exactly ``k`` edges, by enumeration."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    counts = sigma_k_counts(g)
    return counts[k] if k < len(counts) else 0


def is_good(g: Graph) -> bool:
    """True iff every edge ``uv`` has ``N[u] | N[v]`` equal to the whole vertex set."""
    full = g.vertex_mask
    adj = g.adj
    for u, v in g.edges():
        if (adj[u] | adj[v] | 1 << u | 1 << v) != full:
            return False
    return True


def sigma1_if_good(g: Graph) -> int | None:
    """Edge count when ``g`` is good (then it equals sigma_1), otherwise None."""
    return g.size if is_good(g) else None


def ng_sum(g: Graph) -> int:
    """sigma_1(G) + sigma_1(complement of G)."""
    return sigma1_recursive(g) + sigma1_recursive(complement(g))


@dataclass
class InvariantReport:
    order: int
    size: int
    sigma0: int
    sigma1: int
    ng_sum: int
    is_good: bool
    sigma_k_extra: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sigma_k_extra"] = {str(k): v for k, v in sorted(self.sigma_k_extra.items())}
        return d


def report(g: Graph, extra_k: Iterable[int] = ()) -> InvariantReport:
    extra_k = sorted(set(extra_k))
    extra = {}
    if extra_k:
        counts = sigma_k_counts(g)
        extra = {k: (counts[k] if k < len(counts) else 0) for k in extra_k}
    s1 = sigma1_recursive(g)
    return InvariantReport(
        order=g.order,
        size=g.size,
        sigma0=sigma0(g),
        sigma1=s1,
        ng_sum=s1 + sigma1_recursive(complement(g)),
        is_good=is_good(g),
        sigma_k_extra=extra,
    )
