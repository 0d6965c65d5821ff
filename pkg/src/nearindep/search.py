"""Isomorph-free generation and exhaustive extremal scans.

Graphs of order ``n`` are produced by canonical augmentation: every class of
order ``n - 1`` (in canonical labelling) is extended by one vertex in every
possible way, and an extension is kept only when the new vertex could have
been the canonical deletion vertex of the result.  Classes are carried as
integer codes of their canonical graph6 bits, which keeps a whole level in one
numpy array.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .families import bound, mk2_plus_isolated
from .graph import (
    Graph,
    UnsupportedOrderError,
    canonical_form,
    complement,
    complete_graph,
    empty_graph,
    star_graph,
)

GEN_MAX_ORDER = 9
TREE_MAX_ORDER = 16
MAX_COUNTEREXAMPLES = 20

OBJECTIVES = ("ng_min", "ng_max", "sigma1_max", "ng_min_tree")
THEOREMS = ("ng-lower", "ng-lower-tree", "ng-max", "sigma1-max")

# exhaustive sigma_1 maxima at small orders, where 27/64 * 2^n is not attained
SMALL_SIGMA1_MAXIMA = {1: 0, 2: 1, 3: 3, 4: 6, 5: 12}


class SearchError(ValueError):
    pass


# -- graph generation ---------------------------------------------------------


def code_to_graph(code: int, n: int) -> Graph:
    return Graph(n, [int(r) for r in _kernels.code_to_adj(code, n)], check=False)


def graph_code(g: Graph) -> int:
    """Integer of the graph6 bits of ``g`` as labelled (first bit most significant)."""
    adj = np.array(g.adj, dtype=np.int64)
    return int(_kernels.adj_to_code(adj, np.arange(g.order, dtype=np.int64)))


def _check_gen_order(n: int) -> None:
    if not 1 <= n <= GEN_MAX_ORDER:
        raise UnsupportedOrderError(
            f"built-in generator covers orders 1..{GEN_MAX_ORDER}; for order {n} "
            "supply a graph6 stream (e.g. from nauty's geng) with --input"
        )


@lru_cache(maxsize=None)
def _level(n: int) -> np.ndarray:
    if n == 1:
        codes = np.zeros(1, dtype=np.int64)
    else:
        codes = _kernels.children_of(_level(n - 1), n - 1)
    codes.setflags(write=False)
    return codes


def graph_codes(n: int) -> np.ndarray:
    """Canonical codes of one representative per isomorphism class of order ``n``."""
    _check_gen_order(n)
    return _level(n)


def gen_graphs(n: int) -> Iterator[Graph]:
    """One graph per isomorphism class on ``n`` vertices, canonically labelled."""
    for code in graph_codes(n):
        yield code_to_graph(int(code), n)


def _rooted_level_sequences(n: int) -> Iterator[list[int]]:
    # canonical level sequences of rooted trees, root at level 0, in
    # decreasing lexicographic order
    seq = list(range(n))
    while True:
        yield seq
        p = n - 1
        while p > 0 and seq[p] <= 1:
            p -= 1
        if p == 0:
            return
        q = p - 1
        while seq[q] != seq[p] - 1:
            q -= 1
        seq = seq[:]
        for i in range(p, n):
            seq[i] = seq[i - (p - q)]


def _centroid_rooted(seq: list[int]) -> bool:
    """Is this rooting the chosen one for its free tree?

    Keeps rootings at a centroid; when there are two centroids the tree is two
    halves joined by an edge, and the rooting whose own half has the larger
    level sequence wins.
    """
    n = len(seq)
    starts = [i for i in range(1, n) if seq[i] == 1] + [n]
    for a, b in zip(starts, starts[1:]):
        size = b - a
        if 2 * size > n:
            return False
        if 2 * size == n:
            rest = seq[:a] + seq[b:]
            half = [x - 1 for x in seq[a:b]]
            return rest >= half
    return True


def _tree_from_levels(seq: list[int]) -> Graph:
    edges = []
    stack: list[int] = []
    for v, lvl in enumerate(seq):
        del stack[lvl:]
        if stack:
            edges.append((stack[-1], v))
        stack.append(v)
    return Graph.from_edges(len(seq), edges)


def gen_trees(n: int) -> Iterator[Graph]:
    """One tree per isomorphism class of free trees on ``n`` vertices."""
    if not 1 <= n <= TREE_MAX_ORDER:
        raise UnsupportedOrderError(f"tree generator covers orders 1..{TREE_MAX_ORDER}, got {n}")
    for seq in _rooted_level_sequences(n):
        if _centroid_rooted(seq):
            yield _tree_from_levels(seq)


# -- extremal scans -------------------------------------------------------------


@dataclass
class ExtremalResult:
    order: int
    objective: str
    value: int
    attainers: list[bytes]
    classes_scanned: int

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "objective": self.objective,
            "value": self.value,
            "attainers": [a.decode() for a in self.attainers],
            "classes_scanned": self.classes_scanned,
        }


@dataclass
class _Partial:
    """Scan result over one slice of the input; merging is associative."""

    best: int | None = None
    attainers: list = field(default_factory=list)
    count: int = 0
    violators: list = field(default_factory=list)

    def merge(self, other: "_Partial", maximize: bool) -> "_Partial":
        if other.best is None:
            best, att = self.best, self.attainers
        elif self.best is None:
            best, att = other.best, other.attainers
        elif self.best == other.best:
            best, att = self.best, self.attainers + other.attainers
        elif (other.best > self.best) == maximize:
            best, att = other.best, other.attainers
        else:
            best, att = self.best, self.attainers
        return _Partial(best, att, self.count + other.count, self.violators + other.violators)


def _violates(values: np.ndarray, limit, maximize: bool) -> np.ndarray:
    if limit is None:
        return np.zeros(values.shape[0], dtype=bool)
    # limit may be a Fraction; compare exactly after scaling by its denominator
    num, den = Fraction(limit).numerator, Fraction(limit).denominator
    scaled = values * den
    return scaled > num if maximize else scaled < num


def _scan_rows(rows: np.ndarray, with_complement: bool, maximize: bool, limit) -> _Partial:
    if rows.shape[0] == 0:
        return _Partial()
    values = _kernels.sigma1_rows(rows, with_complement)
    best = int(values.max() if maximize else values.min())
    hit = np.flatnonzero(values == best)
    bad = np.flatnonzero(_violates(values, limit, maximize))
    return _Partial(best, [rows[i] for i in hit], rows.shape[0], [rows[i] for i in bad])


def _scan_parents(parents: np.ndarray, n: int, with_complement: bool, maximize: bool, limit) -> _Partial:
    codes = _kernels.children_of(parents, n - 1)
    if codes.shape[0] == 0:
        return _Partial()
    values = _kernels.sigma1_codes(codes, n, with_complement)
    best = int(values.max() if maximize else values.min())
    hit = codes[values == best]
    bad = codes[_violates(values, limit, maximize)]
    return _Partial(best, [int(c) for c in hit], codes.shape[0], [int(c) for c in bad])


def _chunks(arr: np.ndarray, parts: int) -> list[np.ndarray]:
    parts = max(1, min(parts, arr.shape[0]))
    return np.array_split(arr, parts)


def _objective_sense(objective: str) -> tuple[bool, bool]:
    """(include complement, maximize) for an objective."""
    if objective == "ng_max":
        return True, True
    if objective in ("ng_min", "ng_min_tree"):
        return True, False
    if objective == "sigma1_max":
        return False, True
    raise SearchError(f"unknown objective {objective!r}; choose from {', '.join(OBJECTIVES)}")


def _rows_of(graphs: Iterable[Graph], n: int) -> np.ndarray:
    rows = [g.adj for g in graphs]
    for r in rows:
        if len(r) != n:
            raise SearchError(f"stream graph of order {len(r)} in a scan of order {n}")
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def _canon_sorted(graphs: Iterable[Graph]) -> list[bytes]:
    return sorted({canonical_form(g) for g in graphs})


def _run_scan(n: int, objective: str, graph_class: str, source, threads: int, limit) -> tuple[_Partial, list[bytes], list[bytes]]:
    with_comp, maximize = _objective_sense(objective)
    if objective == "ng_min_tree" and graph_class != "trees":
        raise SearchError("objective ng_min_tree applies to the trees class only")
    if graph_class not in ("all", "trees"):
        raise SearchError(f"unknown class {graph_class!r}; choose all or trees")
    threads = max(1, int(threads))

    if source is not None:
        rows = _rows_of(source, n)
        part = _scan_rows(rows, with_comp, maximize, limit)
        to_graph = lambda r: Graph(n, [int(x) for x in r], check=False)
    elif graph_class == "trees":
        rows = _rows_of(gen_trees(n), n)
        pieces = _chunks(rows, threads)
        part = _merge_all(pieces, lambda c: _scan_rows(c, with_comp, maximize, limit), threads, maximize)
        to_graph = lambda r: Graph(n, [int(x) for x in r], check=False)
    else:
        _check_gen_order(n)
        if n == 1:
            part = _scan_rows(np.zeros((1, 1), dtype=np.int64), with_comp, maximize, limit)
            to_graph = lambda r: Graph(n, [int(x) for x in r], check=False)
        else:
            # split the generation tree at the parents one level up
            pieces = _chunks(_level(n - 1), threads * 4)
            part = _merge_all(
                pieces, lambda c: _scan_parents(c, n, with_comp, maximize, limit), threads, maximize
            )
            to_graph = lambda c: code_to_graph(c, n)

    if part.best is None:
        raise SearchError("empty graph stream")
    attainers = _canon_sorted(to_graph(x) for x in part.attainers)
    violators = _canon_sorted(to_graph(x) for x in part.violators)[:MAX_COUNTEREXAMPLES]
    return part, attainers, violators


def _merge_all(pieces, fn, threads: int, maximize: bool) -> _Partial:
    if threads == 1:
        results = [fn(p) for p in pieces]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(fn, pieces))
    total = _Partial()
    for r in results:
        total = total.merge(r, maximize)
    return total


def extremal_scan(
    n: int,
    objective: str,
    graph_class: str = "all",
    source: Iterable[Graph] | None = None,
    threads: int = 1,
) -> ExtremalResult:
    """Exact optimum of ``objective`` over all classes of order ``n``.

    ``source`` replaces the built-in generator with any iterable of graphs of
    order ``n`` (for instance a parsed graph6 stream).
    """
    if objective == "ng_min" and graph_class == "trees":
        objective = "ng_min_tree"
    part, attainers, _ = _run_scan(n, objective, graph_class, source, threads, None)
    return ExtremalResult(n, objective, part.best, attainers, part.count)


# -- theorem verification ---------------------------------------------------------


@dataclass
class OrderCheck:
    order: int
    passed: bool
    value: int
    bound: int | Fraction
    expected_value: int | Fraction
    attainers: list[bytes]
    expected_attainers: list[bytes] | None
    counterexamples: list[bytes]
    classes_scanned: int

    def to_dict(self) -> dict:
        num = lambda x: x if isinstance(x, int) else str(x)
        return {
            "order": self.order,
            "passed": self.passed,
            "value": self.value,
            "bound": num(self.bound),
            "expected_value": num(self.expected_value),
            "attainers": [a.decode() for a in self.attainers],
            "expected_attainers": None if self.expected_attainers is None
            else [a.decode() for a in self.expected_attainers],
            "counterexamples": [a.decode() for a in self.counterexamples],
            "classes_scanned": self.classes_scanned,
        }


@dataclass
class VerificationReport:
    theorem: str
    orders: list[int]
    checks: list[OrderCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "orders": self.orders,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _closed_under_complement(graphs: Iterable[Graph]) -> list[bytes]:
    out = set()
    for g in graphs:
        out.add(canonical_form(g))
        out.add(canonical_form(complement(g)))
    return sorted(out)


def _theorem_setup(theorem: str, n: int):
    """(objective, class, bound, expected value, expected attainers) for one order."""
    if theorem == "ng-lower":
        b = bound("ng_lower_general", n).value
        return "ng_min", "all", b, b, _closed_under_complement([complete_graph(n), empty_graph(n)])
    if theorem == "ng-lower-tree":
        if n < 2:
            raise SearchError("ng-lower-tree needs order >= 2")
        b = bound("ng_lower_tree", n).value
        return "ng_min_tree", "trees", b, b, [canonical_form(star_graph(n))]
    if theorem == "ng-max":
        if n < 6:
            raise SearchError("ng-max is stated for orders >= 6")
        b = bound("ng_upper_general", n).value
        return "ng_max", "all", b, b, _closed_under_complement([mk2_plus_isolated(3, n)])
    if theorem == "sigma1-max":
        b = bound("sigma1_max", n).value
        if n < 6:
            return "sigma1_max", "all", b, SMALL_SIGMA1_MAXIMA[n], None
        expected = [mk2_plus_isolated(3, n)]
        if n >= 8:
            expected.append(mk2_plus_isolated(4, n))
        return "sigma1_max", "all", b, b, _canon_sorted(expected)
    raise SearchError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")


def verify_theorem(theorem: str, orders: Iterable[int], threads: int = 1) -> VerificationReport:
    """Check a bound and its equality cases over every class at each order."""
    orders = list(orders)
    checks = []
    for n in orders:
        objective, cls, limit, expected_value, expected = _theorem_setup(theorem, n)
        part, attainers, violators = _run_scan(n, objective, cls, None, threads, limit)
        ok = not violators and part.best == expected_value
        if expected is not None:
            ok = ok and attainers == expected
        checks.append(OrderCheck(n, ok, part.best, limit, expected_value, attainers,
                                 expected, violators, part.count))
    return VerificationReport(theorem, orders, checks)
