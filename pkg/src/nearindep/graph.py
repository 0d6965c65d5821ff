"""Simple graphs stored as one adjacency bit-row per vertex.

Vertex ``v`` of a graph of order ``n`` is bit ``v`` of an integer mask; row
``v`` of :attr:`Graph.adj` is the open neighbourhood of ``v``.  Graphs are
immutable and hashable, so they can be used as dict keys and shared freely
between threads.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels

MAX_ORDER = 64
GRAPH6_MAX_ORDER = 62
CANON_MAX_ORDER = 16


class GraphError(ValueError):
    """Invalid graph construction or operation."""


class CapacityError(GraphError):
    """Result would exceed :data:`MAX_ORDER` vertices."""


class Graph6Error(GraphError):
    """Malformed graph6 input.  ``offset`` is the offending byte index."""

    def __init__(self, message: str, offset: int, line: int | None = None):
        where = f"byte offset {offset}" if line is None else f"line {line}, byte offset {offset}"
        super().__init__(f"{message} ({where})")
        self.detail = message
        self.offset = offset
        self.line = line


class UnsupportedOrderError(GraphError):
    """Operation is not available at this order."""


def popcount(x: int) -> int:
    return x.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    __slots__ = ("order", "adj", "_hash")

    def __init__(self, order: int, adj: Sequence[int] | None = None, *, check: bool = True):
        if not 0 <= order <= MAX_ORDER:
            raise CapacityError(f"order {order} outside 0..{MAX_ORDER}")
        rows = tuple(adj) if adj is not None else (0,) * order
        if check:
            if len(rows) != order:
                raise GraphError(f"expected {order} rows, got {len(rows)}")
            full = (1 << order) - 1
            for v, row in enumerate(rows):
                if row & ~full:
                    raise GraphError(f"row {v} has bits beyond order {order}")
                if row >> v & 1:
                    raise GraphError(f"loop at vertex {v}")
                for u in iter_bits(row):
                    if not rows[u] >> v & 1:
                        raise GraphError(f"asymmetric edge {v}-{u}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "adj", rows)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * order
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise GraphError(f"edge {u}-{v} outside order {order}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, rows, check=False)

    # -- basic queries -----------------------------------------------------

    @property
    def vertex_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def size(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, row in enumerate(self.adj):
            for u in iter_bits(row >> (v + 1)):
                yield v, v + 1 + u

    def is_connected(self) -> bool:
        if self.order == 0:
            return True
        seen = frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == self.vertex_mask

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.order == other.order and self.adj == other.adj

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.order, self.adj))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        if self.order <= GRAPH6_MAX_ORDER:
            return f"Graph({to_graph6(self).decode()!r})"
        return f"Graph(order={self.order}, size={self.size})"


class VertexSet:
    """A subset of the vertices of a host graph, as a bit mask."""

    __slots__ = ("mask", "host_order")

    def __init__(self, mask: int, host_order: int):
        if mask < 0 or mask >> host_order:
            raise GraphError(f"mask {mask:#x} has bits beyond host order {host_order}")
        self.mask = mask
        self.host_order = host_order

    @classmethod
    def of(cls, vertices: Iterable[int], host_order: int) -> "VertexSet":
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return cls(mask, host_order)

    def __iter__(self):
        return iter_bits(self.mask)

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)

    def __eq__(self, other):
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.mask == other.mask and self.host_order == other.host_order

    def __hash__(self):
        return hash((self.mask, self.host_order))

    def __repr__(self):
        return f"VertexSet({sorted(self)}, host_order={self.host_order})"


# -- constructors -------------------------------------------------------------


def null_graph() -> Graph:
    return Graph(0, ())


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n, check=False)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)), check=False)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """K_{1,n-1} with centre 0."""
    return Graph.from_edges(n, ((0, i) for i in range(1, n)))


# -- algebra ------------------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.order, tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.adj)), check=False)


def union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; vertices of ``g2`` are shifted up by ``g1.order``."""
    n1 = g1.order
    if n1 + g2.order > MAX_ORDER:
        raise CapacityError(f"union order {n1 + g2.order} exceeds {MAX_ORDER}")
    rows = g1.adj + tuple(row << n1 for row in g2.adj)
    return Graph(n1 + g2.order, rows, check=False)


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two vertex groups."""
    n1, n2 = g1.order, g2.order
    if n1 + n2 > MAX_ORDER:
        raise CapacityError(f"join order {n1 + n2} exceeds {MAX_ORDER}")
    low = (1 << n1) - 1
    high = ((1 << n2) - 1) << n1
    rows = tuple(row | high for row in g1.adj) + tuple((row << n1) | low for row in g2.adj)
    return Graph(n1 + n2, rows, check=False)


def disjoint_copies(g: Graph, m: int) -> Graph:
    out = null_graph()
    for _ in range(m):
        out = union(out, g)
    return out


def _compact(row: int, keep: Sequence[int]) -> int:
    out = 0
    for i, v in enumerate(keep):
        if row >> v & 1:
            out |= 1 << i
    return out


def induced_subgraph(g: Graph, mask: int) -> Graph:
    """Subgraph induced by the vertices in ``mask``, relabelled 0..k-1 in index order."""
    keep = list(iter_bits(mask & g.vertex_mask))
    rows = tuple(_compact(g.adj[v] & mask, keep) for v in keep)
    return Graph(len(keep), rows, check=False)


def delete_vertices(g: Graph, s: VertexSet | int) -> Graph:
    mask = s.mask if isinstance(s, VertexSet) else s
    if mask >> g.order:
        raise GraphError("vertex set does not belong to this graph")
    return induced_subgraph(g, g.vertex_mask & ~mask)


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    if not 0 <= v < g.order:
        raise IndexError(f"vertex {v} out of range for order {g.order}")
    return VertexSet(g.adj[v] | 1 << v, g.order)


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex ``i`` is vertex ``order[i]`` of ``g``."""
    pos = [0] * g.order
    for i, v in enumerate(order):
        pos[v] = i
    rows = [0] * g.order
    for i, v in enumerate(order):
        r = 0
        for u in iter_bits(g.adj[v]):
            r |= 1 << pos[u]
        rows[i] = r
    return Graph(g.order, rows, check=False)


# -- graph6 -------------------------------------------------------------------

_HEADER = b">>graph6<<"


def _upper_bits(g: Graph) -> Iterator[int]:
    # column-major upper triangle: x(0,1), x(0,2), x(1,2), x(0,3), ...
    adj = g.adj
    for j in range(1, g.order):
        row = adj[j]
        for i in range(j):
            yield row >> i & 1


def to_graph6(g: Graph) -> bytes:
    n = g.order
    if n > GRAPH6_MAX_ORDER:
        raise UnsupportedOrderError(f"graph6 output supports orders <= {GRAPH6_MAX_ORDER}")
    out = bytearray([n + 63])
    acc = nbits = 0
    for b in _upper_bits(g):
        acc = acc << 1 | b
        nbits += 1
        if nbits == 6:
            out.append(acc + 63)
            acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    start = 0
    if data.startswith(_HEADER):
        start = len(_HEADER)
    if len(data) <= start:
        raise Graph6Error("missing order byte", start)
    for i in range(start, len(data)):
        if not 63 <= data[i] <= 126:
            raise Graph6Error(f"character {data[i]!r} outside 63..126", i)
    n = data[start] - 63
    if n > GRAPH6_MAX_ORDER:
        raise Graph6Error(f"multi-byte order prefix unsupported (orders <= {GRAPH6_MAX_ORDER})", start)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[start + 1:]
    if len(body) != nbytes:
        raise Graph6Error(f"expected {nbytes} data bytes for order {n}, got {len(body)}",
                          start + 1 + min(len(body), nbytes))
    rows = [0] * n
    k = 0
    bits = _bit_stream(body)
    for j in range(1, n):
        for i in range(j):
            if next(bits):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbits % 6:
        pad = (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6Error("nonzero padding bits", start + len(body))
    return Graph(n, rows, check=False)


def _bit_stream(body: bytes) -> Iterator[int]:
    for c in body:
        v = c - 63
        for s in range(5, -1, -1):
            yield v >> s & 1


def read_graph6_lines(lines: Iterable[bytes | str]) -> Iterator[tuple[int, Graph]]:
    """Parse a newline-delimited graph6 stream, yielding ``(line_number, graph)``.

    Blank lines are skipped.  Parse errors are re-raised with the line number
    prefixed to the message.
    """
    for lineno, line in enumerate(lines, 1):
        if isinstance(line, str):
            line = line.encode("ascii", errors="replace")
        if not line.strip():
            continue
        try:
            yield lineno, from_graph6(line)
        except Graph6Error as exc:
            raise Graph6Error(exc.detail, exc.offset, lineno) from None


# -- canonical form -----------------------------------------------------------


def canonical_order(g: Graph) -> list[int]:
    """Vertex ordering giving the canonical relabelling of ``g``.

    The relabelling has the least graph6 among those listing the colour
    classes of :func:`refine_colors_py` in order.  Computed by the compiled
    kernel; :func:`canonical_order_py` is the readable equivalent.
    """
    n = g.order
    if n > CANON_MAX_ORDER:
        raise UnsupportedOrderError(f"canonical form supports orders <= {CANON_MAX_ORDER}, got {n}")
    if n <= 1:
        return list(range(n))
    return _kernels.canonical_order(np.array(g.adj, dtype=np.int64)).tolist()


def refine_colors_py(g: Graph) -> list[int]:
    """Colour vertices by degree, then split classes by neighbour colour counts.

    Colours are ranks of sorted signatures, so the numbering does not depend
    on the labelling of ``g``.
    """
    n, adj = g.order, g.adj
    color = _ranks([(r.bit_count(),) for r in adj])
    k = len(set(color))
    while True:
        sigs = []
        for v in range(n):
            counts = [0] * k
            for u in iter_bits(adj[v]):
                counts[color[u]] += 1
            sigs.append((color[v], *counts))
        color = _ranks(sigs)
        k2 = len(set(color))
        if k2 == k:
            return color
        k = k2


def _ranks(keys: list) -> list[int]:
    table = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [table[key] for key in keys]


def canonical_order_py(g: Graph) -> list[int]:
    """Pure-Python version of :func:`canonical_order`.

    Vertices are placed one position at a time, colour class by colour class
    (see :func:`refine_colors_py`).  Placing ``w`` at position ``j`` fixes
    column ``j`` of the upper triangle, i.e. the adjacency of ``w`` to the
    vertices placed before it, so the least string is found level by level
    keeping only the prefixes whose columns so far are minimal.  Two unplaced
    vertices with the same neighbourhood apart from each other are
    interchangeable by an automorphism fixing everything placed, so only one
    of them is branched on.
    """
    n = g.order
    if n > CANON_MAX_ORDER:
        raise UnsupportedOrderError(f"canonical form supports orders <= {CANON_MAX_ORDER}, got {n}")
    adj = g.adj
    color = refine_colors_py(g)
    poscolor = sorted(color)
    # state: (placed tuple, unplaced mask, column values of unplaced vertices)
    frontier = [((), (1 << n) - 1, [0] * n)]
    for j in range(n):
        best = None
        nxt = []
        for placed, rest, col in frontier:
            cell = sum(1 << w for w in iter_bits(rest) if color[w] == poscolor[j])
            for w in _twin_reps(adj, cell):
                c = col[w]
                if best is None or c < best:
                    best = c
                    nxt = [(placed, rest, col, w)]
                elif c == best:
                    nxt.append((placed, rest, col, w))
        frontier = []
        for placed, rest, col, w in nxt:
            rest2 = rest ^ (1 << w)
            col2 = col[:]
            row = adj[w]
            for u in iter_bits(rest2):
                col2[u] = col2[u] << 1 | (row >> u & 1)
            frontier.append((placed + (w,), rest2, col2))
    return list(frontier[0][0])


def _twin_reps(adj: Sequence[int], rest: int) -> list[int]:
    reps = []
    for w in iter_bits(rest):
        rw = adj[w]
        for r in reps:
            bit = 1 << w | 1 << r
            if (rw | bit) == (adj[r] | bit):
                break
        else:
            reps.append(w)
    return reps


def canonical_graph(g: Graph) -> Graph:
    return relabel(g, canonical_order(g))


def canonical_form(g: Graph) -> bytes:
    """Canonical graph6 of ``g``: equal for two graphs iff they are isomorphic.

    It is the least graph6 over all relabellings that list the refined colour
    classes in order.
    """
    return to_graph6(canonical_graph(g))


def brute_force_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Isomorphism test by trying every bijection; for tests at small order."""
    from itertools import permutations

    if g1.order != g2.order or g1.size != g2.size:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    n = g1.order
    edges1 = list(g1.edges())
    for perm in permutations(range(n)):
        if all(g2.has_edge(perm[u], perm[v]) for u, v in edges1):
            return True
    return False


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labelled simple graph on ``n`` vertices (2^C(n,2) of them)."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        rows = [0] * n
        for k, (u, v) in enumerate(pairs):
            if code >> k & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        yield Graph(n, rows, check=False)
