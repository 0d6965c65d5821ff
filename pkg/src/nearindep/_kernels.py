"""Compiled inner loops.  Adjacency rows are passed as int64 arrays."""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _is_twin(adj, a, b):
    bit = (1 << a) | (1 << b)
    return (adj[a] | bit) == (adj[b] | bit)


@njit(cache=True, nogil=True)
def refine_colors(adj):
    """Isomorphism-invariant colouring: degree, refined by neighbour colour counts.

    Colours are ranks of sorted signatures, so they are numbered 0..k-1 in an
    order that does not depend on the labelling.
    """
    n = adj.shape[0]
    color = np.empty(n, np.int64)
    for v in range(n):
        color[v] = popcount(adj[v])
    k = _rank(color, np.zeros((n, 0), np.int64))
    while True:
        sig = np.zeros((n, k), np.int64)
        for v in range(n):
            r = adj[v]
            for u in range(n):
                if (r >> u) & 1:
                    sig[v, color[u]] += 1
        k2 = _rank(color, sig)
        if k2 == k:
            return color, k
        k = k2


@njit(cache=True, nogil=True)
def _rank(color, sig):
    # replace color[v] by the rank of (color[v], sig[v]) among distinct values
    n = color.shape[0]
    m = sig.shape[1]
    order = np.arange(n)
    # insertion sort on (color, sig) keeps this allocation-free for small n
    for i in range(1, n):
        j = i
        while j > 0 and _less(color, sig, order[j], order[j - 1], m):
            t = order[j]
            order[j] = order[j - 1]
            order[j - 1] = t
            j -= 1
    new = np.empty(n, np.int64)
    rank = 0
    for i in range(n):
        if i > 0 and _less(color, sig, order[i - 1], order[i], m):
            rank += 1
        new[order[i]] = rank
    color[:] = new
    return rank + 1 if n > 0 else 0


@njit(cache=True, nogil=True)
def _less(color, sig, a, b, m):
    if color[a] != color[b]:
        return color[a] < color[b]
    for c in range(m):
        if sig[a, c] != sig[b, c]:
            return sig[a, c] < sig[b, c]
    return False


@njit(cache=True, nogil=True)
def canonical_order(adj):
    n = adj.shape[0]
    color, k = refine_colors(adj)
    # colour of each position: classes are laid out in colour order
    poscolor = np.empty(n, np.int64)
    counts = np.zeros(k, np.int64)
    for v in range(n):
        counts[color[v]] += 1
    j = 0
    for c in range(k):
        for _ in range(counts[c]):
            poscolor[j] = c
            j += 1

    placed = np.zeros((1, n), np.int64)
    rest = np.empty(1, np.int64)
    rest[0] = (1 << n) - 1
    col = np.zeros((1, n), np.int64)
    f = 1
    reps = np.empty(n, np.int64)
    cand_state = np.empty(n, np.int64)
    cand_w = np.empty(n, np.int64)
    for j in range(n):
        if cand_state.shape[0] < f * n:
            cand_state = np.empty(f * n, np.int64)
            cand_w = np.empty(f * n, np.int64)
        want = poscolor[j]
        best = 1 << 62
        nc = 0
        for s in range(f):
            r = rest[s]
            nr = 0
            for w in range(n):
                if not (r >> w) & 1 or color[w] != want:
                    continue
                dup = False
                for q in range(nr):
                    if _is_twin(adj, w, reps[q]):
                        dup = True
                        break
                if dup:
                    continue
                reps[nr] = w
                nr += 1
                c = col[s, w]
                if c < best:
                    best = c
                    nc = 0
                if c == best:
                    cand_state[nc] = s
                    cand_w[nc] = w
                    nc += 1
        nplaced = np.empty((nc, n), np.int64)
        nrest = np.empty(nc, np.int64)
        ncol = np.empty((nc, n), np.int64)
        for i in range(nc):
            s = cand_state[i]
            w = cand_w[i]
            for q in range(j):
                nplaced[i, q] = placed[s, q]
            nplaced[i, j] = w
            r2 = rest[s] ^ (1 << w)
            nrest[i] = r2
            row = adj[w]
            for u in range(n):
                if (r2 >> u) & 1:
                    ncol[i, u] = (col[s, u] << 1) | ((row >> u) & 1)
                else:
                    ncol[i, u] = 0
        placed, rest, col = nplaced, nrest, ncol
        f = nc
    out = np.empty(n, np.int64)
    for q in range(n):
        out[q] = placed[0, q]
    return out


@njit(cache=True, nogil=True)
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True, nogil=True)
def adj_to_code(adj, order):
    """Upper-triangle bits in graph6 order, first bit most significant."""
    n = adj.shape[0]
    code = 0
    for j in range(1, n):
        vj = order[j]
        for i in range(j):
            code = (code << 1) | ((adj[order[i]] >> vj) & 1)
    return code


@njit(cache=True, nogil=True)
def code_to_adj(code, n):
    adj = np.zeros(n, np.int64)
    k = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if (code >> k) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return adj


@njit(cache=True, nogil=True)
def canonical_code(adj):
    n = adj.shape[0]
    if n <= 1:
        return 0
    return adj_to_code(adj, canonical_order(adj))


@njit(cache=True, nogil=True)
def _delete_vertex(adj, v):
    n = adj.shape[0]
    out = np.empty(n - 1, np.int64)
    low = (1 << v) - 1
    k = 0
    for u in range(n):
        if u == v:
            continue
        r = adj[u]
        out[k] = (r & low) | ((r >> (v + 1)) << v)
        k += 1
    return out


@njit(cache=True, nogil=True)
def _sorted_degrees(adj):
    n = adj.shape[0]
    d = np.empty(n, np.int64)
    for u in range(n):
        d[u] = popcount(adj[u])
    d.sort()
    return d


@njit(cache=True, nogil=True)
def children(parent):
    """Canonical codes of the isomorph-free one-vertex extensions of ``parent``.

    ``parent`` must be the canonical labelling of its class.  The new vertex
    ``m`` gets neighbourhood ``S`` for every subset ``S``; the extension is
    kept iff deleting ``m`` is isomorphic to deleting the canonical deletion
    vertex ``c`` (the first maximum-degree vertex in canonical order).
    Extensions of the same parent are deduplicated by code.  Returns codes in
    order of first acceptance.
    """
    m = parent.shape[0]
    n = m + 1
    pdeg = np.empty(m, np.int64)
    dmax = 0
    for u in range(m):
        pdeg[u] = popcount(parent[u])
        if pdeg[u] > dmax:
            dmax = pdeg[u]
    top = 0
    for u in range(m):
        if pdeg[u] == dmax:
            top |= 1 << u
    pcode = canonical_code(parent) if m > 1 else 0
    psorted = np.sort(pdeg)
    out = np.empty(1 << m, np.int64)
    nout = 0
    child = np.empty(n, np.int64)
    inv = np.empty(n, np.int64)
    newbit = 1 << m
    for s in range(1 << m):
        k = popcount(s)
        need = dmax + 1 if s & top else dmax
        if m == 0:
            need = 0
        if k < need:
            continue
        for u in range(m):
            child[u] = parent[u] | (newbit if (s >> u) & 1 else 0)
        child[m] = s
        # vertex invariant: degree, then degree sum over the neighbourhood
        best = 0
        for u in range(n):
            t = 0
            r = child[u]
            while r:
                low = r & -r
                r ^= low
                t += popcount(child[_lowbit_index(low)])
            inv[u] = popcount(child[u]) * 4096 + t
            if inv[u] > best:
                best = inv[u]
        if inv[m] != best:
            continue
        order = canonical_order(child)
        c = -1
        for i in range(n):
            if inv[order[i]] == best:
                c = order[i]
                break
        if c != m:
            sub = _delete_vertex(child, c)
            sd = _sorted_degrees(sub)
            same = True
            for i in range(m):
                if sd[i] != psorted[i]:
                    same = False
                    break
            if not same:
                continue
            if canonical_code(sub) != pcode:
                continue
        code = adj_to_code(child, order)
        dup = False
        for i in range(nout):
            if out[i] == code:
                dup = True
                break
        if not dup:
            out[nout] = code
            nout += 1
    return out[:nout]


@njit(cache=True, nogil=True)
def _lowbit_index(low):
    v = 0
    while (low >> v) != 1:
        v += 1
    return v


@njit(cache=True, nogil=True)
def sigma0_mask(adj, mask):
    if mask == 0:
        return 1
    # highest-degree vertex within mask; an edgeless remainder is all-independent
    best = -1
    bd = -1
    r = mask
    while r:
        v = 0
        low = r & -r
        while (low >> v) != 1:
            v += 1
        r ^= low
        d = popcount(adj[v] & mask)
        if d > bd:
            bd = d
            best = v
    if bd == 0:
        return 1 << popcount(mask)
    v = best
    return sigma0_mask(adj, mask & ~(1 << v)) + sigma0_mask(adj, mask & ~(adj[v] | (1 << v)))


@njit(cache=True, nogil=True)
def sigma1_mask(adj, mask):
    if mask == 0:
        return 0
    best = -1
    bd = -1
    r = mask
    while r:
        v = 0
        low = r & -r
        while (low >> v) != 1:
            v += 1
        r ^= low
        d = popcount(adj[v] & mask)
        if d > bd:
            bd = d
            best = v
    if bd == 0:
        return 0
    v = best
    nv = adj[v] | (1 << v)
    total = sigma1_mask(adj, mask & ~(1 << v)) + sigma1_mask(adj, mask & ~nv)
    r = adj[v] & mask
    while r:
        low = r & -r
        u = 0
        while (low >> u) != 1:
            u += 1
        r ^= low
        total += sigma0_mask(adj, mask & ~(nv | adj[u] | (1 << u)))
    return total


@njit(cache=True, nogil=True)
def sigma1_codes(codes, n, with_complement):
    """sigma_1 of each encoded graph (plus that of its complement if asked)."""
    out = np.empty(codes.shape[0], np.int64)
    full = (1 << n) - 1
    for i in range(codes.shape[0]):
        adj = code_to_adj(codes[i], n)
        val = sigma1_mask(adj, full)
        if with_complement:
            for u in range(n):
                adj[u] = full ^ adj[u] ^ (1 << u)
            val += sigma1_mask(adj, full)
        out[i] = val
    return out


@njit(cache=True, nogil=True)
def sigma1_rows(adjs, with_complement):
    """Like :func:`sigma1_codes` for graphs given as rows of an (m, n) array."""
    m, n = adjs.shape
    out = np.empty(m, np.int64)
    full = (1 << n) - 1
    adj = np.empty(n, np.int64)
    for i in range(m):
        for u in range(n):
            adj[u] = adjs[i, u]
        val = sigma1_mask(adj, full)
        if with_complement:
            for u in range(n):
                adj[u] = full ^ adj[u] ^ (1 << u)
            val += sigma1_mask(adj, full)
        out[i] = val
    return out


@njit(cache=True, nogil=True)
def children_of(parents, m):
    """Concatenated :func:`children` of every encoded parent of order ``m``."""
    parts = []
    total = 0
    for i in range(parents.shape[0]):
        part = children(code_to_adj(parents[i], m))
        parts.append(part)
        total += part.shape[0]
    out = np.empty(total, np.int64)
    k = 0
    for part in parts:
        out[k:k + part.shape[0]] = part
        k += part.shape[0]
    return out
