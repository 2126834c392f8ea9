"""Compiled inner loops for ingestion and graph construction.

Everything here is sequential on purpose so results never depend on the
thread count.
"""

import numpy as np
from numba import njit

OK = 0
BAD_TOKEN_COUNT = 1
NOT_AN_INTEGER = 2
OVERFLOW = 3

_MAX_ID = 1 << 62


@njit(cache=True)
def parse_pairs(buf):
    """Scan a byte buffer of ``src dst`` lines.

    Returns (src, dst, n_pairs, status, bad_line, bad_ntokens).
    """
    size = buf.shape[0]
    n_lines = 1
    for i in range(size):
        if buf[i] == 10:
            n_lines += 1
    src = np.empty(n_lines, np.int64)
    dst = np.empty(n_lines, np.int64)
    n_pairs = 0

    pos = 0
    if size >= 3 and buf[0] == 0xEF and buf[1] == 0xBB and buf[2] == 0xBF:
        pos = 3
    line = 0
    while pos < size:
        line += 1
        end = pos
        while end < size and buf[end] != 10:
            end += 1
        stop = end
        if stop > pos and buf[stop - 1] == 13:
            stop -= 1

        i = pos
        while i < stop and (buf[i] == 32 or buf[i] == 9):
            i += 1
        if i == stop or buf[i] == 35:
            pos = end + 1
            continue

        ntok = 0
        a = 0
        b = 0
        while i < stop:
            while i < stop and (buf[i] == 32 or buf[i] == 9):
                i += 1
            if i == stop:
                break
            val = 0
            while i < stop and buf[i] != 32 and buf[i] != 9:
                c = buf[i]
                if c < 48 or c > 57:
                    return src, dst, 0, NOT_AN_INTEGER, line, 0
                val = val * 10 + (c - 48)
                if val > _MAX_ID:
                    return src, dst, 0, OVERFLOW, line, 0
                i += 1
            if ntok == 0:
                a = val
            elif ntok == 1:
                b = val
            ntok += 1
        if ntok != 2:
            return src, dst, 0, BAD_TOKEN_COUNT, line, ntok
        src[n_pairs] = a
        dst[n_pairs] = b
        n_pairs += 1
        pos = end + 1
    return src, dst, n_pairs, OK, 0, 0


@njit(cache=True)
def csr_from_sorted_pairs(n, lo, hi, w):
    """Symmetric CSR from unique pairs with lo < hi, sorted lexicographically.

    Filling rows in pair order yields ascending neighbor lists without an
    explicit sort: row u first receives every w < u, then every v > u.
    """
    counts = np.zeros(n + 1, np.int64)
    for e in range(lo.shape[0]):
        counts[lo[e] + 1] += 1
        counts[hi[e] + 1] += 1
    for i in range(n):
        counts[i + 1] += counts[i]
    indptr = counts.copy()
    fill = counts[:n].copy()
    indices = np.empty(2 * lo.shape[0], np.int64)
    weights = np.empty(2 * lo.shape[0], np.float64)
    for e in range(lo.shape[0]):
        u = lo[e]
        v = hi[e]
        indices[fill[u]] = v
        weights[fill[u]] = w[e]
        fill[u] += 1
        indices[fill[v]] = u
        weights[fill[v]] = w[e]
        fill[v] += 1
    return indptr, indices, weights


@njit(cache=True)
def induced_subgraph(indptr, indices, weights, keep_new_id):
    """Restrict a CSR graph to nodes with keep_new_id >= 0, renumbered."""
    n = indptr.shape[0] - 1
    n_new = 0
    for u in range(n):
        if keep_new_id[u] >= 0:
            n_new += 1
    new_indptr = np.zeros(n_new + 1, np.int64)
    for u in range(n):
        nu = keep_new_id[u]
        if nu < 0:
            continue
        c = 0
        for j in range(indptr[u], indptr[u + 1]):
            if keep_new_id[indices[j]] >= 0:
                c += 1
        new_indptr[nu + 1] = c
    for i in range(n_new):
        new_indptr[i + 1] += new_indptr[i]
    new_indices = np.empty(new_indptr[n_new], np.int64)
    new_weights = np.empty(new_indptr[n_new], np.float64)
    for u in range(n):
        nu = keep_new_id[u]
        if nu < 0:
            continue
        p = new_indptr[nu]
        for j in range(indptr[u], indptr[u + 1]):
            nv = keep_new_id[indices[j]]
            if nv >= 0:
                new_indices[p] = nv
                new_weights[p] = weights[j]
                p += 1
    return new_indptr, new_indices, new_weights


@njit(cache=True)
def component_labels(indptr, indices):
    """Connected component id per node; components numbered by smallest member."""
    n = indptr.shape[0] - 1
    label = np.full(n, -1, np.int64)
    stack = np.empty(n, np.int64)
    n_comp = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = n_comp
        top = 0
        stack[0] = s
        top = 1
        while top > 0:
            top -= 1
            u = stack[top]
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if label[v] < 0:
                    label[v] = n_comp
                    stack[top] = v
                    top += 1
        n_comp += 1
    return label, n_comp


@njit(cache=True)
def bfs_layers(indptr, indices, root, max_depth):
    """Hop distance from root (-1 when unreached or beyond max_depth)."""
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    dist[root] = 0
    queue[0] = root
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        if dist[u] == max_depth:
            continue
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue[tail] = v
                tail += 1
    return dist
