"""Numba kernels for the all-pairs and cycle-counting metrics.

Every kernel works on the CSR arrays from ``Graph.csr()``.  Betweenness is
accumulated in fixed-size source chunks and merged in chunk order, so the
parallel and serial drivers produce bit-identical sums.
"""

import numpy as np
from numba import njit, prange

SOURCE_CHUNK = 256


@njit(cache=True)
def bfs_distance_sums(indptr, indices):
    """Per-source sum of hop distances and number of reached nodes."""
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    sums = np.zeros(n, dtype=np.int64)
    reached = np.zeros(n, dtype=np.int64)
    for s in range(n):
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        total = 0
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v]
            total += dv
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    queue[tail] = w
                    tail += 1
        sums[s] = total
        reached[s] = tail
        for i in range(tail):
            dist[queue[i]] = -1
    return sums, reached


@njit(cache=True)
def _brandes_chunk(indptr, indices, lo, hi, acc, dist_sums, reached):
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n, dtype=np.float64)
    delta = np.zeros(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    for s in range(lo, hi):
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        total = 0
        while head < tail:
            v = order[head]
            head += 1
            dv = dist[v]
            total += dv
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dv + 1:
                    sigma[w] += sigma[v]
        dist_sums[s] = total
        reached[s] = tail
        for i in range(tail - 1, 0, -1):
            w = order[i]
            acc[w] += delta[w]
            dw = dist[w]
            coeff = (1.0 + delta[w]) / sigma[w]
            for j in range(indptr[w], indptr[w + 1]):
                v = indices[j]
                if dist[v] == dw - 1:
                    delta[v] += sigma[v] * coeff
        for i in range(tail):
            v = order[i]
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0


@njit(cache=True)
def brandes_serial(indptr, indices, chunk):
    n = len(indptr) - 1
    n_chunks = (n + chunk - 1) // chunk
    acc = np.zeros((n_chunks, n), dtype=np.float64)
    dist_sums = np.zeros(n, dtype=np.int64)
    reached = np.zeros(n, dtype=np.int64)
    for c in range(n_chunks):
        _brandes_chunk(indptr, indices, c * chunk, min(n, (c + 1) * chunk), acc[c], dist_sums, reached)
    return acc, dist_sums, reached


@njit(cache=True, parallel=True)
def brandes_parallel(indptr, indices, chunk):
    n = len(indptr) - 1
    n_chunks = (n + chunk - 1) // chunk
    acc = np.zeros((n_chunks, n), dtype=np.float64)
    dist_sums = np.zeros(n, dtype=np.int64)
    reached = np.zeros(n, dtype=np.int64)
    for c in prange(n_chunks):
        _brandes_chunk(indptr, indices, c * chunk, min(n, (c + 1) * chunk), acc[c], dist_sums, reached)
    return acc, dist_sums, reached


@njit(cache=True)
def triangle_counts(indptr, indices):
    """Edges among the neighbors of each node."""
    n = len(indptr) - 1
    mark = np.zeros(n, dtype=np.bool_)
    out = np.zeros(n, dtype=np.int64)
    for v in range(n):
        for j in range(indptr[v], indptr[v + 1]):
            mark[indices[j]] = True
        t = 0
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            for jj in range(indptr[u], indptr[u + 1]):
                if mark[indices[jj]]:
                    t += 1
        out[v] = t // 2
        for j in range(indptr[v], indptr[v + 1]):
            mark[indices[j]] = False
    return out


@njit(cache=True)
def quadrangle_counts(indptr, indices):
    """Simple 4-cycles through each node: sum over opposite corners w of C(paths v-x-w, 2)."""
    n = len(indptr) - 1
    paths = np.zeros(n, dtype=np.int64)
    touched = np.empty(n, dtype=np.int64)
    out = np.zeros(n, dtype=np.int64)
    for v in range(n):
        nt = 0
        for j in range(indptr[v], indptr[v + 1]):
            x = indices[j]
            for jj in range(indptr[x], indptr[x + 1]):
                w = indices[jj]
                if w == v:
                    continue
                if paths[w] == 0:
                    touched[nt] = w
                    nt += 1
                paths[w] += 1
        q = 0
        for i in range(nt):
            c = paths[touched[i]]
            q += c * (c - 1) // 2
            paths[touched[i]] = 0
        out[v] = q
    return out
