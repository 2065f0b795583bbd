"""Compiled loop kernels. Signatures mirror :mod:`diracham.kernels._numpy`."""
import numpy as np
from numba import njit

INF8 = 127
INF16 = 32767


@njit(cache=True)
def _allowed(kind, side, u, v):
    if kind == 0:
        return True
    if kind == 1:
        return side[u] and side[v]
    return side[u] != side[v]


@njit(cache=True)
def closure_sweep(a, deg, kind, side, out_u, out_v):
    n = a.shape[0]
    count = 0
    changed = True
    while changed:
        changed = False
        for u in range(n):
            for v in range(u + 1, n):
                if a[u, v]:
                    continue
                if deg[u] + deg[v] < n:
                    continue
                if not _allowed(kind, side, u, v):
                    continue
                a[u, v] = 1
                a[v, u] = 1
                deg[u] += 1
                deg[v] += 1
                out_u[count] = u
                out_v[count] = v
                count += 1
                changed = True
    return count


@njit(cache=True)
def lift_rotations(cycle, time):
    n = cycle.shape[0]
    c = cycle.copy()
    p = np.empty(n, dtype=np.int64)
    while True:
        best = -1
        j = -1
        for i in range(n):
            t = time[c[i], c[(i + 1) % n]]
            if t > best:
                best = t
                j = i
        if best < 0:
            return c, 0
        a = c[j]
        b = c[(j + 1) % n]
        # path from the logged u to v that avoids the edge at position j
        if a < b:
            for i in range(n):
                p[i] = c[(j - i) % n]
        else:
            for i in range(n):
                p[i] = c[(j + 1 + i) % n]
        last = p[n - 1]
        found = -1
        for i in range(n - 1):
            if time[p[0], p[i + 1]] < best and time[p[i], last] < best:
                found = i
                break
        if found < 0:
            return c, best + 1
        for i in range(found + 1):
            c[i] = p[i]
        for i in range(found + 1, n):
            c[i] = p[n - 1 - (i - found - 1)]


@njit(cache=True)
def held_karp_table(nb0, nb):
    m = nb.shape[0]
    size = 1 << m
    ends = np.zeros(size, dtype=np.int32)
    for v in range(m):
        if (nb0 >> v) & 1:
            ends[1 << v] = 1 << v
    for mask in range(1, size):
        if mask & (mask - 1) == 0:
            continue
        e = 0
        for v in range(m):
            bit = 1 << v
            if mask & bit and ends[mask ^ bit] & nb[v]:
                e |= bit
        ends[mask] = e
    return ends


@njit(cache=True)
def ie_signed_walks(indptr, indices, n, prime):
    """Sum over excluded sets S (not containing 0) of (-1)^|S| * closed n-walks at 0."""
    total = 0
    x = np.zeros(n, dtype=np.int64)
    y = np.zeros(n, dtype=np.int64)
    inside = np.zeros(n, dtype=np.bool_)
    for excl in range(1 << (n - 1)):
        sign = 1
        for v in range(n):
            inside[v] = True
        inside[0] = True
        for v in range(1, n):
            if (excl >> (v - 1)) & 1:
                inside[v] = False
                sign = -sign
        for v in range(n):
            x[v] = 0
        x[0] = 1
        for _ in range(n):
            for v in range(n):
                s = 0
                if inside[v]:
                    for k in range(indptr[v], indptr[v + 1]):
                        s += x[indices[k]]
                y[v] = s % prime
            for v in range(n):
                x[v] = y[v] if inside[v] else 0
        total = (total + sign * x[0]) % prime
    return total


@njit(cache=True)
def min_path_cover_table(nb):
    m = nb.shape[0]
    size = 1 << m
    best = np.full((size, m), INF8, dtype=np.int8)
    rowmin = np.full(size, INF8, dtype=np.int8)
    for mask in range(1, size):
        lo = INF8
        for v in range(m):
            bit = 1 << v
            if not mask & bit:
                continue
            sub = mask ^ bit
            if sub == 0:
                b = 1
            else:
                b = rowmin[sub] + 1
                cand = nb[v] & sub
                for u in range(m):
                    if (cand >> u) & 1 and best[sub, u] < b:
                        b = best[sub, u]
            best[mask, v] = b
            if b < lo:
                lo = b
        rowmin[mask] = lo
    return best


@njit(cache=True)
def _cc_fill(indptr, indices, f, ncolors, t, table, rowmin, stop_early):
    n = f.shape[0]
    size = 1 << ncolors
    for xs in range(1, size):
        need = 0
        y = xs
        while y:
            need += 1
            y &= y - 1
        need -= t
        lo = INF16
        for v in range(n):
            c = f[v]
            if not (xs >> c) & 1:
                table[xs, v] = INF16
                continue
            sub = xs ^ (1 << c)
            if sub == 0:
                b = 1
            else:
                b = INF16
                if rowmin[sub] < INF16:
                    b = rowmin[sub] + 1
                for k in range(indptr[v], indptr[v + 1]):
                    w = table[sub, indices[k]]
                    if w < b:
                        b = w
            table[xs, v] = b
            if b < lo:
                lo = b
            if stop_early and b <= need:
                return xs, v
        rowmin[xs] = lo
    return -1, -1


@njit(cache=True)
def color_coding_trials(indptr, indices, colors, ncolors, t):
    n = colors.shape[1]
    size = 1 << ncolors
    table = np.empty((size, n), dtype=np.int16)
    rowmin = np.empty(size, dtype=np.int16)
    for trial in range(colors.shape[0]):
        xs, v = _cc_fill(indptr, indices, colors[trial], ncolors, t, table, rowmin, True)
        if xs >= 0:
            return trial, xs, v
    return -1, -1, -1


@njit(cache=True)
def color_coding_table(indptr, indices, f, ncolors):
    n = f.shape[0]
    size = 1 << ncolors
    table = np.full((size, n), INF16, dtype=np.int16)
    rowmin = np.full(size, INF16, dtype=np.int16)
    _cc_fill(indptr, indices, f, ncolors, 0, table, rowmin, False)
    return table
