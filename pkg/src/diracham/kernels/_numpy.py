"""Vectorised numpy kernels. Same contracts as :mod:`diracham.kernels._numba`."""
import numpy as np

INF8 = 127
INF16 = 32767


def _popcounts(m: int) -> np.ndarray:
    pc = np.zeros(1 << m, dtype=np.int64)
    for b in range(m):
        pc[1 << b: 2 << b] = pc[: 1 << b] + 1
    return pc


def _layers(m: int):
    """Masks of ``m`` bits grouped by popcount, ascending."""
    pc = _popcounts(m)
    order = np.argsort(pc, kind="stable")
    bounds = np.searchsorted(pc[order], np.arange(m + 2))
    return [order[bounds[p]:bounds[p + 1]] for p in range(m + 1)]


def _allowed_row(kind, side, u, vs):
    if kind == 0:
        return np.ones(len(vs), dtype=bool)
    if kind == 1:
        return side[vs] & side[u]
    return side[vs] != side[u]


def closure_sweep(a, deg, kind, side, out_u, out_v):
    n = a.shape[0]
    count = 0
    changed = True
    while changed:
        changed = False
        for u in range(n - 1):
            vs = u + 1 + np.flatnonzero(a[u, u + 1:] == 0)
            if len(vs) == 0:
                continue
            vs = vs[_allowed_row(kind, side, u, vs)]
            if len(vs) == 0:
                continue
            d = deg[vs] + deg[u]
            if d.max() + len(vs) - 1 < n:
                continue
            # sequential scan: each accepted pair lowers the bar for later v by one
            take = d >= n
            while True:
                before = np.cumsum(take) - take
                nxt = d + before >= n
                if np.array_equal(nxt, take):
                    break
                take = nxt
            added = vs[take]
            if len(added) == 0:
                continue
            a[u, added] = 1
            a[added, u] = 1
            deg[u] += len(added)
            deg[added] += 1
            out_u[count:count + len(added)] = u
            out_v[count:count + len(added)] = added
            count += len(added)
            changed = True
    return count


def lift_rotations(cycle, time):
    n = len(cycle)
    c = np.asarray(cycle, dtype=np.int64).copy()
    while True:
        times = time[c, np.roll(c, -1)]
        j = int(np.argmax(times))
        best = int(times[j])
        if best < 0:
            return c, 0
        a, b = c[j], c[(j + 1) % n]
        if a < b:
            p = c[(j - np.arange(n)) % n]
        else:
            p = c[(j + 1 + np.arange(n)) % n]
        ok = (time[p[0], p[1:]] < best) & (time[p[:-1], p[-1]] < best)
        hits = np.flatnonzero(ok)
        if len(hits) == 0:
            return c, best + 1
        i = int(hits[0])
        c = np.concatenate((p[: i + 1], p[i + 1:][::-1]))


def held_karp_table(nb0, nb):
    m = len(nb)
    ends = np.zeros(1 << m, dtype=np.int32)
    for v in range(m):
        if (int(nb0) >> v) & 1:
            ends[1 << v] = 1 << v
    nb = np.asarray(nb, dtype=np.int64)
    for masks in _layers(m)[2:]:
        e = np.zeros(len(masks), dtype=np.int64)
        for v in range(m):
            sel = np.flatnonzero((masks >> v) & 1)
            if len(sel) == 0:
                continue
            prev = ends[masks[sel] ^ (1 << v)]
            hit = (prev & nb[v]) != 0
            e[sel[hit]] |= 1 << v
        ends[masks] = e
    return ends


def ie_signed_walks(indptr, indices, n, prime, batch=4096):
    adj = np.zeros((n, n), dtype=np.int64)
    for v in range(n):
        adj[v, indices[indptr[v]:indptr[v + 1]]] = 1
    total = 0
    count = 1 << (n - 1)
    for start in range(0, count, batch):
        excl = np.arange(start, min(count, start + batch), dtype=np.int64)
        inside = np.ones((len(excl), n), dtype=np.int64)
        inside[:, 1:] = 1 - ((excl[:, None] >> np.arange(n - 1)) & 1)
        sign = np.where((n - inside.sum(axis=1)) % 2 == 0, 1, -1)
        x = np.zeros((len(excl), n), dtype=np.int64)
        x[:, 0] = 1
        for _ in range(n):
            x = ((x @ adj) % prime) * inside
        total = (total + int((sign * x[:, 0]).sum() % prime)) % prime
    return total


def min_path_cover_table(nb):
    m = len(nb)
    size = 1 << m
    best = np.full((size, m), INF8, dtype=np.int8)
    rowmin = np.full(size, INF8, dtype=np.int16)
    for v in range(m):
        best[1 << v, v] = 1
        rowmin[1 << v] = 1
    for masks in _layers(m)[2:]:
        for v in range(m):
            sel = masks[(masks >> v) & 1 == 1]
            if len(sel) == 0:
                continue
            sub = sel ^ (1 << v)
            b = rowmin[sub] + 1
            for u in range(m):
                if (int(nb[v]) >> u) & 1:
                    has = (sub >> u) & 1 == 1
                    b = np.where(has, np.minimum(b, best[sub, u]), b)
            best[sel, v] = b
        rowmin[masks] = best[masks].min(axis=1)
    return best


def _cc_fill(adj, f, ncolors, t, stop_early):
    n = len(f)
    size = 1 << ncolors
    table = np.full((size, n), INF16, dtype=np.int32)
    rowmin = np.full(size, INF16, dtype=np.int32)
    for xs in range(1, size):
        need = bin(xs).count("1") - t
        row = np.full(n, INF16, dtype=np.int32)
        for c in range(ncolors):
            if not (xs >> c) & 1:
                continue
            vs = np.flatnonzero(f == c)
            if len(vs) == 0:
                continue
            sub = xs ^ (1 << c)
            if sub == 0:
                row[vs] = 1
                continue
            prev = table[sub]
            alt = prev.min() + 1 if prev.min() < INF16 else INF16
            nbmin = np.where(adj[vs], prev[None, :], INF16).min(axis=1)
            row[vs] = np.minimum(nbmin, alt)
        table[xs] = row
        rowmin[xs] = row.min()
        if stop_early:
            hit = np.flatnonzero(row <= need)
            if len(hit):
                return table, xs, int(hit[0])
    return table, -1, -1


def _dense(indptr, indices, n):
    adj = np.zeros((n, n), dtype=bool)
    for v in range(n):
        adj[v, indices[indptr[v]:indptr[v + 1]]] = True
    return adj


def _neighbour_min(row, adj, nonadj, weights, nbmask, top):
    """``out[i, v] = min(row[i, u] for u adjacent to v)``; entries of ``row`` are <= top or INF16."""
    b, n = row.shape
    if weights is None:
        spread = np.broadcast_to(row[:, None, :], (b, n, n)).copy()
        spread[:, nonadj] = INF16
        return spread.min(axis=2)
    # pack "value <= level" into one int64 per trial and test it against each neighbourhood
    out = np.full((b, n), INF16, dtype=np.int16)
    for level in range(top, 0, -1):
        packed = (row <= level).astype(np.int64) @ weights
        out[(packed[:, None] & nbmask[None, :]) != 0] = level
    return out


def _cc_block(adj, f, ncolors, t):
    """All DP tables of a block of trials at once; first accepting (xs, v) per trial.

    Besides the table, each finished row keeps its per-vertex neighbour minimum
    and its overall minimum, so later rows need only gathers.
    """
    b, n = f.shape
    size = 1 << ncolors
    nbmin = np.full((b, size, n), INF16, dtype=np.int16)
    low = np.full((b, size), INF16, dtype=np.int16)
    bit = np.left_shift(np.int64(1), f)
    rows = np.arange(b)[:, None]
    cols = np.arange(n)[None, :]
    nonadj = ~adj
    weights = nbmask = None
    if n <= 62:
        weights = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
        nbmask = adj.astype(np.int64) @ weights
    first = np.full((b, 2), -1, dtype=np.int64)
    pending = np.ones(b, dtype=bool)
    for xs in range(1, size):
        sub = xs ^ bit
        alt = low[rows, sub]
        alt = np.where(alt < INF16, alt + 1, INF16)
        row = np.minimum(nbmin[rows, sub, cols], alt)
        row[sub == 0] = 1
        row[(xs & bit) == 0] = INF16
        row = row.astype(np.int16)
        low[:, xs] = row.min(axis=1)
        nbmin[:, xs] = _neighbour_min(row, adj, nonadj, weights, nbmask, bin(xs).count("1"))
        hit = row <= bin(xs).count("1") - t
        new = pending & hit.any(axis=1)
        if new.any():
            first[new, 0] = xs
            first[new, 1] = hit[new].argmax(axis=1)
            pending &= ~new
            if not pending.any():
                break
    return first


def color_coding_trials(indptr, indices, colors, ncolors, t):
    trials, n = colors.shape
    adj = _dense(indptr, indices, n)
    # blocks grow geometrically so an early success stays cheap
    cap = max(1, min(4096, (1 << 24) // ((1 << ncolors) * max(n, 1))))
    if n > 62:
        cap = max(1, min(cap, (1 << 22) // (n * n)))
    start, block = 0, min(16, cap)
    while start < trials:
        first = _cc_block(adj, colors[start:start + block].astype(np.int64), ncolors, t)
        hits = np.flatnonzero(first[:, 0] >= 0)
        if len(hits):
            i = int(hits[0])
            return start + i, int(first[i, 0]), int(first[i, 1])
        start += block
        block = min(2 * block, cap)
    return -1, -1, -1


def color_coding_table(indptr, indices, f, ncolors):
    n = len(f)
    table, _, _ = _cc_fill(_dense(indptr, indices, n), np.asarray(f), ncolors, 0, False)
    return table.astype(np.int16)
