"""Pure-Python implementations of the numeric kernels.

Signatures mirror ``_ckernels``; nodes are dense indices ``0..n-1`` and
``BIG`` stands for an unreachable distance.
"""
BIG = 1 << 62


def floyd_warshall(n, edges):
    d = [[BIG] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = 0
    for i, j, w in edges:
        if w < d[i][j]:
            d[i][j] = w
            d[j][i] = w
    for k in range(n):
        dk = d[k]
        for i in range(n):
            di = d[i]
            dik = di[k]
            if dik >= BIG:
                continue
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return d


def boundary_value(du, dv, w, alpha):
    best = -BIG
    back = w - alpha
    for a, b in zip(du, dv):
        x = alpha + a
        y = back + b
        v = x if x < y else y
        if v > best:
            best = v
    return best


def edge_scan(du, dv, w):
    """Minimum of the upper boundary over every segment crossing, no pruning.

    Returns ``(value, alpha)``; among equal values the smallest alpha wins.
    """
    cands = {0, w}
    for a in du:
        for b in dv:
            # alpha + a == w - alpha + b
            num = w + b - a
            if num <= 0 or num >= 2 * w:
                continue
            cands.add(num // 2)
    best_val = BIG
    best_alpha = 0
    for alpha in sorted(cands):
        val = boundary_value(du, dv, w, alpha)
        if val < best_val:
            best_val = val
            best_alpha = alpha
    return best_val, best_alpha
