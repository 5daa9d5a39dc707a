"""Pure numpy implementations of the O(n^2) kernels.

Every reduction here accumulates in index order (explicit loops over the
reduced axis, or ``cumsum``) so the results are bit-identical to the
compiled twin in ``_ckernels.pyx``.
"""

import numpy as np


def dominance_matrix(F):
    """Return ``dom`` with ``dom[i, j] = 1`` iff row i Pareto-dominates row j."""
    F = np.ascontiguousarray(F, dtype=np.float64)
    n, m = F.shape
    le = np.ones((n, n), dtype=bool)
    lt = np.zeros((n, n), dtype=bool)
    for k in range(m):
        a = F[:, k][:, None]
        b = F[:, k][None, :]
        le &= a <= b
        lt |= a < b
    return (le & lt).astype(np.uint8)


def pairwise_distances(V):
    V = np.ascontiguousarray(V, dtype=np.float64)
    n, d = V.shape
    acc = np.zeros((n, n))
    for k in range(d):
        t = V[:, k][:, None] - V[:, k][None, :]
        acc += t * t
    return np.sqrt(acc)


def nd_ranks(dom):
    """Front index (1-based) per row from a dominance matrix."""
    dom = np.asarray(dom, dtype=bool)
    n = dom.shape[0]
    counts = dom.sum(axis=0).astype(np.int64)
    ranks = np.zeros(n, dtype=np.int64)
    current = np.flatnonzero(counts == 0)
    front = 1
    while current.size:
        ranks[current] = front
        counts[current] = -1
        counts -= dom[current].sum(axis=0)
        current = np.flatnonzero(counts == 0)
        front += 1
    return ranks


def local_convergence(dom, dist, radius):
    dom = np.asarray(dom, dtype=np.int64)
    nbr = np.asarray(dist) < radius
    np.fill_diagonal(nbr, False)
    d = dom * nbr
    strength = d.sum(axis=1)
    return (strength[:, None] * d).sum(axis=0).astype(np.float64)


def _inverse(dist, alive=None):
    with np.errstate(divide="ignore"):
        inv = 1.0 / dist
    dup = dist == 0.0
    np.fill_diagonal(dup, False)
    inv[dist == 0.0] = 0.0
    if alive is not None:
        inv[:, ~alive] = 0.0
        dup[:, ~alive] = False
    return inv, dup


def inverse_distance_sums(dist):
    """Row sums of 1/d over j != i, plus the count of zero-distance partners."""
    dist = np.asarray(dist, dtype=np.float64)
    inv, dup = _inverse(dist)
    n = dist.shape[0]
    kappa = np.zeros(n)
    for j in range(n):
        kappa += inv[:, j]
    return kappa, dup.sum(axis=1).astype(np.int64)


def _seq_mean(values):
    if values.size == 0:
        return 0.0
    return np.cumsum(values)[-1] / values.size


def crowd_truncate(dist_a, dist_b, target):
    """Indices kept after iteratively discarding the most crowded member.

    With ``dist_b`` given, the crowdedness is the mean of both spaces'
    inverse-distance sums, each rescaled by its current population mean.
    """
    dist_a = np.asarray(dist_a, dtype=np.float64)
    n = dist_a.shape[0]
    alive = np.ones(n, dtype=bool)
    if target >= n:
        return np.arange(n)
    spaces = [dist_a] if dist_b is None else [dist_a, np.asarray(dist_b, dtype=np.float64)]
    state = []
    for dist in spaces:
        inv, dup = _inverse(dist)
        kappa = np.zeros(n)
        for j in range(n):
            kappa += inv[:, j]
        state.append([inv, dup.astype(np.int64), kappa, dup.sum(axis=1).astype(np.int64)])
    remaining = n
    while remaining > target:
        idx = np.flatnonzero(alive)
        dups = np.zeros(idx.size, dtype=np.int64)
        for s in state:
            dups += s[3][idx]
        if len(state) == 1:
            score = state[0][2][idx]
        else:
            ka = state[0][2][idx]
            kb = state[1][2][idx]
            ma = _seq_mean(ka)
            mb = _seq_mean(kb)
            score = 0.5 * ((ka / ma if ma > 0 else ka) + (kb / mb if mb > 0 else kb))
        top = dups.max()
        cand = dups == top
        masked = np.where(cand, score, -np.inf)
        r = idx[int(np.argmax(masked))]
        alive[r] = False
        remaining -= 1
        for s in state:
            s[2] -= s[0][:, r]
            s[3] -= s[1][:, r]
    return np.flatnonzero(alive)
