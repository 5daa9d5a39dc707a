"""Naive reference implementations, written straight from the definitions.

These deliberately avoid the package's kernels and numpy vectorization so
they stay independent of the code they check.
"""

import math
from itertools import combinations


def dominates(a, b):
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


def nd_layers(F):
    """O(n^3) peeling: front k = non-dominated after removing fronts < k."""
    F = [list(map(float, f)) for f in F]
    remaining = set(range(len(F)))
    ranks = [0] * len(F)
    front = 1
    while remaining:
        layer = [i for i in remaining if not any(dominates(F[j], F[i]) for j in remaining if j != i)]
        for i in layer:
            ranks[i] = front
        remaining -= set(layer)
        front += 1
    return ranks


def dist(a, b):
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def spea2(F):
    n = len(F)
    S = [sum(dominates(F[i], F[j]) for j in range(n)) for i in range(n)]
    R = [sum(S[j] for j in range(n) if dominates(F[j], F[i])) for i in range(n)]
    k = int(math.floor(math.sqrt(n)))
    out = []
    for i in range(n):
        ds = sorted(dist(F[i], F[j]) for j in range(n) if j != i)
        sigma = ds[k - 1] if ds else 0.0
        out.append(R[i] + 1.0 / (sigma + 2.0))
    return out


def eps_filter(F, front, eps):
    m = len(F[0])
    ideal = [min(f[k] for f in F) for k in range(m)]
    S = [[f[k] - ideal[k] + 1.0 for k in range(m)] for f in F]
    keep = []
    for q in range(len(F)):
        covered = False
        for p in front:
            le = all((1 + eps) * S[p][k] <= S[q][k] for k in range(m))
            lt = any((1 + eps) * S[p][k] < S[q][k] for k in range(m))
            if le and lt:
                covered = True
                break
        if not covered:
            keep.append(q)
    return keep


def radius(X):
    n = len(X)
    return sum(dist(X[i], X[j]) for i in range(n) for j in range(n)) / (2 * n * n)


def neighbours(X, R):
    n = len(X)
    return [[j for j in range(n) if j != i and dist(X[i], X[j]) < R] for i in range(n)]


def ilc(F, X, R):
    nb = neighbours(X, R)
    n = len(F)
    S = [sum(1 for j in nb[i] if dominates(F[i], F[j])) for i in range(n)]
    return [sum(S[j] for j in nb[i] if dominates(F[j], F[i])) for i in range(n)]


def quality(F, X, R):
    nb = neighbours(X, R)
    out = []
    for i in range(len(F)):
        if not nb[i]:
            out.append(0.0)
        else:
            out.append(sum(1 for j in nb[i] if dominates(F[j], F[i])) / len(nb[i]))
    return out


def kappa(V):
    n = len(V)
    out = []
    for i in range(n):
        s = 0.0
        for j in range(n):
            if j != i:
                d = dist(V[i], V[j])
                s += math.inf if d == 0 else 1.0 / d
        out.append(s)
    return out


def truncate_literal_max_crowddis(V, target):
    """Remove the most isolated member (max CrowdDis) until ``target`` remain."""
    idx = list(range(len(V)))
    while len(idx) > target:
        k = kappa([V[i] for i in idx])
        cd = [(len(idx) - 1) / x if x > 0 else math.inf for x in k]
        idx.pop(max(range(len(idx)), key=lambda a: cd[a]))
    return idx


def min_pairwise(V, idx):
    return min(dist(V[a], V[b]) for a, b in combinations(idx, 2))


def best_spread_subsets(V, target):
    """All target-subsets attaining the maximal minimum pairwise distance."""
    best, keep = -1.0, []
    for sub in combinations(range(len(V)), target):
        d = min_pairwise(V, sub)
        if d > best + 1e-15:
            best, keep = d, [sub]
        elif abs(d - best) <= 1e-15:
            keep.append(sub)
    return best, keep


def igd(ref, pts):
    return sum(min(dist(r, p) for p in pts) for r in ref) / len(ref)


def ranks_by_hand(column):
    order = sorted(range(len(column)), key=lambda i: column[i])
    ranks = [0.0] * len(column)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and column[order[j + 1]] == column[order[i]]:
            j += 1
        for t in range(i, j + 1):
            ranks[order[t]] = (i + j) / 2 + 1
        i = j + 1
    return ranks
