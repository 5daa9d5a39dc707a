"""Analytic multimodal benchmark problems with closed-form Pareto sets.

Four families, addressed by canonical ids:

* ``sinemirror`` - two mirrored global Pareto sets, D = 2.
* ``sinemirrord-d<D>`` - the same with D - 1 tail variables.
* ``polygon-k<k>-m<m>-d<D>`` - k congruent m-gons, one equivalent Pareto set per polygon.
* ``dualdepth-d<delta>`` - one global and one local Pareto set whose front is
  worse by ``delta`` in every objective.
"""

from __future__ import annotations

import math
import re

import numpy as np

from .core import ContractViolation, Problem
from .metrics import ReferenceSet


class SineMirror(Problem):
    """f1 = |x1|, f2 = 1 - sqrt(|x1|) + c * sum_k (x_k - sin(pi |x1|))^2 over the tail.

    ``c = 2 / (D - 1)``; for D = 2 this is the two-variable base problem.
    """

    def __init__(self, n_var=2):
        if n_var < 2:
            raise ContractViolation("SineMirror needs at least two variables")
        super().__init__(-np.ones(n_var), np.ones(n_var), 2)
        self.name = "sinemirror" if n_var == 2 else f"sinemirrord-d{n_var}"

    @property
    def id(self):
        return self.name

    def _objectives(self, X):
        a = np.abs(X[:, 0])
        target = np.sin(np.pi * a)
        resid = X[:, 1:] - target[:, None]
        penalty = (2.0 / (self.n_var - 1)) * np.sum(resid * resid, axis=1)
        return np.column_stack([a, 1.0 - np.sqrt(a) + penalty])

    def sample_ps(self, K, which="global"):
        if K < 2:
            raise ContractViolation("need K >= 2 reference points")
        X = []
        for b, sign in enumerate((-1.0, 1.0)):
            n = K // 2 + (1 if b < K % 2 else 0)
            t = (np.arange(n) + 0.5) / n
            tail = np.repeat(np.sin(np.pi * t)[:, None], self.n_var - 1, axis=1)
            X.append(np.column_stack([sign * t, tail]))
        X = np.vstack(X)
        return X, np.zeros(len(X), dtype=bool)

    def branch_of(self, X, tol=0.05):
        """Branch label per row: -1 / +1 for points near a mirror branch, 0 otherwise.

        Nearness is the normalized distance to the branch point with the same x1.
        """
        X = np.atleast_2d(X)
        a = np.abs(X[:, 0])
        resid = (X[:, 1:] - np.sin(np.pi * a)[:, None]) / 2.0
        near = np.sqrt(np.sum(resid * resid, axis=1)) <= tol
        return np.where(near, np.sign(X[:, 0]), 0).astype(int)


class Polygon(Problem):
    """Distance-to-vertex problem over k congruent regular m-gons.

    The decision vector holds L = D/2 planar points; objective i is the mean
    over points of the distance to the nearest i-th vertex of any polygon.
    """

    def __init__(self, k=4, m=3, n_var=10):
        if n_var % 2 or n_var < 2:
            raise ContractViolation("Polygon needs an even number of variables")
        if k < 1 or m < 2:
            raise ContractViolation("Polygon needs k >= 1 and m >= 2")
        self.k, self.grid = int(k), math.ceil(math.sqrt(k))
        side = 4.0 * self.grid
        super().__init__(np.zeros(n_var), np.full(n_var, side), m)
        self.name = f"polygon-k{k}-m{m}-d{n_var}"
        j = np.arange(self.k)
        self.centers = np.column_stack([2.0 + 4.0 * (j % self.grid), 2.0 + 4.0 * (j // self.grid)])
        theta = 2.0 * np.pi * np.arange(1, m + 1) / m + np.pi / 2.0
        self.unit_vertices = np.column_stack([np.cos(theta), np.sin(theta)])
        # (k, m, 2)
        self.vertices = self.centers[:, None, :] + self.unit_vertices[None, :, :]

    @property
    def id(self):
        return self.name

    def _objectives(self, X):
        P = X.reshape(X.shape[0], -1, 2)
        diff = P[:, :, None, None, :] - self.vertices[None, None, :, :, :]
        dist = np.sqrt(np.sum(diff * diff, axis=-1))  # (n, L, k, m)
        return dist.min(axis=2).mean(axis=1)

    def _inside(self, p):
        """Mask of planar points inside the unit polygon (centered at the origin)."""
        V = self.unit_vertices
        inside = np.ones(len(p), dtype=bool)
        for i in range(len(V)):
            a, b = V[i], V[(i + 1) % len(V)]
            cross = (b[0] - a[0]) * (p[:, 1] - a[1]) - (b[1] - a[1]) * (p[:, 0] - a[0])
            inside &= cross >= 0
        return inside

    def _hull_points(self, n):
        # fixed-seed rejection sampling keeps the reference set reproducible
        rng = np.random.Generator(np.random.PCG64(20240101))
        pts = np.zeros((0, 2))
        while len(pts) < n:
            cand = rng.uniform(-1.0, 1.0, size=(4 * n + 16, 2))
            pts = np.vstack([pts, cand[self._inside(cand)]])
        return pts[:n]

    def sample_ps(self, K, which="global"):
        if K < 2:
            raise ContractViolation("need K >= 2 reference points")
        L = self.n_var // 2
        X = []
        for j in range(self.k):
            n = K // self.k + (1 if j < K % self.k else 0)
            p = self.centers[j] + self._hull_points(n)
            X.append(np.tile(p, (1, L)))
        X = np.vstack(X)
        return X, np.zeros(len(X), dtype=bool)

    def polygon_of(self, X):
        """Polygon index per row when every point lies in that polygon's circumdisk, else -1."""
        P = np.atleast_2d(X).reshape(len(np.atleast_2d(X)), -1, 2)
        d = np.linalg.norm(P[:, :, None, :] - self.centers[None, None, :, :], axis=-1)
        nearest = d.argmin(axis=2)  # (n, L)
        inside = d.min(axis=2) <= 1.0
        same = np.all(nearest == nearest[:, :1], axis=1) & np.all(inside, axis=1)
        return np.where(same, nearest[:, 0], -1)

    def polygons_covered(self, X) -> float:
        """Mean over point slots of the number of polygons reached by that slot.

        A slot reaches polygon j when some row places that point inside j's
        circumdisk. With one point per solution this is the plain count of
        polygons covered.
        """
        X = np.atleast_2d(X)
        P = X.reshape(len(X), -1, 2)
        d = np.linalg.norm(P[:, :, None, :] - self.centers[None, None, :, :], axis=-1)
        nearest = d.argmin(axis=2)
        inside = d.min(axis=2) <= 1.0
        return float(np.mean([np.unique(nearest[inside[:, l], l]).size for l in range(P.shape[1])]))


class DualDepth(Problem):
    """f = (x1 + h, 1 - x1 + h) with a global valley at x2 = 0.25 and a local one at 0.75.

    ``h(x2) = min(20 (x2 - 0.25)^2, delta + 20 (x2 - 0.75)^2)``.
    """

    has_local = True

    def __init__(self, delta=0.1):
        if not 0.0 < delta < 1.0:
            raise ContractViolation("DualDepth needs 0 < delta < 1")
        super().__init__(np.zeros(2), np.ones(2), 2)
        self.delta = float(delta)
        self.name = f"dualdepth-d{self.delta:.2f}"

    @property
    def id(self):
        return self.name

    def _objectives(self, X):
        x1, x2 = X[:, 0], X[:, 1]
        h = np.minimum(20.0 * (x2 - 0.25) ** 2, self.delta + 20.0 * (x2 - 0.75) ** 2)
        return np.column_stack([x1 + h, 1.0 - x1 + h])

    def sample_ps(self, K, which="global"):
        if K < 2:
            raise ContractViolation("need K >= 2 reference points")
        levels = [0.25] if which == "global" else [0.25, 0.75]
        X, flags = [], []
        for b, x2 in enumerate(levels):
            n = K // len(levels) + (1 if b < K % len(levels) else 0)
            t = (np.arange(n) + 0.5) / n
            X.append(np.column_stack([t, np.full(n, x2)]))
            flags.append(np.full(n, x2 == 0.75))
        return np.vstack(X), np.concatenate(flags)


_PATTERNS = [
    (re.compile(r"^sinemirror$"), lambda m: SineMirror(2)),
    (re.compile(r"^sinemirrord-d(\d+)$"), lambda m: SineMirror(int(m[1]))),
    (re.compile(r"^polygon-k(\d+)-m(\d+)-d(\d+)$"), lambda m: Polygon(int(m[1]), int(m[2]), int(m[3]))),
    (re.compile(r"^dualdepth-d([0-9]*\.?[0-9]+)$"), lambda m: DualDepth(float(m[1]))),
]


def make_problem(problem_id: str) -> Problem:
    """Instantiate a problem from its canonical id (see module docstring)."""
    key = problem_id.strip().lower()
    for pattern, build in _PATTERNS:
        match = pattern.match(key)
        if match:
            return build(match)
    raise ContractViolation(f"unknown problem id {problem_id!r}")


def sample_reference(problem: Problem, K: int, which: str = "global") -> ReferenceSet:
    """Reference Pareto-set sample and its analytic objective images.

    Asking for local branches on a family without them returns the global
    sample with ``flagged=True``.
    """
    if which not in ("global", "global_and_local"):
        raise ContractViolation(f"unknown reference kind {which!r}")
    flagged = which == "global_and_local" and not problem.has_local
    kind = "global" if flagged else which
    X, is_local = problem.sample_ps(K, kind)
    F = problem._objectives(X)
    return ReferenceSet(X, F, includes_local=bool(is_local.any()), is_local=is_local, flagged=flagged)


def default_epsilon(problem: Problem) -> float:
    """0.3 for problems with local Pareto sets, 0.1 otherwise."""
    return 0.3 if problem.has_local else 0.1
