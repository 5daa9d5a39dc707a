"""IGD, IGDX and Friedman-style mean ranks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import ContractViolation


@dataclass
class ReferenceSet:
    """Reference Pareto-set sample ``X`` paired row-wise with its images ``F``."""

    X: np.ndarray
    F: np.ndarray
    includes_local: bool = False
    is_local: Optional[np.ndarray] = None
    flagged: bool = False

    def __post_init__(self):
        self.X = np.atleast_2d(np.asarray(self.X, dtype=np.float64))
        self.F = np.atleast_2d(np.asarray(self.F, dtype=np.float64))
        if len(self.X) != len(self.F):
            raise ContractViolation("reference X and F row counts differ")


def _mean_min_distance(ref, pts):
    ref = np.atleast_2d(np.asarray(ref, dtype=np.float64))
    pts = np.asarray(pts, dtype=np.float64)
    if pts.size == 0:
        return float("inf")
    pts = np.atleast_2d(pts)
    best = np.full(len(ref), np.inf)
    # chunked to bound memory on large sets
    step = max(1, 2_000_000 // max(1, len(ref) * ref.shape[1]))
    for s in range(0, len(pts), step):
        diff = ref[:, None, :] - pts[None, s:s + step, :]
        best = np.minimum(best, np.sqrt(np.sum(diff * diff, axis=2)).min(axis=1))
    return float(best.mean())


def igd(F, ref: ReferenceSet) -> float:
    """Mean distance from each reference front point to its nearest point in ``F``."""
    return _mean_min_distance(ref.F, F)


def igdx(X, ref: ReferenceSet, lower=None, upper=None) -> float:
    """IGD in decision space; with bounds both sets are normalized to [0, 1] first."""
    RX = ref.X
    X = np.asarray(X, dtype=np.float64)
    if lower is not None:
        span = np.asarray(upper) - np.asarray(lower)
        RX = (RX - lower) / span
        X = (X - lower) / span if X.size else X
    return _mean_min_distance(RX, X)


@dataclass
class RankTable:
    ranks: np.ndarray  # (algorithms, problems)
    mean_ranks: np.ndarray = field(init=False)

    def __post_init__(self):
        self.mean_ranks = self.ranks.mean(axis=1)


def rank_column(values, smaller_is_better=True) -> np.ndarray:
    """Ranks 1..A with tied entries sharing the average of their positions."""
    v = np.asarray(values, dtype=np.float64)
    if not smaller_is_better:
        v = -v
    order = np.argsort(v, kind="stable")
    ranks = np.empty(len(v))
    i = 0
    while i < len(v):
        j = i
        while j + 1 < len(v) and v[order[j + 1]] == v[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def mean_ranks(scores, smaller_is_better=True) -> RankTable:
    """Rank algorithms (rows) within each problem (column), then average across problems."""
    S = np.atleast_2d(np.asarray(scores, dtype=np.float64))
    if np.isnan(S).any():
        raise ContractViolation("score matrix has missing entries")
    ranks = np.column_stack([rank_column(S[:, j], smaller_is_better) for j in range(S.shape[1])])
    return RankTable(ranks)
