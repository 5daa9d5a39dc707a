"""Decision-space niches, local convergence scores and crowding truncation.

Decision vectors passed here are expected normalized to [0, 1] per
coordinate (see ``Problem.normalize``). Objective vectors are min-max
normalized internally whenever a crowding measure uses them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._ext import kernels


class Space(str, enum.Enum):
    DECISION = "decision"
    OBJECTIVE = "objective"
    COMBINED = "combined"


def niche_radius(Xn, dist=None) -> float:
    """Half the mean pairwise distance, averaged over all ordered pairs (i, j)."""
    Xn = np.atleast_2d(Xn)
    n = Xn.shape[0]
    if n == 0:
        return 0.0
    if dist is None:
        dist = kernels.pairwise_distances(Xn)
    return float(np.cumsum(dist.ravel())[-1] / (2.0 * n * n))


@dataclass
class NeighborGraph:
    radius: float
    dist: np.ndarray

    @classmethod
    def build(cls, Xn, radius=None):
        dist = kernels.pairwise_distances(np.atleast_2d(Xn))
        if radius is None:
            radius = niche_radius(Xn, dist)
        return cls(float(radius), dist)

    @property
    def adjacency(self) -> np.ndarray:
        adj = self.dist < self.radius
        np.fill_diagonal(adj, False)
        return adj

    def neighbors(self, i) -> np.ndarray:
        return np.flatnonzero(self.adjacency[i])


def local_convergence_indicator(F, graph: NeighborGraph) -> np.ndarray:
    """Strength-weighted count of dominating neighbours; 0 for locally non-dominated rows."""
    dom = kernels.dominance_matrix(np.atleast_2d(F))
    return kernels.local_convergence(dom, graph.dist, graph.radius)


def local_convergence_quality(F, graph: NeighborGraph) -> np.ndarray:
    """Fraction of neighbours that dominate each row (0 for isolated rows)."""
    dom = kernels.dominance_matrix(np.atleast_2d(F)).astype(bool)
    adj = graph.adjacency
    dominated_by = (dom & adj).sum(axis=0)
    n_nbr = adj.sum(axis=1)
    out = np.zeros(len(n_nbr))
    has = n_nbr > 0
    out[has] = dominated_by[has] / n_nbr[has]
    return out


def normalize_objectives(F) -> np.ndarray:
    F = np.atleast_2d(np.asarray(F, dtype=np.float64))
    lo = F.min(axis=0)
    span = F.max(axis=0) - lo
    span[span == 0] = 1.0
    return (F - lo) / span


def _space_distances(Xn, F, space):
    space = Space(space)
    if space is Space.DECISION:
        return kernels.pairwise_distances(Xn), None
    Fd = kernels.pairwise_distances(normalize_objectives(F))
    if space is Space.OBJECTIVE:
        return Fd, None
    return kernels.pairwise_distances(Xn), Fd


def crowding(Xn=None, F=None, space=Space.DECISION):
    """Crowdedness ``kappa`` (sum of inverse distances) and ``CrowdDis = (n-1)/kappa``.

    Members sharing a vector with another member get ``kappa = inf``.
    Larger ``CrowdDis`` means more isolated.
    """
    da, db = _space_distances(Xn, F, space)
    n = da.shape[0]
    ka, dup = kernels.inverse_distance_sums(da)
    if db is not None:
        kb, dupb = kernels.inverse_distance_sums(db)
        dup = dup + dupb
        ma, mb = ka.mean(), kb.mean()
        kappa = 0.5 * ((ka / ma if ma > 0 else ka) + (kb / mb if mb > 0 else kb))
    else:
        kappa = ka
    kappa = np.where(dup > 0, np.inf, kappa)
    with np.errstate(divide="ignore"):
        crowd_dis = np.where(kappa > 0, (n - 1) / kappa, np.inf)
    return kappa, crowd_dis


def crowd_distance(Xn) -> np.ndarray:
    """Decision-space ``CrowdDis`` used as the diversity archive's mating fitness."""
    return crowding(Xn, space=Space.DECISION)[1]


def truncate_by_crowding(Xn, F, target, space=Space.DECISION) -> np.ndarray:
    """Indices kept after removing the most crowded member one at a time.

    Crowdedness is updated after each removal; ties go to the lowest index.
    """
    n = (np.atleast_2d(Xn) if Xn is not None else np.atleast_2d(F)).shape[0]
    if target <= 0:
        return np.zeros(0, dtype=np.int64)
    if target >= n:
        return np.arange(n)
    da, db = _space_distances(Xn, F, space)
    return kernels.crowd_truncate(da, db, int(target))
