"""Pareto and epsilon dominance, non-dominated sorting, SPEA2 fitness.

Population-level functions take an objective matrix ``F`` of shape
``(n, m)`` (minimization) and return per-row arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._ext import kernels
from .core import ContractViolation


def pareto_dominates(fa, fb) -> bool:
    fa = np.asarray(fa, dtype=np.float64)
    fb = np.asarray(fb, dtype=np.float64)
    if fa.shape != fb.shape:
        raise ContractViolation("objective vectors differ in length")
    return bool(np.all(fa <= fb) and np.any(fa < fb))


def dominance_matrix(F) -> np.ndarray:
    """Boolean ``(n, n)`` matrix, entry ``[i, j]`` true iff row i dominates row j."""
    return kernels.dominance_matrix(np.atleast_2d(F)).astype(bool)


@dataclass(frozen=True)
class EpsContext:
    """Translation that maps the ideal point of a set to (1, ..., 1).

    Multiplicative epsilon bands need strictly positive objectives; shifting
    by ``1 - ideal`` guarantees every shifted value is at least 1.
    """

    ideal: np.ndarray

    @classmethod
    def from_objectives(cls, F):
        return cls(np.min(np.atleast_2d(F), axis=0))

    def shift(self, F):
        return np.asarray(F, dtype=np.float64) - self.ideal + 1.0


def eps_dominates(fp, fq, eps, ctx: EpsContext | None = None) -> bool:
    """True iff q lies beyond the (1+eps)-inflated image of p.

    With ``ctx`` the vectors are raw objectives shifted through the context;
    without it they are taken as already shifted.
    """
    if eps < 0:
        raise ContractViolation("eps must be non-negative")
    fp = np.asarray(fp, dtype=np.float64)
    fq = np.asarray(fq, dtype=np.float64)
    if fp.shape != fq.shape:
        raise ContractViolation("objective vectors differ in length")
    if ctx is not None:
        fp, fq = ctx.shift(fp), ctx.shift(fq)
    scaled = (1.0 + eps) * fp
    return bool(np.all(scaled <= fq) and np.any(scaled < fq))


def eps_band_mask(F, front_idx, eps) -> np.ndarray:
    """Mask of rows of ``F`` not eps-dominated by any row in ``front_idx``."""
    if eps < 0:
        raise ContractViolation("eps must be non-negative")
    F = np.atleast_2d(np.asarray(F, dtype=np.float64))
    if F.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    S = EpsContext.from_objectives(F).shift(F)
    scaled = (1.0 + eps) * S[np.asarray(front_idx, dtype=np.int64)]
    # (front, joint, m) comparisons
    le = np.all(scaled[:, None, :] <= S[None, :, :], axis=2)
    lt = np.any(scaled[:, None, :] < S[None, :, :], axis=2)
    return ~np.any(le & lt, axis=0)


def eps_band_filter(F, front_idx, eps) -> np.ndarray:
    """Indices of the epsilon-approximate set: members outside every front member's band."""
    return np.flatnonzero(eps_band_mask(F, front_idx, eps))


def nd_sort(F) -> np.ndarray:
    """1-based non-domination front index per row."""
    F = np.atleast_2d(F)
    if F.shape[0] == 0:
        raise ContractViolation("cannot sort an empty population")
    return kernels.nd_ranks(kernels.dominance_matrix(F))


def spea2_fitness(F, dist=None) -> np.ndarray:
    """SPEA2 fitness: raw strength-based fitness plus k-th nearest neighbour density.

    ``k = floor(sqrt(n))``; values below 1 mark exactly the non-dominated rows.
    ``dist`` may pass a precomputed objective-space distance matrix.
    """
    F = np.atleast_2d(np.asarray(F, dtype=np.float64))
    n = F.shape[0]
    if n == 0:
        raise ContractViolation("cannot score an empty population")
    dom = kernels.dominance_matrix(F).astype(np.int64)
    strength = dom.sum(axis=1)
    raw = (strength[:, None] * dom).sum(axis=0)
    if n == 1:
        return raw + 0.5
    if dist is None:
        dist = kernels.pairwise_distances(F)
    k = min(int(np.floor(np.sqrt(n))), n - 1)
    # column 0 of each sorted row is the self distance
    sigma = np.sort(dist, axis=1)[:, k]
    return raw + 1.0 / (sigma + 2.0)
