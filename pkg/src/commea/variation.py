"""Binary tournament selection, SBX crossover and polynomial mutation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import ContractViolation, Population


@dataclass(frozen=True)
class VariationParams:
    sbx_eta: float = 20.0
    pm_eta: float = 20.0
    sbx_rate: float = 1.0
    pm_rate: Optional[float] = None  # None -> 1/D

    def __post_init__(self):
        if self.sbx_eta <= 0 or self.pm_eta <= 0:
            raise ContractViolation("distribution indices must be positive")
        for r in (self.sbx_rate, self.pm_rate):
            if r is not None and not 0.0 <= r <= 1.0:
                raise ContractViolation("rates must lie in [0, 1]")

    def mutation_rate(self, n_var):
        return 1.0 / n_var if self.pm_rate is None else self.pm_rate


def tournament_select(fitness, k, rng, better="smaller") -> np.ndarray:
    """Indices of ``k`` winners of size-2 tournaments drawn with replacement.

    Ties are decided by a fair coin. Every tournament consumes the same
    number of draws, so the stream position depends only on ``k``.
    """
    fitness = np.asarray(fitness, dtype=np.float64)
    n = fitness.size
    if n == 0:
        raise ContractViolation("tournament over an empty population")
    if k == 0:
        return np.zeros(0, dtype=np.int64)
    pairs = rng.integers(0, n, size=(k, 2))
    coin = rng.random(k) < 0.5
    a, b = fitness[pairs[:, 0]], fitness[pairs[:, 1]]
    if better == "smaller":
        first = a < b
    elif better == "larger":
        first = a > b
    else:
        raise ContractViolation(f"unknown direction {better!r}")
    first |= (a == b) & coin
    return np.where(first, pairs[:, 0], pairs[:, 1])


def sbx_spread(u, eta):
    """Spread factor beta for uniform draws ``u`` in [0, 1)."""
    u = np.asarray(u, dtype=np.float64)
    e = 1.0 / (eta + 1.0)
    return np.where(u <= 0.5, (2.0 * u) ** e, (1.0 / (2.0 - 2.0 * u)) ** e)


def sbx_crossover(PA, PB, params: VariationParams, lower, upper, rng):
    """Simulated binary crossover on row-aligned parent matrices.

    Each pair crosses with probability ``sbx_rate``; within a crossing pair each
    variable is recombined with probability 1/2.
    """
    PA = np.atleast_2d(np.asarray(PA, dtype=np.float64))
    PB = np.atleast_2d(np.asarray(PB, dtype=np.float64))
    if PA.shape != PB.shape:
        raise ContractViolation("parents differ in shape")
    n, d = PA.shape
    beta = sbx_spread(rng.random((n, d)), params.sbx_eta)
    beta[rng.random((n, d)) < 0.5] = 1.0
    beta[rng.random(n) >= params.sbx_rate] = 1.0
    mean = 0.5 * (PA + PB)
    half = 0.5 * beta * (PA - PB)
    C1 = np.clip(mean + half, lower, upper)
    C2 = np.clip(mean - half, lower, upper)
    return C1, C2


def polynomial_mutation(X, params: VariationParams, lower, upper, rng):
    """Bounded polynomial mutation; each variable mutates with ``pm_rate``."""
    X = np.atleast_2d(np.array(X, dtype=np.float64))
    n, d = X.shape
    lower = np.broadcast_to(np.asarray(lower, dtype=np.float64), (n, d))
    upper = np.broadcast_to(np.asarray(upper, dtype=np.float64), (n, d))
    span = upper - lower
    site = rng.random((n, d)) < params.mutation_rate(d)
    mu = rng.random((n, d))
    eta = params.pm_eta
    e = 1.0 / (eta + 1.0)
    lo_side = site & (mu < 0.5)
    hi_side = site & (mu >= 0.5)
    delta = np.zeros((n, d))
    d1 = (X - lower) / span
    d2 = (upper - X) / span
    delta[lo_side] = (
        2.0 * mu[lo_side] + (1.0 - 2.0 * mu[lo_side]) * (1.0 - d1[lo_side]) ** (eta + 1.0)
    ) ** e - 1.0
    delta[hi_side] = 1.0 - (
        2.0 * (1.0 - mu[hi_side]) + 2.0 * (mu[hi_side] - 0.5) * (1.0 - d2[hi_side]) ** (eta + 1.0)
    ) ** e
    out = X.copy()
    out[site] = X[site] + delta[site] * span[site]
    return np.clip(out, lower, upper)


def make_offspring(parents_X, params: VariationParams, problem, rng, budget=None):
    """SBX on consecutive parent pairs, then PM; evaluates the children.

    An odd trailing parent is only mutated. With ``budget`` (evaluations left)
    smaller than the batch, only the first ``budget`` children are evaluated and
    ``Population.meta["exhausted"]`` is set.
    """
    P = np.atleast_2d(np.asarray(parents_X, dtype=np.float64))
    n = P.shape[0]
    if n < 2:
        raise ContractViolation("need at least two parents")
    half = n // 2
    C1, C2 = sbx_crossover(P[0:2 * half:2], P[1:2 * half:2], params, problem.lower, problem.upper, rng)
    children = np.empty_like(P)
    children[0:2 * half:2] = C1
    children[1:2 * half:2] = C2
    if n % 2:
        children[-1] = P[-1]
    children = polynomial_mutation(children, params, problem.lower, problem.upper, rng)
    exhausted = False
    if budget is not None and budget < n:
        children = children[: max(int(budget), 0)]
        exhausted = True
    F = problem.evaluate_many(children) if len(children) else np.zeros((0, problem.n_obj))
    return Population(children, F, {"exhausted": exhausted})
