"""Two-archive coevolutionary engine.

A convergence archive (CA) is updated by SPEA2-style environmental
selection; a diversity archive (DA) keeps the epsilon-approximate,
locally non-dominated solutions spread out in decision space. Both
archives breed separately and both are updated from the union of all
offspring.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import Archive, ContractViolation, Mode, Population, Problem, RunConfig, make_rng
from .dominance import eps_band_filter, nd_sort, spea2_fitness
from .metrics import ReferenceSet, igd, igdx
from .niching import (
    NeighborGraph,
    Space,
    crowd_distance,
    crowding,
    local_convergence_indicator,
    truncate_by_crowding,
)
from .records import RunRecord
from .variation import VariationParams, make_offspring, tournament_select

log = logging.getLogger(__name__)


@dataclass
class EpsSchedule:
    """Generation-indexed epsilon: ``max(log2(G / i), user_eps)``."""

    user_eps: float
    max_gen: int
    current_gen: int = 1

    @property
    def status(self) -> float:
        return self.current_gen / self.max_gen

    def at(self, i: int) -> float:
        if not 1 <= i <= self.max_gen:
            raise ContractViolation(f"generation {i} outside 1..{self.max_gen}")
        return max(math.log2(self.max_gen / i), self.user_eps)


def eps_at(schedule: EpsSchedule) -> float:
    return schedule.at(schedule.current_gen)


def _join(*parts):
    X = np.vstack([p.X for p in parts if len(p)])
    F = np.vstack([p.F for p in parts if len(p)])
    return X, F


def env_select_ca(ca: Archive, off_c: Population, off_d: Population, N: int):
    """SPEA2 environmental selection over CA and both offspring batches.

    Returns ``(archive, fitness, flags)``.
    """
    X, F = _join(ca, off_c, off_d)
    flags = []
    if len(X) <= N:
        if len(X) < N:
            flags.append("undersized_ca")
        keep = np.arange(len(X))
    else:
        fit = spea2_fitness(F)
        nd = np.flatnonzero(fit < 1)
        if len(nd) < N:
            crowd = crowding(F=F, space=Space.OBJECTIVE)[1]
            keep = np.lexsort((-crowd, fit))[:N]
        else:
            keep = nd[truncate_by_crowding(None, F[nd], N, Space.OBJECTIVE)]
    out = Archive(X[keep], F[keep], N)
    out.fitness = spea2_fitness(out.F)
    return out, out.fitness, flags


def env_select_da(da: Archive, off_c: Population, off_d: Population, N: int,
                  schedule: EpsSchedule, lower, upper):
    """Epsilon-band + local-convergence selection for the diversity archive.

    Returns ``(archive, fitness, flags)``; fitness is the decision-space
    ``CrowdDis`` of the new archive (larger is better for mating).
    """
    X, F = _join(da, off_c, off_d)
    span = np.asarray(upper) - np.asarray(lower)
    Xn = (X - lower) / span
    flags = []
    front = np.flatnonzero(nd_sort(F) == 1)
    eps_i = eps_at(schedule)
    band = eps_band_filter(F, front, eps_i)
    graph = NeighborGraph.build(Xn[band])
    ilc = local_convergence_indicator(F[band], graph)
    local = np.flatnonzero(ilc == 0)
    if len(band) < N:
        flags.append("undersized_eps_set")
        rest = np.setdiff1d(np.arange(len(X)), band)
        joint_ilc = local_convergence_indicator(F, NeighborGraph.build(Xn))
        rest = rest[np.argsort(joint_ilc[rest], kind="stable")]
        keep = np.concatenate([band, rest])[:N]
    elif len(local) < N:
        keep = band[np.argsort(ilc, kind="stable")[:N]]
    else:
        sub = band[local]
        keep = sub[truncate_by_crowding(Xn[sub], F[sub], N, Space.COMBINED)]
    out = Archive(X[keep], F[keep], N)
    out.fitness = crowd_distance(Xn[keep])
    return out, out.fitness, flags


@dataclass
class EngineState:
    ca: Archive
    da: Optional[Archive]
    schedule: EpsSchedule
    rng: np.random.Generator
    fe_used: int = 0
    generation: int = 0
    trace: list = field(default_factory=list)
    flags: list = field(default_factory=list)


def _random_archive(problem, N, rng):
    X = rng.uniform(problem.lower, problem.upper, size=(N, problem.n_var))
    return Archive(X, problem.evaluate_many(X), N)


def _metrics(problem, X, F, reference):
    if reference is None:
        return {}
    return {
        "igd": igd(F, reference),
        "igdx": igdx(X, reference, problem.lower, problem.upper),
    }


def _flag(flags, name):
    if name not in flags:
        flags.append(name)


def run(config: RunConfig, problem: Problem, reference: ReferenceSet | None = None,
        trace: bool = False, trace_archives: bool = False) -> RunRecord:
    """Execute one seeded run and return its record.

    The answer set is the final DA; with ``mode=ca_only`` the DA is
    disabled and both parent pools are drawn from CA. ``reference`` enables
    IGD/IGDX (decision space normalized by the problem bounds).
    """
    t0 = time.perf_counter()
    N, budget = config.N, config.max_fe
    full = config.mode is Mode.FULL
    params = VariationParams(config.sbx_eta, config.pm_eta, config.sbx_rate, config.pm_rate)
    rng = make_rng(config.seed)
    start = problem.n_evals
    ca = _random_archive(problem, N, rng)
    da = _random_archive(problem, N, rng)
    ca.fitness = spea2_fitness(ca.F)
    lo, hi = problem.lower, problem.upper
    da.fitness = crowd_distance(problem.normalize(da.X))
    G = config.generations
    state = EngineState(ca, da if full else None, EpsSchedule(config.epsilon, max(G, 1)), rng,
                        fe_used=problem.n_evals - start)
    if G < 1:
        _flag(state.flags, "budget_too_small")

    while G >= 1 and state.fe_used < budget:
        state.generation += 1
        state.schedule.current_gen = min(state.generation, G)
        pc = tournament_select(state.ca.fitness, N // 2, rng, "smaller")
        if full:
            pd = tournament_select(state.da.fitness, N, rng, "larger")
            parents_d = state.da.X[pd]
        else:
            pd = tournament_select(state.ca.fitness, N, rng, "smaller")
            parents_d = state.ca.X[pd]
        off_c = make_offspring(state.ca.X[pc], params, problem, rng, budget - state.fe_used)
        state.fe_used = problem.n_evals - start
        off_d = make_offspring(parents_d, params, problem, rng, budget - state.fe_used)
        state.fe_used = problem.n_evals - start

        state.ca, _, fl = env_select_ca(state.ca, off_c, off_d, N)
        for f in fl:
            _flag(state.flags, f)
        if full:
            state.da, _, fl = env_select_da(state.da, off_c, off_d, N, state.schedule, lo, hi)
            for f in fl:
                _flag(state.flags, f)

        if trace:
            ans = state.da if full else state.ca
            snap = {"generation": state.generation, "eps": eps_at(state.schedule),
                    "fe": state.fe_used}
            snap.update(_metrics(problem, ans.X, ans.F, reference))
            if trace_archives:
                snap.update({"ca_X": state.ca.X.copy(), "ca_F": state.ca.F.copy()})
                if full:
                    snap.update({"da_X": state.da.X.copy(), "da_F": state.da.F.copy()})
            state.trace.append(snap)
        if off_c.meta["exhausted"] or off_d.meta["exhausted"]:
            break

    ans = state.da if full else state.ca
    record = RunRecord(
        config=config,
        problem_id=getattr(problem, "id", problem.name),
        ca_X=state.ca.X,
        ca_F=state.ca.F,
        da_X=state.da.X if full else None,
        da_F=state.da.F if full else None,
        fe_used=state.fe_used,
        generations=state.generation,
        metrics=_metrics(problem, ans.X, ans.F, reference),
        trace=state.trace if trace else None,
        flags=state.flags,
        wall_time=time.perf_counter() - t0,
    )
    log.debug("run %s seed=%d: %d FE, %d generations", record.problem_id, config.seed,
              record.fe_used, record.generations)
    return record
