"""Two-archive coevolutionary search for global and epsilon-acceptable local Pareto sets."""

from ._ext import BACKEND
from .coevolution import EpsSchedule, env_select_ca, env_select_da, eps_at, run
from .core import Archive, ContractViolation, Mode, Problem, RunConfig, Solution, clamp_to_bounds, make_rng
from .metrics import ReferenceSet, igd, igdx, mean_ranks
from .problems import DualDepth, Polygon, SineMirror, make_problem, sample_reference
from .records import RunRecord

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Archive",
    "ContractViolation",
    "DualDepth",
    "EpsSchedule",
    "Mode",
    "Polygon",
    "Problem",
    "ReferenceSet",
    "RunConfig",
    "RunRecord",
    "SineMirror",
    "Solution",
    "clamp_to_bounds",
    "env_select_ca",
    "env_select_da",
    "eps_at",
    "igd",
    "igdx",
    "make_problem",
    "make_rng",
    "mean_ranks",
    "run",
    "sample_reference",
]
