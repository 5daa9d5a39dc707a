"""Shared domain types: solutions, archives, problems, run configuration, RNG."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np


class ContractViolation(ValueError):
    """Raised when an operation is called outside its precondition."""


class Mode(str, enum.Enum):
    FULL = "full"
    CA_ONLY = "ca_only"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).replace("-", "_"))
        except ValueError:
            raise ContractViolation(f"unknown mode {value!r}") from None


def make_rng(seed: int) -> np.random.Generator:
    """Deterministic random stream (numpy PCG64) seeded from a 64-bit unsigned int."""
    if not 0 <= int(seed) < 2**64:
        raise ContractViolation(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(int(seed)))


@dataclass(frozen=True)
class Solution:
    """A decision vector with its cached objective vector."""

    x: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=np.float64))
        object.__setattr__(self, "f", np.asarray(self.f, dtype=np.float64))


@dataclass
class Archive:
    """Bounded population stored column-wise: decision matrix ``X``, objectives ``F``."""

    X: np.ndarray
    F: np.ndarray
    capacity: int
    fitness: Optional[np.ndarray] = None

    def __post_init__(self):
        self.X = np.atleast_2d(np.asarray(self.X, dtype=np.float64))
        self.F = np.atleast_2d(np.asarray(self.F, dtype=np.float64))
        if self.X.shape[0] != self.F.shape[0]:
            raise ContractViolation("X and F row counts differ")
        if self.fitness is not None and len(self.fitness) != len(self.X):
            raise ContractViolation("fitness is not aligned with members")

    def __len__(self):
        return self.X.shape[0]

    @property
    def members(self) -> list[Solution]:
        return [Solution(x, f) for x, f in zip(self.X, self.F)]

    @classmethod
    def from_solutions(cls, sols, capacity):
        X = np.array([s.x for s in sols])
        F = np.array([s.f for s in sols])
        return cls(X, F, capacity)


class Problem:
    """Box-bounded objective map with a function-evaluation counter.

    Subclasses implement ``_objectives`` on a 2-D array of decision vectors
    and ``_reference`` returning reference Pareto-set samples.
    """

    name = "problem"
    has_local = False

    def __init__(self, lower, upper, n_obj):
        self.lower = np.asarray(lower, dtype=np.float64)
        self.upper = np.asarray(upper, dtype=np.float64)
        if self.lower.shape != self.upper.shape or not np.all(self.lower < self.upper):
            raise ContractViolation("bounds must satisfy lower < upper elementwise")
        self.n_var = self.lower.size
        self.n_obj = int(n_obj)
        self.n_evals = 0

    def _objectives(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _check(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.n_var:
            raise ContractViolation(f"{self.name}: expected decision vectors of length {self.n_var}")
        if np.any(X < self.lower) or np.any(X > self.upper) or not np.all(np.isfinite(X)):
            raise ContractViolation(f"{self.name}: decision vector outside the box bounds")
        return X

    def evaluate(self, x) -> np.ndarray:
        """Objective vector of one decision vector; counts one evaluation."""
        return self.evaluate_many(np.asarray(x, dtype=np.float64)[None, :])[0]

    def evaluate_many(self, X) -> np.ndarray:
        X = self._check(X)
        F = self._objectives(X)
        self.n_evals += X.shape[0]
        return F

    def normalize(self, X) -> np.ndarray:
        return (np.asarray(X) - self.lower) / (self.upper - self.lower)

    def sample_ps(self, K, which="global"):
        """``(X, is_local)`` for K reference Pareto-optimal decision vectors."""
        raise NotImplementedError

    def sample_pf(self, K, which="global"):
        X, _ = self.sample_ps(K, which)
        return self._objectives(X)


def clamp_to_bounds(problem: Problem, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != problem.n_var:
        raise ContractViolation("wrong decision vector length")
    return np.clip(x, problem.lower, problem.upper)


@dataclass
class RunConfig:
    problem: str
    N: int = 100
    max_fe: int = 10000
    epsilon: float = 0.1
    seed: int = 0
    mode: Mode = Mode.FULL
    sbx_eta: float = 20.0
    pm_eta: float = 20.0
    sbx_rate: float = 1.0
    pm_rate: Optional[float] = None  # None means 1/D

    def __post_init__(self):
        self.mode = Mode.parse(self.mode)
        self.N = int(self.N)
        self.max_fe = int(self.max_fe)
        self.seed = int(self.seed)
        self.epsilon = float(self.epsilon)
        if self.N < 4 or self.N % 2:
            raise ContractViolation(f"population size must be even and >= 4, got {self.N}")
        if self.max_fe < 2 * self.N:
            raise ContractViolation(f"max_fe must be at least 2N = {2 * self.N}")
        if self.epsilon < 0:
            raise ContractViolation("epsilon must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ContractViolation("seed must be a 64-bit unsigned integer")
        if self.sbx_eta <= 0 or self.pm_eta <= 0:
            raise ContractViolation("distribution indices must be positive")
        if not 0 <= self.sbx_rate <= 1 or (self.pm_rate is not None and not 0 <= self.pm_rate <= 1):
            raise ContractViolation("rates must lie in [0, 1]")

    @property
    def generations(self) -> int:
        """Full generations the budget affords after initialization."""
        return (self.max_fe - 2 * self.N) // (3 * self.N // 2)

    def to_dict(self):
        d = asdict(self)
        d["mode"] = self.mode.value
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


@dataclass
class Population:
    """Plain (X, F) pair used for offspring batches."""

    X: np.ndarray
    F: np.ndarray
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return self.X.shape[0]
