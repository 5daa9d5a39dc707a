"""RunRecord: the persisted, replayable result of one seeded run.

Records are JSON documents with a ``schema_version`` of the form
``MAJOR.MINOR``; readers reject other major versions. Wall-clock time is
kept out of the record (it would break byte-identical replays) and is
written to a ``.timing.json`` sidecar by the CLI instead.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .core import ContractViolation, RunConfig

SCHEMA_VERSION = "1.0"
SCHEMA_MAJOR = 1


def _mat(a):
    return None if a is None else np.asarray(a, dtype=np.float64).tolist()


def _arr(a):
    return None if a is None else np.asarray(a, dtype=np.float64)


@dataclass
class RunRecord:
    config: RunConfig
    problem_id: str
    ca_X: np.ndarray
    ca_F: np.ndarray
    da_X: Optional[np.ndarray] = None
    da_F: Optional[np.ndarray] = None
    fe_used: int = 0
    generations: int = 0
    metrics: dict = field(default_factory=dict)
    trace: Optional[list] = None
    flags: list = field(default_factory=list)
    labels: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ablation(self) -> bool:
        return self.da_X is None

    @property
    def answer_X(self):
        """Decision vectors of the reported answer set (DA, or CA for the ablation)."""
        return self.ca_X if self.ablation else self.da_X

    @property
    def answer_F(self):
        return self.ca_F if self.ablation else self.da_F

    def to_dict(self):
        trace = None
        if self.trace is not None:
            trace = []
            for snap in self.trace:
                trace.append({k: (_mat(v) if isinstance(v, np.ndarray) else v) for k, v in snap.items()})
        d = {
            "schema_version": SCHEMA_VERSION,
            "problem": self.problem_id,
            "config": self.config.to_dict(),
            "ablation": self.ablation,
            "fe_used": self.fe_used,
            "generations": self.generations,
            "flags": list(self.flags),
            "labels": dict(self.labels),
            "metrics": dict(self.metrics),
            "ca": {"X": _mat(self.ca_X), "F": _mat(self.ca_F)},
            "trace": trace,
        }
        if not self.ablation:
            d["da"] = {"X": _mat(self.da_X), "F": _mat(self.da_F)}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, allow_nan=True) + "\n"

    @classmethod
    def from_dict(cls, d):
        version = str(d.get("schema_version", ""))
        try:
            major = int(version.split(".")[0])
        except ValueError:
            raise ContractViolation(f"record has no valid schema_version: {version!r}") from None
        if major != SCHEMA_MAJOR:
            raise ContractViolation(f"unsupported record schema version {version}")
        da = d.get("da")
        trace = d.get("trace")
        if trace is not None:
            trace = [
                {k: (np.asarray(v) if isinstance(v, list) else v) for k, v in snap.items()} for snap in trace
            ]
        return cls(
            config=RunConfig.from_dict(d["config"]),
            problem_id=d["problem"],
            ca_X=_arr(d["ca"]["X"]),
            ca_F=_arr(d["ca"]["F"]),
            da_X=_arr(da["X"]) if da else None,
            da_F=_arr(da["F"]) if da else None,
            fe_used=d["fe_used"],
            generations=d["generations"],
            metrics=d.get("metrics", {}),
            trace=trace,
            flags=d.get("flags", []),
            labels=d.get("labels", {}),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def save(self, path):
        atomic_write(path, self.to_json())

    @classmethod
    def load(cls, path):
        return cls.from_json(Path(path).read_text())


def atomic_write(path, text):
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
