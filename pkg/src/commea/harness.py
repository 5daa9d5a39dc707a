"""Experiment plumbing shared by the CLI: configs, matrices, tables, plot data."""

from __future__ import annotations

import csv
import io
import itertools
import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .coevolution import EpsSchedule, run
from .core import ContractViolation, Mode, RunConfig
from .metrics import mean_ranks
from .problems import default_epsilon, make_problem, sample_reference
from .records import RunRecord, atomic_write

log = logging.getLogger(__name__)

REFERENCE_SIZE = 500
TABLE_COLUMNS = ["problem", "mode", "metric", "mean", "std", "rank"]
METRICS = ("igd", "igdx")


def build_config(problem_id, pop=None, evals=None, eps=None, seed=0, mode="full", **variation):
    """RunConfig with the usual defaults: N = 100 D, budget = 5000 D, epsilon per problem."""
    problem = make_problem(problem_id)
    D = problem.n_var
    return RunConfig(
        problem=problem.id,
        N=100 * D if pop is None else pop,
        max_fe=5000 * D if evals is None else evals,
        epsilon=default_epsilon(problem) if eps is None else eps,
        seed=seed,
        mode=mode,
        **variation,
    )


def reference_for(problem, epsilon, K=REFERENCE_SIZE):
    """Global reference sample, plus local branches when epsilon > 0 and they exist."""
    which = "global_and_local" if epsilon > 0 and problem.has_local else "global"
    return sample_reference(problem, K, which)


def execute(config: RunConfig, trace=False, trace_archives=False, labels=None) -> RunRecord:
    problem = make_problem(config.problem)
    record = run(config, problem, reference_for(problem, config.epsilon), trace=trace,
                 trace_archives=trace_archives)
    if labels:
        record.labels = dict(labels)
    return record


def write_record(record: RunRecord, path):
    path = Path(path)
    record.save(path)
    timing = path.with_name(path.stem + ".timing.json")
    atomic_write(timing, '{"wall_time": %r}\n' % record.wall_time)


@dataclass
class Cell:
    index: int
    problem: str
    mode: str
    replicate: int
    config: RunConfig

    @property
    def filename(self):
        return f"{self.problem}__{self.mode}__r{self.replicate:03d}.json"


def matrix_cells(spec: dict) -> list[Cell]:
    """Expand a matrix description into cells; cell seed = base_seed + cell index.

    Keys: ``problems`` (list, required), ``modes`` (default ``[full]``),
    ``seeds`` (replicates per problem and mode, default 30), ``base_seed``
    (default 0), and optional ``pop``, ``evals``, ``eps``.
    """
    if not spec.get("problems"):
        raise ContractViolation("matrix config needs a non-empty 'problems' list")
    modes = [Mode.parse(m).value for m in spec.get("modes", ["full"])]
    seeds = int(spec.get("seeds", 30))
    base = int(spec.get("base_seed", 0))
    cells = []
    for idx, (pid, mode, rep) in enumerate(itertools.product(spec["problems"], modes, range(seeds))):
        cfg = build_config(pid, spec.get("pop"), spec.get("evals"), spec.get("eps"), base + idx, mode)
        cells.append(Cell(idx, cfg.problem, mode, rep, cfg))
    return cells


def _run_cell(args):
    cell, out_dir, trace = args
    record = execute(cell.config, trace=trace,
                     labels={"cell": cell.index, "replicate": cell.replicate})
    write_record(record, Path(out_dir) / cell.filename)
    return cell.index


def run_matrix(spec: dict, out_dir, jobs=1, trace=False):
    """Run every cell; returns ``(completed, failed)`` lists of (cell, error) pairs."""
    cells = matrix_cells(spec)
    trace = bool(spec.get("trace", trace))
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    done, failed = [], []
    work = [(c, str(out_dir), trace) for c in cells]
    if jobs <= 1:
        for item in work:
            try:
                _run_cell(item)
                done.append(item[0])
            except Exception as exc:  # keep the remaining cells running
                failed.append((item[0], exc))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [(item[0], pool.submit(_run_cell, item)) for item in work]
            for cell, fut in futures:
                try:
                    fut.result()
                    done.append(cell)
                except Exception as exc:
                    failed.append((cell, exc))
    return done, failed


def load_records(directory) -> list[RunRecord]:
    paths = sorted(p for p in Path(directory).glob("*.json") if not p.name.endswith(".timing.json"))
    return [RunRecord.load(p) for p in paths]


def _replicate_keys(records):
    """(problem, mode) -> {replicate: record}; unlabeled records are ordered by seed."""
    groups = defaultdict(list)
    for r in records:
        groups[(r.problem_id, r.config.mode.value)].append(r)
    out = {}
    for key, rs in groups.items():
        if all("replicate" in r.labels for r in rs):
            out[key] = {r.labels["replicate"]: r for r in rs}
        else:
            out[key] = {i: r for i, r in enumerate(sorted(rs, key=lambda r: r.config.seed))}
    return out


def missing_cells(records) -> list[str]:
    groups = _replicate_keys(records)
    problems = sorted({p for p, _ in groups})
    modes = sorted({m for _, m in groups})
    reps = sorted({r for g in groups.values() for r in g})
    missing = []
    for p, m, r in itertools.product(problems, modes, reps):
        if r not in groups.get((p, m), {}):
            missing.append(f"{p}/{m}/r{r}")
    return missing


def rank_table(records) -> list[dict]:
    """Per (problem, mode, metric): mean, std and mean rank over replicate blocks.

    Within each problem every replicate index is a block in which the modes
    are ranked (ties share the average rank). Rows with ``problem = ALL``
    carry the mean rank across problems.
    """
    missing = missing_cells(records)
    if missing:
        raise ContractViolation("ragged matrix, missing cells: " + ", ".join(missing))
    groups = _replicate_keys(records)
    problems = sorted({p for p, _ in groups})
    modes = sorted({m for _, m in groups})
    reps = sorted({r for g in groups.values() for r in g})
    rows = []
    for metric in METRICS:
        per_problem = np.zeros((len(modes), len(problems)))
        for j, p in enumerate(problems):
            vals = np.array([[groups[(p, m)][r].metrics.get(metric, np.nan) for r in reps] for m in modes])
            ranks = mean_ranks(vals).ranks  # (modes, replicates)
            per_problem[:, j] = ranks.mean(axis=1)
            for i, m in enumerate(modes):
                std = float(np.std(vals[i], ddof=1)) if len(reps) > 1 else 0.0
                rows.append({"problem": p, "mode": m, "metric": metric, "mean": float(vals[i].mean()),
                             "std": std, "rank": float(per_problem[i, j])})
        overall = per_problem.mean(axis=1)
        for i, m in enumerate(modes):
            rows.append({"problem": "ALL", "mode": m, "metric": metric, "mean": "", "std": "",
                         "rank": float(overall[i])})
    return rows


def to_csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


PLOT_KINDS = ("eps_curve", "trace_metrics", "scatter_decision", "scatter_objective")


def plot_rows(record: RunRecord, kind: str):
    """``(columns, rows)`` of plot-ready data for one record."""
    if kind == "eps_curve":
        G = record.config.generations
        if G < 1:
            raise ContractViolation("record has no generations")
        sched = EpsSchedule(record.config.epsilon, G)
        rows = [{"generation": i, "stage": i / G, "eps": sched.at(i)} for i in range(1, G + 1)]
        return ["generation", "stage", "eps"], rows
    if kind == "trace_metrics":
        if not record.trace:
            raise ContractViolation("record has no trace (rerun with --trace)")
        if "igdx" not in record.trace[0]:
            raise ContractViolation("trace has no metrics")
        rows = [{"generation": s["generation"], "igd": s["igd"], "igdx": s["igdx"]} for s in record.trace]
        return ["generation", "igd", "igdx"], rows
    if kind in ("scatter_decision", "scatter_objective"):
        M = record.answer_X if kind == "scatter_decision" else record.answer_F
        prefix = "x" if kind == "scatter_decision" else "f"
        cols = [f"{prefix}{k + 1}" for k in range(M.shape[1])]
        return cols, [dict(zip(cols, map(float, row))) for row in M]
    raise ContractViolation(f"unknown plot kind {kind!r}")
