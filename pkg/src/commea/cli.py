"""Command line entry point: ``commea {run,matrix,table,plotdata}``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import yaml

from . import harness
from .core import ContractViolation
from .records import RunRecord, atomic_write


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"{self.prog}: error: {message}\n")


def _default_jobs():
    try:
        return max(1, int(os.environ.get("COMMEA_JOBS", "1")))
    except ValueError:
        return 1


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        atomic_write(out, text)


def cmd_run(args):
    cfg = harness.build_config(args.problem, args.pop, args.evals, args.eps, args.seed, args.mode)
    record = harness.execute(cfg, trace=args.trace, trace_archives=args.trace_archives)
    out = args.out or f"{cfg.problem}__{cfg.mode.value}__s{cfg.seed}.json"
    harness.write_record(record, out)
    logging.info("wrote %s (%d FE, %.2fs)", out, record.fe_used, record.wall_time)
    return 0


def cmd_matrix(args):
    spec = yaml.safe_load(Path(args.config).read_text()) or {}
    if args.seeds is not None:
        spec["seeds"] = args.seeds
    done, failed = harness.run_matrix(spec, args.out, jobs=args.jobs, trace=args.trace)
    for cell, exc in failed:
        print(f"failed cell {cell.index} {cell.filename}: {exc}", file=sys.stderr)
    logging.info("%d cells completed, %d failed", len(done), len(failed))
    return 1 if failed else 0


def cmd_table(args):
    records = harness.load_records(args.records)
    if not records:
        raise ContractViolation(f"no records in {args.records}")
    rows = harness.rank_table(records)
    _emit(harness.to_csv(rows, harness.TABLE_COLUMNS), args.out)
    return 0


def cmd_plotdata(args):
    record = RunRecord.load(args.record)
    cols, rows = harness.plot_rows(record, args.kind)
    _emit(harness.to_csv(rows, cols), args.out)
    return 0


def build_parser():
    p = _Parser(prog="commea", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="execute one seeded run and write its JSON record")
    r.add_argument("--problem", required=True, help="problem id, e.g. dualdepth-d0.10")
    r.add_argument("--pop", type=int, help="population size N (default 100*D)")
    r.add_argument("--evals", type=int, help="function evaluation budget (default 5000*D)")
    r.add_argument("--eps", type=float, help="user epsilon (default 0.3 with local PSs, else 0.1)")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--mode", choices=["full", "ca-only"], default="full")
    r.add_argument("--trace", action="store_true", help="record per-generation eps/IGD/IGDX")
    r.add_argument("--trace-archives", action="store_true", help="also store archives per generation")
    r.add_argument("--out", help="record path")
    r.set_defaults(func=cmd_run)

    m = sub.add_parser("matrix", help="run problems x modes x seeds from a YAML/JSON config")
    m.add_argument("config")
    m.add_argument("--out", required=True, help="output directory")
    m.add_argument("--seeds", type=int, help="override replicates per cell (default 30)")
    m.add_argument("--jobs", type=int, default=_default_jobs(), help="parallel runs (env COMMEA_JOBS)")
    m.add_argument("--trace", action="store_true")
    m.set_defaults(func=cmd_matrix)

    t = sub.add_parser("table", help="IGD/IGDX means and mean ranks as CSV")
    t.add_argument("records", help="directory of run records")
    t.add_argument("--out", help="CSV path (default stdout)")
    t.set_defaults(func=cmd_table)

    d = sub.add_parser("plotdata", help="emit plot-ready CSV from a record")
    d.add_argument("record")
    d.add_argument("--kind", choices=harness.PLOT_KINDS, required=True)
    d.add_argument("--out", help="CSV path (default stdout)")
    d.set_defaults(func=cmd_plotdata)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ContractViolation, OSError, yaml.YAMLError, KeyError) as exc:
        print(f"commea {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
