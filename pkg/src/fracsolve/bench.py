"""Benchmark harness: strategy comparison sweeps with CSV and table output.

Runs the Newton driver over a cartesian sweep of globalization strategy,
model preset, dilation angle, mesh size, characteristic displacement and
seed, recording iteration counts the way the comparison figures report them
(``NC`` for runs that hit the iteration cap, ``Div`` for diverged runs).
Sweeps are embarrassingly parallel; rows are sorted by their coordinates so
output is deterministic regardless of execution order.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import json
import math
import os
import sys
import time
from dataclasses import dataclass

from .linesearch import Strategy
from .models import PRESET_NAMES, preset
from .newton import ConvergenceCriterion, CriterionKind, NewtonOptions, SolveStatus, solve

__all__ = [
    "SweepSpec",
    "ResultRow",
    "run_sweep",
    "emit_csv",
    "parse_csv",
    "emit_table",
    "main",
]

CSV_SCHEMA_COMMENT = "# fracsolve sweep schema v1"
CSV_HEADER = "strategy,model,physics,phi,cells,u_c,seed,status,iterations,final_norm,ls_evals,tightenings"

ALL_STRATEGIES = tuple(s.value for s in Strategy)
DEFAULT_U_C_SWEEP = (1e-4, 1e-3, 1e-2, 1e-1, 1.0)


@dataclass(frozen=True)
class SweepSpec:
    """Cartesian sweep definition; every cell yields exactly one row."""

    strategies: tuple[str, ...] = ALL_STRATEGIES
    models: tuple[str, ...] = ("single-pm", "single-tpm")
    phi_values: tuple[float, ...] = (0.1, 0.2)
    cells_values: tuple[int, ...] = (6, 12)
    u_c_values: tuple[float, ...] = DEFAULT_U_C_SWEEP
    seeds: tuple[int, ...] = (0,)
    criterion: str = "auto"   # auto: increment for single-*, residual for multi-*
    max_iterations: int = 100
    output_path: str = "sweep.csv"

    def __post_init__(self):
        for name, axis in (("strategies", self.strategies), ("models", self.models),
                           ("phi_values", self.phi_values), ("cells_values", self.cells_values),
                           ("u_c_values", self.u_c_values), ("seeds", self.seeds)):
            if len(axis) == 0:
                raise ValueError(f"sweep axis {name} is empty")
        for s in self.strategies:
            Strategy(s)  # raises on unknown names
        for m in self.models:
            if m not in PRESET_NAMES:
                raise ValueError(f"unknown model preset {m!r}")
        if self.criterion not in ("auto", "increment", "residual"):
            raise ValueError(f"unknown criterion {self.criterion!r}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")

    def cells(self) -> list[tuple]:
        out = []
        for strategy in self.strategies:
            for model in self.models:
                for phi in self.phi_values:
                    for size in self.cells_values:
                        for u_c in self.u_c_values:
                            for seed in self.seeds:
                                out.append((strategy, model, phi, size, u_c, seed,
                                            self.criterion, self.max_iterations))
        return out


@dataclass(frozen=True)
class ResultRow:
    strategy: str
    model: str
    physics: str
    phi: float
    cells: int
    u_c: float
    seed: int
    status: str
    iterations: int
    final_norm: float
    ls_evals: int
    tightenings: int
    wall_time: float = dataclasses.field(default=0.0, compare=False)

    def sort_key(self):
        return (self.strategy, self.model, self.physics, self.phi, self.cells,
                self.u_c, self.seed)


def resolve_criterion(model_name: str, choice: str) -> ConvergenceCriterion:
    """Increment criterion for single-fracture presets, residual for multi."""
    if choice == "increment":
        kind = CriterionKind.INCREMENT
    elif choice == "residual":
        kind = CriterionKind.RESIDUAL
    else:
        kind = CriterionKind.RESIDUAL if model_name.startswith("multi") else CriterionKind.INCREMENT
    return ConvergenceCriterion(kind=kind)


def solve_cell(cell: tuple) -> ResultRow:
    """Construct the model for one sweep cell and run the solver."""
    strategy, model_name, phi, size, u_c, seed, criterion, max_iterations = cell
    model = preset(model_name, dilation_angle=phi, characteristic_displacement=u_c,
                   cells_per_side=size, seed=seed)
    options = NewtonOptions(
        max_iterations=max_iterations,
        criterion=resolve_criterion(model_name, criterion),
        line_search=Strategy(strategy),
    )
    started = time.perf_counter()
    report = solve(model, options=options)
    elapsed = time.perf_counter() - started

    final_norm = float(report.final_norm)
    if math.isnan(final_norm):
        final_norm = math.inf
    return ResultRow(
        strategy=strategy,
        model=model_name,
        physics=model.physics.value,
        phi=phi,
        cells=model.cells_per_side,
        u_c=u_c,
        seed=seed,
        status=report.status.value,
        iterations=report.iterations,
        final_norm=final_norm,
        ls_evals=report.ls_evaluations,
        tightenings=report.tightening_rounds,
        wall_time=elapsed,
    )


def run_sweep(spec: SweepSpec, workers: int | None = None) -> list[ResultRow]:
    """Run every sweep cell, possibly in parallel, and sort the rows."""
    cells = spec.cells()
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(cells) == 1:
        rows = [solve_cell(cell) for cell in cells]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(solve_cell, cells))
    rows.sort(key=ResultRow.sort_key)
    return rows


def emit_csv(rows: list[ResultRow], path: str) -> None:
    if not rows:
        raise ValueError("no rows to emit")
    lines = [CSV_SCHEMA_COMMENT, CSV_HEADER]
    for r in rows:
        lines.append(",".join([
            r.strategy, r.model, r.physics, repr(r.phi), str(r.cells), repr(r.u_c),
            str(r.seed), r.status, str(r.iterations), repr(r.final_norm),
            str(r.ls_evals), str(r.tightenings),
        ]))
    with open(path, "w") as handle:
        handle.write("\n".join(lines) + "\n")


def parse_csv(path: str) -> list[ResultRow]:
    rows = []
    with open(path) as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#") or line == CSV_HEADER:
                continue
            parts = line.split(",")
            if len(parts) != 12:
                raise ValueError(f"malformed row: {line!r}")
            rows.append(ResultRow(
                strategy=parts[0], model=parts[1], physics=parts[2],
                phi=float(parts[3]), cells=int(parts[4]), u_c=float(parts[5]),
                seed=int(parts[6]), status=parts[7], iterations=int(parts[8]),
                final_norm=float(parts[9]), ls_evals=int(parts[10]),
                tightenings=int(parts[11]),
            ))
    return rows


def _cell_text(row: ResultRow) -> str:
    if row.status == SolveStatus.CONVERGED.value:
        return str(row.iterations)
    return row.status  # NC or Div


def emit_table(rows: list[ResultRow]) -> str:
    """Aligned text tables, one block per (model, phi, cells, seed) group.

    Within a block: one line per strategy, one column per characteristic
    displacement, iteration counts in the cells (NC/Div for failed runs).
    """
    if not rows:
        raise ValueError("no rows to tabulate")
    groups: dict[tuple, dict[tuple, ResultRow]] = {}
    for r in rows:
        key = (r.model, r.phi, r.cells, r.seed)
        groups.setdefault(key, {})[(r.strategy, r.u_c)] = r

    out = []
    for key in sorted(groups):
        model, phi, cells, seed = key
        table = groups[key]
        u_cs = sorted({u for (_, u) in table})
        strategies = sorted({s for (s, _) in table})
        out.append(f"model={model} phi={phi:g} cells={cells} seed={seed}")
        header = ["strategy".ljust(20)] + [f"u_c={u:g}".rjust(10) for u in u_cs]
        out.append("  ".join(header))
        for strategy in strategies:
            line = [strategy.ljust(20)]
            for u in u_cs:
                row = table.get((strategy, u))
                line.append(("-" if row is None else _cell_text(row)).rjust(10))
            out.append("  ".join(line))
        out.append("")
    return "\n".join(out)


def _spec_from_config(path: str) -> dict:
    with open(path) as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    allowed = {f.name for f in dataclasses.fields(SweepSpec)}
    unknown = set(data) - allowed
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for key in ("strategies", "models", "phi_values", "cells_values", "u_c_values", "seeds"):
        if key in data:
            data[key] = tuple(data[key])
    return data


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracsolve-bench",
        description="Run globalization-strategy comparison sweeps on the fracture models.",
    )
    parser.add_argument("--config", help="JSON file with SweepSpec fields")
    parser.add_argument("--strategy", nargs="+", metavar="NAME",
                        help=f"strategies to run (default: all of {', '.join(ALL_STRATEGIES)})")
    parser.add_argument("--model", nargs="+", metavar="PRESET",
                        help=f"model presets (choices: {', '.join(PRESET_NAMES)})")
    parser.add_argument("--phi", nargs="+", type=float, help="dilation angles")
    parser.add_argument("--cells", nargs="+", type=int, help="cells per side (single-fracture presets)")
    parser.add_argument("--uc", nargs="+", type=float, help="characteristic displacements")
    parser.add_argument("--seed", nargs="+", type=int, help="seeds (multi-fracture presets)")
    parser.add_argument("--criterion", choices=("auto", "increment", "residual"), default=None)
    parser.add_argument("--max-iter", type=int, default=None)
    parser.add_argument("--out", default=None, help="CSV output path (default sweep.csv)")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: available parallelism)")
    parser.add_argument("--no-table", action="store_true", help="skip the text table")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        fields: dict = {}
        if args.config:
            fields.update(_spec_from_config(args.config))
        if args.strategy:
            fields["strategies"] = tuple(args.strategy)
        if args.model:
            fields["models"] = tuple(args.model)
        if args.phi:
            fields["phi_values"] = tuple(args.phi)
        if args.cells:
            fields["cells_values"] = tuple(args.cells)
        if args.uc:
            fields["u_c_values"] = tuple(args.uc)
        if args.seed:
            fields["seeds"] = tuple(args.seed)
        if args.criterion:
            fields["criterion"] = args.criterion
        if args.max_iter:
            fields["max_iterations"] = args.max_iter
        if args.out:
            fields["output_path"] = args.out
        spec = SweepSpec(**fields)

        rows = run_sweep(spec, workers=args.workers)
        emit_csv(rows, spec.output_path)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if not args.no_table:
        print(emit_table(rows))
    converged = sum(1 for r in rows if r.status == SolveStatus.CONVERGED.value)
    print(f"wrote {len(rows)} rows to {spec.output_path} "
          f"({converged} converged, {len(rows) - converged} NC/Div)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
