"""Benchmark harness: sweep bookkeeping, CSV round-trips, CLI behavior."""

import json

import pytest

from fracsolve.bench import (
    ALL_STRATEGIES,
    CSV_HEADER,
    CSV_SCHEMA_COMMENT,
    ResultRow,
    SweepSpec,
    _spec_from_config,
    emit_csv,
    emit_table,
    main,
    parse_csv,
    resolve_criterion,
    run_sweep,
    solve_cell,
)
from fracsolve.newton import CriterionKind

SMALL = SweepSpec(strategies=("constraint-adaptive",), models=("single-pm",),
                  phi_values=(0.1,), cells_values=(4,), u_c_values=(0.01,), seeds=(0,))


def _row(**overrides):
    base = dict(strategy="constraint-adaptive", model="single-pm", physics="poro",
                phi=0.1, cells=6, u_c=0.01, seed=0, status="Converged",
                iterations=13, final_norm=1e-12, ls_evals=170, tightenings=0)
    base.update(overrides)
    return ResultRow(**base)


# ---------------------------------------------------------------------------
# sweep definition


def test_default_spec_arity():
    assert len(SweepSpec().cells()) == 160


def test_minimal_spec_is_one_cell():
    assert len(SMALL.cells()) == 1


def test_cells_order_is_deterministic():
    spec = SweepSpec()
    assert spec.cells() == spec.cells()


@pytest.mark.parametrize("kwargs", [
    {"strategies": ("warp-drive",)},
    {"strategies": ()},
    {"models": ("single-xyz",)},
    {"u_c_values": ()},
    {"criterion": "vibes"},
    {"max_iterations": 0},
])
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        SweepSpec(**kwargs)


def test_resolve_criterion():
    assert resolve_criterion("single-pm", "auto").kind is CriterionKind.INCREMENT
    assert resolve_criterion("multi4-pm", "auto").kind is CriterionKind.RESIDUAL
    assert resolve_criterion("single-pm", "residual").kind is CriterionKind.RESIDUAL
    assert resolve_criterion("multi4-pm", "increment").kind is CriterionKind.INCREMENT


# ---------------------------------------------------------------------------
# solving cells


def test_solve_cell_records_model_metadata():
    row = solve_cell(("constraint-adaptive", "single-pm", 0.1, 4, 0.01, 0, "auto", 100))
    assert row.status == "Converged"
    assert row.physics == "poro"
    assert row.cells == 4
    assert row.iterations > 0
    assert row.final_norm < 1e-10
    assert row.wall_time > 0.0


def test_iteration_cap_renders_as_nc():
    row = solve_cell(("constraint-adaptive", "single-pm", 0.1, 4, 0.01, 0, "auto", 2))
    assert row.status == "NC"
    assert row.iterations == 2


# ---------------------------------------------------------------------------
# CSV and tables


def test_csv_round_trip(tmp_path):
    rows = run_sweep(SMALL, workers=1)
    path = tmp_path / "sweep.csv"
    emit_csv(rows, str(path))
    assert parse_csv(str(path)) == rows


def test_csv_structure_single_row(tmp_path):
    path = tmp_path / "one.csv"
    emit_csv([_row()], str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == CSV_SCHEMA_COMMENT
    assert lines[1] == CSV_HEADER
    assert len(lines) == 3
    assert sum(1 for ln in lines if not ln.startswith("#")) == 2


def test_rerun_is_byte_identical(tmp_path):
    spec = SweepSpec(strategies=("none", "constraint-adaptive"), models=("single-pm",),
                     phi_values=(0.1,), cells_values=(4,), u_c_values=(0.01,), seeds=(0,))
    paths = [tmp_path / name for name in ("a.csv", "b.csv", "c.csv")]
    emit_csv(run_sweep(spec, workers=1), str(paths[0]))
    emit_csv(run_sweep(spec, workers=1), str(paths[1]))
    emit_csv(run_sweep(spec, workers=2), str(paths[2]))
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1] == blobs[2]


def test_parse_csv_rejects_malformed_rows(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(CSV_SCHEMA_COMMENT + "\n" + CSV_HEADER + "\nonly,three,fields\n")
    with pytest.raises(ValueError):
        parse_csv(str(path))


def test_emit_table_rendering():
    rows = [
        _row(u_c=0.01, iterations=13),
        _row(u_c=0.1, status="NC", iterations=100),
        _row(strategy="none", u_c=0.01, status="Div", iterations=4),
        # strategy "none" at u_c=0.1 intentionally missing
    ]
    text = emit_table(rows)
    assert "model=single-pm phi=0.1 cells=6 seed=0" in text
    assert "u_c=0.01" in text and "u_c=0.1" in text
    assert "13" in text
    assert "NC" in text
    assert "Div" in text
    assert "-" in text


def test_empty_outputs_raise(tmp_path):
    with pytest.raises(ValueError):
        emit_csv([], str(tmp_path / "never.csv"))
    with pytest.raises(ValueError):
        emit_table([])


# ---------------------------------------------------------------------------
# config files and CLI


def test_config_loading(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"models": ["single-pm"], "cells_values": [4],
                                "u_c_values": [0.01], "max_iterations": 50}))
    fields = _spec_from_config(str(path))
    spec = SweepSpec(**fields)
    assert spec.models == ("single-pm",)
    assert spec.cells_values == (4,)
    assert spec.max_iterations == 50


def test_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"modles": ["single-pm"]}))
    with pytest.raises(ValueError):
        _spec_from_config(str(path))


def test_config_rejects_non_object(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(["single-pm"]))
    with pytest.raises(ValueError):
        _spec_from_config(str(path))


def test_main_happy_path(tmp_path, capsys):
    out = tmp_path / "cli.csv"
    code = main(["--model", "single-pm", "--strategy", "constraint-adaptive",
                 "--phi", "0.1", "--cells", "4", "--uc", "0.01",
                 "--out", str(out), "--workers", "1", "--no-table"])
    assert code == 0
    assert out.exists()
    captured = capsys.readouterr()
    assert "wrote 1 rows" in captured.out


def test_main_prints_table_by_default(tmp_path, capsys):
    out = tmp_path / "cli.csv"
    code = main(["--model", "single-pm", "--strategy", "none",
                 "--cells", "4", "--uc", "0.01", "--out", str(out), "--workers", "1"])
    assert code == 0
    assert "strategy" in capsys.readouterr().out


def test_main_rejects_unknown_model(tmp_path, capsys):
    code = main(["--model", "single-xyz", "--out", str(tmp_path / "x.csv"),
                 "--workers", "1", "--no-table"])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_main_reports_missing_config(tmp_path, capsys):
    code = main(["--config", str(tmp_path / "missing.json"), "--no-table"])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_all_strategies_constant():
    assert ALL_STRATEGIES == ("none", "residual", "constraint-const", "constraint-adaptive")
