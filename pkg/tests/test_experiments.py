import csv

import pytest

from coagkit.errors import ConfigError
from coagkit.experiments import (
    ExperimentConfig, builtin_config, builtin_names, parse_config, run_cost_study, run_moment_study,
    run_self_convergence, run_study, run_validation, run_xmax_sweep,
)
from coagkit.experiments.cli import main
from coagkit.experiments.config import format_config
from coagkit.experiments.results import ResultTable, format_value

SMALL = dict(n_list=(21, 41), x_max=20.0, t_span=(1.0, 1.5), dt=5e-3)


def rows(text):
    return list(csv.DictReader(line for line in text.splitlines() if not line.startswith("#")))


def test_parse_config():
    cfg = parse_config("""
        # comment
        study = self-converge
        kernel = multiplicative   # trailing comment
        n_list = 11, 21,41
        t_span = 0, 2
        flfm_max_n = none
    """)
    assert cfg.study == "self_converge" and cfg.kernel == "multiplicative"
    assert cfg.n_list == (11, 21, 41) and cfg.t_span == (0.0, 2.0) and cfg.flfm_max_n is None
    assert cfg.schemes == ("fem", "flfm")
    assert cfg.samples() == (2.0,)


@pytest.mark.parametrize("text", [
    "kernel = additive",
    "bogus = 1",
    "no equals sign",
    "dt = -1",
    "dt = abc",
    "x_min = 5\nx_max = 1",
    "n_list = 40, 20",
    "t_span = 3, 1",
    "study = self_converge\nn_list = 10, 21",
    "study = xmax_sweep",
    "kernel = constant\nkernel = constant",
    "sample_times = 0.5, 9",
])
def test_bad_configs(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_builtins_load():
    names = builtin_names()
    assert len(names) == 10
    for name in names:
        cfg = builtin_config(name)
        assert name.startswith(cfg.study) and name.endswith(cfg.kernel)
    with pytest.raises(ConfigError):
        builtin_config("nope")


def test_format_config_round_trips():
    cfg = builtin_config("self_converge_multiplicative")
    text = "\n".join(f"{k} = {v}" for k, v in format_config(cfg))
    assert parse_config(text) == cfg


def test_format_value():
    assert format_value(0.1) == "1.0000000000000001e-01"
    assert format_value(3) == "3"
    assert format_value(float("nan")) == "nan"
    assert format_value("fem") == "fem"


def test_result_table():
    t = ResultTable("x", ("a", "b"), metadata=[("k", "v")])
    t.add(1, 2.5)
    with pytest.raises(ValueError):
        t.add(1)
    assert t.to_csv() == "# k = v\na,b\n1,2.5000000000000000e+00\n"
    assert t.column("b") == [2.5] and t.where(a=1) == [(1, 2.5)]


def test_validation_small():
    cfg = ExperimentConfig(study="validate", sample_times=(1.0, 1.25, 1.5), **SMALL)
    t = run_validation(cfg)
    assert t.columns == ("scheme", "kernel", "n", "dx", "t", "error_l1")
    assert len(t.rows) == 2 * 2 * 3
    assert all(r[5] >= 0 for r in t.rows)
    # rows at t0 are the initial projection error: zero by construction
    assert all(r[5] == 0 for r in t.rows if r[4] == 1.0)
    assert {r[0] for r in t.child("validate_orders").rows} == {"fem", "flfm"}
    csv_text = t.to_csv()
    assert "# kernel = constant" in csv_text and "# rel_tol = 1e-08" in csv_text


def test_self_convergence_identical_grid_is_zero():
    cfg = ExperimentConfig(study="self_converge", **{**SMALL, "n_list": (21, 41)})
    t = run_self_convergence(cfg)
    assert len(t.rows) == 2
    one = run_self_convergence(cfg.replace(n_list=(41,)))
    assert one.rows == []


def test_flfm_cap():
    cfg = ExperimentConfig(study="self_converge", **{**SMALL, "n_list": (11, 21, 41)}, flfm_max_n=21)
    t = run_self_convergence(cfg)
    assert [r[4] for r in t.rows if r[0] == "flfm"] == [21]
    assert [r[4] for r in t.rows if r[0] == "fem"] == [41, 41]


def test_moments_small():
    cfg = ExperimentConfig(study="moments", **{**SMALL, "t_span": (0.0, 0.5), "n_list": (21, 41, 81)})
    t = run_moment_study(cfg)
    assert t.columns == ("scheme", "kernel", "n", "t", "m0", "m1")
    init = t.child("moments_initial")
    for r in init.rows:
        if r[0] == "fem":
            assert abs(r[6]) < 1e-6 and r[7] > r[8]
        else:
            assert abs(r[9]) < 1e-6 and abs(r[6]) > 1e-3
    assert len(t.child("moments_diff").rows) == 2 * 2 * 2


def test_cost_small():
    cfg = ExperimentConfig(study="cost", flux_path="naive", n_list=(20, 40))
    t = run_cost_study(cfg)
    assert t.columns == ("scheme", "kernel", "n", "adds", "muls", "divs", "special", "total")
    for r in t.rows:
        assert r[7] == sum(r[3:7])
    assert [r[0] for r in t.child("cost_ratios").rows] == ["fem", "flfm", "flfm/fem", "flfm/fem"]


def test_sweep_small():
    cfg = ExperimentConfig(study="xmax_sweep", x_max_list=(10.0, 20.0), dx_list=(1.0, 0.5),
                           t_span=(1.0, 1.5), dt=5e-3)
    t = run_xmax_sweep(cfg)
    assert t.columns == ("scheme", "kernel", "x_max", "n", "dx", "error_l1")
    assert [r[3] for r in t.rows if r[0] == "fem"] == [11, 21, 21, 41]


def test_failures_are_recorded_and_run_continues():
    cfg = ExperimentConfig(study="validate", x_min=0.0, **{k: v for k, v in SMALL.items()})
    t = run_validation(cfg)
    fails = t.child("validate_failures")
    assert {r[0] for r in fails.rows} == {"flfm"}
    assert {r[0] for r in t.rows} == {"fem"}


@pytest.mark.parametrize("study", ["validate", "moments", "cost", "xmax_sweep", "self_converge"])
def test_deterministic_and_thread_independent(study):
    extra = {"x_max_list": (10.0, 20.0), "dx_list": (1.0,)} if study == "xmax_sweep" else {}
    t_span = (0.0, 0.5) if study == "moments" else SMALL["t_span"]
    cfg = ExperimentConfig(study=study, **{**SMALL, "t_span": t_span}, **extra)
    a = run_study(cfg)
    b = run_study(cfg, threads=4)
    assert [c.to_csv() for c in [a, *a.children]] == [c.to_csv() for c in [b, *b.children]]


def test_cli(tmp_path, capsys):
    cfg = tmp_path / "v.cfg"
    cfg.write_text("study = validate\nn_list = 21, 41\nx_max = 20\nt_span = 1, 1.2\ndt = 5e-3\n")
    assert main(["validate", "--config", str(cfg), "--output-dir", str(tmp_path / "o"), "--seedless"]) == 0
    out = (tmp_path / "o" / "validate.csv").read_text()
    assert "scheme,kernel,n,dx,t,error_l1" in out
    assert (tmp_path / "o" / "validate_orders.csv").exists()
    assert main(["cost", "--config", str(cfg)]) == 2
    assert main(["validate", "--config", str(tmp_path / "missing.cfg")]) == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("study = validate\nx_min = 0\nn_list = 11\nt_span = 1, 1.1\ndt = 0.05\n")
    assert main(["validate", "--config", str(bad), "--output-dir", str(tmp_path / "b")]) == 1
    assert (tmp_path / "b" / "validate_failures.csv").exists()
