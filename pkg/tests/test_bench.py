import csv
import os

import pytest

from adaptive_seeding import bench
from adaptive_seeding.cli import main
from adaptive_seeding.config import ConfigError, ExperimentConfig, parse_config, serialize_config
from adaptive_seeding.svg import series_from_csv


def small_config(**kw):
    base = dict(experiment="unit", generator="barabasi_albert",
                generator_param=["n=2000", "m0=10", "attach=5"], generator_seed=1,
                core_size=50, core_seed=2, algorithm=["greedy", "im"],
                budget_fraction=[0.1, 0.2, 0.3, 0.4, 0.5], seed=7)
    base.update(kw)
    return ExperimentConfig(**base)


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def test_config_roundtrip():
    cfg = small_config(algorithm=["greedy", "snp:0.1:16", "rf"], timing=True,
                       prob_family="beta", prob_mean=0.25, weights="voter:5",
                       scale_size=[1000, 4000], budget=[4, 9])
    assert parse_config(serialize_config(cfg)) == cfg


@pytest.mark.parametrize("text", ["nonsense\n", "repetitions = x\n", "core_size = 3\ncore_size = 4\n"])
def test_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


@pytest.mark.parametrize("kw", [dict(algorithm=["magic"]), dict(budget_fraction=[1.5]),
                                dict(repetitions=0), dict(core_fraction=0.1),
                                dict(algorithm=[])])
def test_config_validation(kw):
    with pytest.raises(ConfigError):
        small_config(**kw).validate()


def test_missing_graph_file_fails_early(tmp_path):
    cfg = small_config(graph_file=str(tmp_path / "missing.txt"))
    with pytest.raises(ConfigError):
        bench.run_experiment(cfg, tmp_path / "out")
    assert not (tmp_path / "out").exists()


def test_experiment_rows_and_svg(tmp_path):
    rows = bench.run_experiment(small_config(), tmp_path)
    assert len(rows) == 10
    lines = read_rows(tmp_path / "results.csv")
    assert len(lines) == 10
    assert list(lines[0]) == bench.RESULT_FIELDS
    assert all(r["time_ms"] == "" for r in lines)
    svg = (tmp_path / "figure-unit.svg").read_text()
    assert svg.startswith("<svg") and "greedy" in svg and "im" in svg
    assert (tmp_path / "run.log").exists()


def test_experiment_is_byte_identical(tmp_path):
    cfg = small_config(algorithm=["greedy", "snp:0.2:8", "rf", "rn"], repetitions=2,
                       prob_family="beta", prob_mean=0.4, evaluation="mc:500")
    bench.run_experiment(cfg, tmp_path / "a")
    cfg.workers = 8
    bench.run_experiment(cfg, tmp_path / "b")
    assert (tmp_path / "a" / "results.csv").read_bytes() == \
        (tmp_path / "b" / "results.csv").read_bytes()


def test_svg_rebuilds_from_csv(tmp_path):
    bench.run_experiment(small_config(), tmp_path)
    series = series_from_csv(tmp_path / "results.csv")
    assert set(series) == {"greedy", "im"}
    assert len(series["greedy"]) == 5


def test_value_increases_with_probability(tmp_path):
    values = []
    for p in (0.01, 0.1, 0.5, 1.0):
        rows = bench.run_experiment(small_config(algorithm=["greedy"], budget=[10],
                                                 budget_fraction=[], prob_mean=p),
                                    tmp_path / str(p))
        values.append(rows[0].value)
    assert values == sorted(values)


def test_scaling(tmp_path):
    cfg = small_config(algorithm=["greedy", "saa-greedy"], budget=[3], budget_fraction=[],
                       core_size=300, scale_size=[200, 400], scale_repeats=1,
                       saa_sample_cap=50)
    rows = bench.run_scaling(cfg, tmp_path)
    assert len(rows) == 4
    assert all(r["n"] >= 200 for r in rows)
    assert (tmp_path / "scaling.csv").exists()


def test_scaling_empty_ladder(tmp_path):
    with pytest.raises(ConfigError):
        bench.run_scaling(small_config(budget=[3]), tmp_path)


def test_scaling_rejects_baselines(tmp_path):
    with pytest.raises(ConfigError):
        bench.run_scaling(small_config(budget=[3], scale_size=[100]), tmp_path)


# ---------------------------------------------------------------------------
# command line

def test_cli_pipeline(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    main(["generate", "--kind", "ba", "--n", "1500", "--attach", "4", "--seed", "3",
          "-o", str(graph)])
    main(["stats", "--graph", str(graph), "--core-size", "30"])
    out = capsys.readouterr().out
    assert "mean_degree_neighbors" in out
    inst, sol = tmp_path / "inst.tsv", tmp_path / "sol.txt"
    main(["seed", "--graph", str(graph), "--core-size", "30", "--k", "6",
          "--prob-mean", "0.5", "--dump-instance", str(inst), "-o", str(sol)])
    text = sol.read_text()
    assert text.startswith("algo\tgreedy") and "value\t" in text
    for algo in ("greedy-geo", "snp", "lp"):
        main(["seed", "--instance", str(inst), "--prob-family", "keep", "--k", "6",
              "--algo", algo, "--dump-lp", str(tmp_path / "x.lp"),
              "-o", str(tmp_path / f"{algo}.txt")])
    assert (tmp_path / "x.lp").read_text().startswith("#seeding-lp v1")
    capsys.readouterr()
    main(["eval", "--instance", str(inst), "--solution", str(sol), "--exact",
          "--samples", "2000"])
    out = capsys.readouterr().out
    assert "exact\t" in out and "stderr\t" in out


def test_cli_bench_and_scale(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(serialize_config(small_config(budget_fraction=[0.1, 0.2])))
    main(["bench", "--config", str(cfg), "--out", str(tmp_path / "b")])
    assert "4 rows" in capsys.readouterr().out
    cfg.write_text(serialize_config(small_config(budget=[3], budget_fraction=[],
                                                 algorithm=["greedy", "lp"],
                                                 scale_size=[100], scale_repeats=1,
                                                 core_size=100)))
    main(["scale", "--config", str(cfg), "--out", str(tmp_path / "s")])
    assert os.path.exists(tmp_path / "s" / "scaling.csv")


def test_cli_stdout_stays_open(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    main(["generate", "--kind", "ws", "--n", "200", "--ring-degree", "4", "-o", str(graph)])
    main(["seed", "--graph", str(graph), "--core-size", "10", "--k", "4"])
    main(["seed", "--graph", str(graph), "--core-size", "10", "--k", "5"])
    assert capsys.readouterr().out.count("algo\tgreedy") == 2
