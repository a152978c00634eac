import json
import math
import subprocess
import sys

import pytest

from notlimit import __version__
from notlimit.cli import COMMANDS, RunConfig, main, parse_csv, render_csv


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def records(argv, capsys):
    code, out = run(argv + ["--format", "json"], capsys)
    return code, json.loads(out)


def cfg(command, lo, hi, **kw):
    base = dict(seed=0, samples=1, grid_p=64, grid_theta=128, tol=1e-6, format="csv", out=None)
    base.update(kw)
    return RunConfig(command=command, n_min=lo, n_max=hi, **base)


class TestBounds:
    def test_header_and_rows(self, capsys):
        code, out = run(["bounds", "--n", "2..4"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n,bound_not_exact,bound_not_uniform,bound_cc,bound_hadamard"
        rows = parse_csv("bounds", out)
        r2 = rows[0]
        assert (r2["bound_not_exact"], r2["bound_not_uniform"], r2["bound_cc"], r2["bound_hadamard"]) == pytest.approx(
            (0.25, 0.25, 0.5, 0.05)
        )
        assert rows[2]["bound_cc"] == pytest.approx(0.25)

    def test_n100(self, capsys):
        _, doc = records(["bounds", "--n", "100"], capsys)
        assert doc["records"][0]["bound_not_uniform"] == pytest.approx(9.1222e-4, rel=1e-4)

    def test_default_range(self, capsys):
        _, doc = records(["bounds"], capsys)
        assert [r["n"] for r in doc["records"]] == list(range(2, 101))


class TestAttain:
    def test_examples(self, capsys):
        code, doc = records(["attain", "--n", "2..7"], capsys)
        assert code == 0
        by_n = {r["n"]: r for r in doc["records"]}
        assert by_n[2]["measured"] == pytest.approx(0.5, abs=1e-6)
        assert by_n[4]["measured"] == pytest.approx(0.25, abs=1e-6)
        assert by_n[7]["measured"] == pytest.approx((2 - math.sqrt(2)) / 4, abs=1e-6)
        assert doc["summary"]["failures"] == 0

    def test_sparse_range(self, capsys):
        code, doc = records(["attain", "--n", "30..32", "--grid", "16x32"], capsys)
        assert code == 0 and len(doc["records"]) == 3

    def test_tolerance_violation_exits_1(self, capsys):
        code, doc = records(["attain", "--n", "2..3", "--tol", "1e-30"], capsys)
        errors = [r["abs_error"] for r in doc["records"]]
        assert max(errors) > 1e-30
        assert code == 1


class TestAudit:
    def test_clean_run(self, capsys):
        code, doc = records(["audit", "--n", "2", "--samples", "200"], capsys)
        assert code == 0
        assert doc["summary"]["violating_samples"] == 0 and len(doc["records"]) == 200
        for r in doc["records"]:
            for key in ("measured_max_distance", "component_bound", "overlap_sum", "fixed_ancilla_bound", "general_bound"):
                assert 0 <= r[key] <= 1

    def test_injected_nonconservative(self, capsys):
        code, doc = records(["audit", "--n", "2", "--samples", "3", "--inject-nonconservative"], capsys)
        assert code == 1
        assert doc["summary"]["violations"]["commutator"] == 3

    def test_seed_per_sample(self, capsys):
        _, doc = records(["audit", "--n", "2", "--samples", "3", "--seed", "10"], capsys)
        assert [r["seed"] for r in doc["records"]] == [10, 11, 12]


class TestFigure2:
    def test_n4(self, capsys):
        _, out = run(["figure2", "--n", "4"], capsys)
        rows = parse_csv("figure2", out)
        assert [r["n"] for r in rows] == [1, 3]
        assert [r["amplitude"] for r in rows] == pytest.approx([1 / math.sqrt(2)] * 2)

    def test_n2(self, capsys):
        _, out = run(["figure2", "--n", "2"], capsys)
        assert parse_csv("figure2", out) == [{"n": 1, "amplitude": 1.0}]

    def test_default_n100(self, capsys):
        code, doc = records(["figure2"], capsys)
        assert code == 0 and len(doc["records"]) == 50
        assert doc["summary"]["peak_n"] in (49, 51)


class TestPurifyDemo:
    def test_rank_one_exact(self, capsys):
        code, doc = records(["purify-demo", "--n", "1..3", "--rank", "1", "--samples", "2"], capsys)
        assert code == 0
        assert all(r["max_residual"] == 0.0 and r["extra_qubits"] == 0 for r in doc["records"])

    def test_maximal_rank_n1(self, capsys):
        _, doc = records(["purify-demo", "--n", "1", "--rank", "2"], capsys)
        r = doc["records"][0]
        assert r["n_extended"] == 2 and r["max_residual"] <= 1e-10

    def test_rank3_n2(self, capsys):
        _, doc = records(["purify-demo", "--n", "2", "--rank", "3"], capsys)
        assert doc["records"][0]["n_extended"] == 4


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "--n", "5..2"],
        ["bounds", "--n", "abc"],
        ["bounds", "--n", "1..3"],
        ["figure2", "--n", "5"],
        ["figure2", "--n", "4..6"],
        ["audit", "--n", "13"],
        ["audit", "--samples", "0"],
        ["purify-demo", "--n", "4"],
        ["purify-demo", "--n", "2", "--rank", "5"],
        ["attain", "--grid", "2x2"],
        ["attain", "--grid", "64by128"],
        ["bounds", "--seed", "-1"],
        ["bounds", "--format", "xml"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


@pytest.mark.parametrize("fmt", ["csv", "json"])
@pytest.mark.parametrize(
    "argv",
    [["audit", "--n", "2..3", "--samples", "5", "--seed", "99"], ["attain", "--n", "2..14"], ["purify-demo"]],
)
def test_deterministic_output(argv, fmt, tmp_path, capsys):
    paths = [tmp_path / f"run{i}.{fmt}" for i in range(2)]
    for p in paths:
        main(argv + ["--format", fmt, "--out", str(p)])
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert paths[0].stat().st_size > 0


@pytest.mark.parametrize(
    "config",
    [
        cfg("bounds", 2, 30),
        cfg("attain", 2, 9),
        cfg("audit", 2, 3, samples=4, tol=1e-8),
        cfg("figure2", 12, 12),
        cfg("purify-demo", 1, 3, samples=2, tol=1e-10),
    ],
    ids=lambda c: c.command,
)
def test_csv_round_trip(config):
    rows, _, _ = COMMANDS[config.command](config)
    assert parse_csv(config.command, render_csv(config.command, rows)) == rows


def test_json_schema(capsys):
    code, doc = records(["bounds", "--n", "2..3"], capsys)
    assert set(doc) == {"config", "records", "summary", "tool_version"}
    assert doc["tool_version"] == __version__
    assert doc["config"]["command"] == "bounds" and doc["config"]["n_min"] == 2


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "notlimit", "bounds", "--n", "2"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert out.stdout.startswith("n,bound_not_exact")


def test_help_lists_defaults():
    out = subprocess.run([sys.executable, "-m", "notlimit", "audit", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "default 2..4" in out.stdout and "default 200" in out.stdout
