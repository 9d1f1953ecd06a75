"""CLI: CSV format and byte stability, exit codes, eval line, verify table."""

import json
import re

import pytest

import emrate.cli as cli
import emrate.oracle_suite as oracle_suite
from emrate.cli import CSV_HEADER, CurveSpec, main
from emrate.mie import SphereMedium
from emrate.rates import decay_correction_dipole


def run_cli(args):
    return main(args)


def read_rows(path):
    lines = path.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    return [line.split(",") for line in lines[1:]]


# ---------------------------------------------------------------------------
# curve
# ---------------------------------------------------------------------------


def test_curve_minimal_grid(tmp_path):
    out = tmp_path / "c.csv"
    code = run_cli(
        [
            "curve", "--q", "0.5", "--eps-re", "1.5", "--eps-im", "0.5",
            "--orientation", "perp", "--zeta-min", "1.0", "--zeta-max", "2.0",
            "--points", "2", "--out", str(out),
        ]
    )
    assert code == 0
    assert len(read_rows(out)) == 2  # header plus exactly two data rows


def test_curve_no_contrast_all_zero(tmp_path):
    out = tmp_path / "c.csv"
    code = run_cli(
        [
            "curve", "--q", "0.5", "--eps-re", "1.0",
            "--orientation", "perp", "--zeta-min", "1.0", "--zeta-max", "3.0",
            "--points", "5", "--out", str(out),
        ]
    )
    assert code == 0
    for row in read_rows(out):
        assert float(row[1]) == 0.0


def test_curve_byte_stability(tmp_path):
    args = [
        "curve", "--q", "0.5", "--eps-re", "1.5", "--eps-im", "0.5",
        "--orientation", "par", "--zeta-min", "0.6", "--zeta-max", "6.0",
        "--points", "24", "--grid", "log", "--include-asymptotes",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli(args + ["--out", str(a)]) == 0
    assert run_cli(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_curve_threads_do_not_change_bytes(tmp_path, monkeypatch):
    args = [
        "curve", "--q", "0.5", "--eps-re", "1.5", "--eps-im", "0.5",
        "--orientation", "perp", "--zeta-min", "0.8", "--zeta-max", "4.0",
        "--points", "16",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    monkeypatch.setenv("EMRATE_THREADS", "1")
    assert run_cli(args + ["--out", str(a)]) == 0
    monkeypatch.setenv("EMRATE_THREADS", "4")
    assert run_cli(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_curve_partial_convergence_exit_code(tmp_path):
    out = tmp_path / "c.csv"
    code = run_cli(
        [
            "curve", "--q", "0.5", "--eps-re", "1.5", "--eps-im", "0.5",
            "--orientation", "perp", "--zeta-min", "0.55", "--zeta-max", "0.6",
            "--points", "3", "--lmax-cap", "12", "--out", str(out),
        ]
    )
    assert code == 2
    rows = read_rows(out)
    assert len(rows) == 3  # rows still written
    assert any(r[6] == "false" for r in rows)


def test_curve_invalid_parameters_exit_one(tmp_path, capsys):
    out = tmp_path / "c.csv"
    code = run_cli(
        [
            "curve", "--q", "0.5", "--eps-re", "1.5",
            "--orientation", "perp", "--zeta-min", "0.3", "--zeta-max", "2.0",
            "--points", "4", "--out", str(out),
        ]
    )
    assert code == 1
    assert "zeta-min" in capsys.readouterr().err


def test_unwritable_output_exit_one(tmp_path):
    code = run_cli(
        [
            "curve", "--q", "0.5", "--eps-re", "1.5",
            "--orientation", "perp", "--zeta-min", "1.0", "--zeta-max", "2.0",
            "--points", "2", "--out", str(tmp_path / "missing" / "c.csv"),
        ]
    )
    assert code == 1


def test_curve_spec_validation_direct():
    spec = CurveSpec(
        medium=SphereMedium(q=0.0, epsilon=1.5 + 0.5j),
        orientation="perp",
        zeta_min=0.0,
        zeta_max=1.0,
        points=4,
    )
    with pytest.raises(ValueError):
        spec.validate()


# ---------------------------------------------------------------------------
# figure presets
# ---------------------------------------------------------------------------


def test_figure_lossless_near_column_empty(tmp_path):
    out = tmp_path / "f1.csv"
    assert cli.cmd_figure(1, str(out)) == 0
    for row in read_rows(out):
        assert row[3] == ""  # no contact divergence for a lossless medium
        assert row[2] != ""  # far asymptote present


def test_figure_point_limit_contact_strength(tmp_path):
    out = tmp_path / "f2.csv"
    assert cli.cmd_figure(2, str(out)) == 0
    rows = read_rows(out)
    zeta, f = float(rows[0][0]), float(rows[0][1])
    assert abs(f * zeta**3 - (-0.18)) < 0.01


def test_figure_parallel_far_decay(tmp_path):
    out = tmp_path / "f4.csv"
    assert cli.cmd_figure(4, str(out)) == 0
    rows = read_rows(out)
    mid = [abs(float(r[1])) for r in rows if 5.5 <= float(r[0]) <= 7.0]
    end = [abs(float(r[1])) for r in rows if float(r[0]) >= 10.5]
    ratio = max(mid) / max(end)
    # envelope drops ~ (zeta_end/zeta_mid)^2 ~ 3.2; allow oscillation slack
    assert 1.8 < ratio < 6.5


def test_figure_bad_id(capsys):
    assert cli.cmd_figure(7, "x.csv") == 1


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

_EVAL_RE = re.compile(
    r"^f=(-?\d\.\d{12}e[+-]\d{2,3}) terms=(\d+) tail=(\d\.\d{3}e[+-]\d{2,3}) "
    r"converged=(true|false)$"
)


def test_eval_line_format_and_no_contrast(capsys):
    code = run_cli(
        ["eval", "--q", "0.5", "--eps-re", "1.0", "--orientation", "perp",
         "--zeta-a", "2.0"]
    )
    assert code == 0
    line = capsys.readouterr().out.strip()
    m = _EVAL_RE.match(line)
    assert m, line
    assert float(m.group(1)) == 0.0


def test_eval_matches_point_limit(capsys):
    code = run_cli(
        ["eval", "--q", "0", "--eps-re", "1.5", "--eps-im", "0.5",
         "--orientation", "perp", "--zeta-a", "1.0"]
    )
    assert code == 0
    line = capsys.readouterr().out.strip()
    f = float(_EVAL_RE.match(line).group(1))
    expected = decay_correction_dipole(1.0, 1.5 + 0.5j, "perp")
    assert abs(f - expected) < 1e-12 * max(1.0, abs(expected))


def test_eval_rejects_point_inside_sphere(capsys):
    code = run_cli(
        ["eval", "--q", "0.5", "--eps-re", "1.5", "--eps-im", "0.5",
         "--orientation", "perp", "--zeta-a", "0.4"]
    )
    assert code == 1
    assert "zeta_a" in capsys.readouterr().err


def test_bad_flag_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        run_cli(["eval", "--q", "0.5", "--orientation", "sideways"])
    assert exc.value.code == 1


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


@pytest.fixture
def tiny_registry(monkeypatch):
    calls = []

    def ok():
        calls.append("ok")
        return 1e-12, 3

    def bad():
        calls.append("bad")
        return 0.5, 1

    fake = (
        oracle_suite._Check("alpha_check", "integrals", 1e-8, ok),
        oracle_suite._Check("beta_check", "rates", 1e-3, bad),
    )
    monkeypatch.setattr(oracle_suite, "_REGISTRY", fake)
    monkeypatch.setattr(
        oracle_suite, "EXPECTED_CHECK_IDS", tuple(c.check_id for c in fake)
    )
    return calls


def test_verify_table_and_exit_codes(tiny_registry, capsys, tmp_path):
    assert run_cli(["verify", "--suite", "integrals"]) == 0
    out = capsys.readouterr().out
    assert "alpha_check" in out and "PASS" in out

    report = tmp_path / "r.json"
    assert run_cli(["verify", "--suite", "all", "--json-out", str(report)]) == 1
    payload = json.loads(report.read_text())
    assert [p["check_id"] for p in payload] == ["alpha_check", "beta_check"]
    assert payload[0]["passed"] is True and payload[1]["passed"] is False
    assert set(payload[0]) == {"check_id", "max_rel_err", "tolerance", "passed", "samples"}


def test_verify_tol_override_flag(tiny_registry, capsys):
    code = run_cli(["verify", "--suite", "rates", "--tol-override", "beta_check=0.9"])
    assert code == 0


def test_verify_unknown_suite(capsys):
    assert run_cli(["verify", "--suite", "bogus"]) == 1
