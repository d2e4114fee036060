import csv
import io
import math
import subprocess
import sys

import numpy as np
import pytest

from heatriemann import cli, construct
from heatriemann.construct import SolutionType, fan_violations

TEST = {
    "Test1": ["--rho", "1", "--u", "0.8", "--p", "1", "--gamma", "1.4", "--k", "0.2"],
    "Test3": ["--u", "1.8", "--k", "0.2"],
    "Test4": ["--u", "2.8", "--k", "0.2"],
    "Test5": ["--u", "2.8", "--k", "2.0"],
}


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def parse_csv(text):
    return list(csv.reader(io.StringIO(text)))


# --- classify -------------------------------------------------------------------------


def test_classify_test1():
    code, text = run("classify", *TEST["Test1"])
    assert code == 0
    fields = dict(line.split(" = ") for line in text.strip().splitlines())
    assert fields["type"] == "Type1"
    assert float(fields["M*"]) == pytest.approx(0.6136, abs=5e-5)
    assert float(fields["M**"]) == pytest.approx(1.8130, abs=5e-5)


def test_classify_unbounded():
    code, text = run("classify", *TEST["Test5"])
    assert code == 0
    assert "type = Type2" in text and "M** = unbounded" in text


def test_zero_velocity_is_input_error(capsys):
    code, _ = run("classify", "--u", "0", "--k", "0.2")
    assert code == 1
    assert "ambient velocity must be positive" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--u", "0.8"],
        ["classify", "--u", "0.8", "--k", "-1"],
        ["classify", "--u", "0.8", "--k", "0.2", "--gamma", "3.5"],
        ["classify", "--u", "0.8", "--k", "0.2", "--p", "0"],
    ],
)
def test_invalid_values_exit_with_input_code(argv, capsys):
    assert run(*argv)[0] == 1
    assert capsys.readouterr().err.startswith("error:")


@pytest.mark.parametrize("argv", [["classify", "--u", "abc"], ["nonsense"], []])
def test_usage_errors_exit_with_input_code(argv, capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(argv)
    assert err.value.code == 1
    capsys.readouterr()


def test_config_file(tmp_path):
    cfg = tmp_path / "case.cfg"
    cfg.write_text("# Test5\nu = 2.8\nk = 2.0\ngamma=1.4\n")
    code, text = run("--config", str(cfg), "classify")
    assert code == 0 and "type = Type2" in text
    # flags win over the file
    code, text = run("--config", str(cfg), "classify", "--k", "0.2")
    assert code == 0 and "type = Type3" in text


def test_config_file_errors(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("u 2.8\n")
    assert run("--config", str(cfg), "classify")[0] == 1
    assert run("--config", str(tmp_path / "missing.cfg"), "classify")[0] == 1


# --- solve ---------------------------------------------------------------------------


def test_solve_rows_and_round_trip():
    code, text = run("solve", *TEST["Test3"])
    assert code == 0
    rows = parse_csv(text.split("\n\n")[0])
    assert rows[0] == ["region", "rho", "u", "p", "M"]
    assert [r[0] for r in rows[1:]] == ["1", "4", "5", "6", "7", "8"]
    by = {r[0]: r[1:] for r in rows[1:]}
    assert float(by["4"][3]) == pytest.approx(0.6136, abs=1e-4)
    assert by["1"] == by["8"]
    fan = cli.read_solution(text)
    assert fan.kind is SolutionType.TYPE2
    assert fan_violations(fan) == []
    ref = construct.solve(fan.u1, fan.ctx)
    assert fan.regions() == ref.regions()


def test_solve_type3_region4_is_ambient():
    code, text = run("solve", *TEST["Test4"])
    rows = {r[0]: r[1:] for r in parse_csv(text.split("\n\n")[0])[1:]}
    assert rows["4"] == rows["1"] == rows["8"]
    fan = cli.read_solution(text)
    assert fan.kind is SolutionType.TYPE3 and fan_violations(fan) == []


def test_solve_values_round_trip_exactly():
    code, text = run("solve", *TEST["Test1"])
    fan = cli.read_solution(text)
    ref = construct.solve(fan.u1, fan.ctx)
    assert fan.u5 == ref.u5 and fan.s_right == ref.s_right


# --- sample --------------------------------------------------------------------------


def _jumps(values, tol=1e-9):
    return int(np.count_nonzero(np.abs(np.diff(values)) > tol))


def test_sample_type1_profile():
    code, text = run("sample", *TEST["Test1"], "--t", "4.5", "--n-points", "2000")
    assert code == 0
    data = np.loadtxt(io.StringIO(text), delimiter=",", skiprows=1)
    rho = data[:, 1]
    # left shock, heating, contact, right shock
    assert _jumps(rho) == 4


def test_sample_type3_rarefaction_starts_downstream():
    code, text = run("sample", *TEST["Test4"], "--t", "2.5", "--n-points", "4001")
    data = np.loadtxt(io.StringIO(text), delimiter=",", skiprows=1)
    x, rho = data[:, 0], data[:, 1]
    fan = construct.solve(*cli.ProblemSpec(1.0, 2.8, 1.0, 1.4, 0.2).build())
    ramp = (x > fan.raref_head * 2.5) & (x < fan.raref_tail * 2.5)
    assert ramp.any() and np.all(x[ramp] >= 0.0)
    assert np.all(np.diff(rho[ramp]) < 0.0)


def test_sample_rejects_bad_time():
    assert run("sample", *TEST["Test1"], "--t", "0")[0] == 1


# --- simulate -------------------------------------------------------------------------


def test_simulate_writes_snapshot_and_report(tmp_path):
    out = tmp_path / "snap.csv"
    code, text = run("simulate", *TEST["Test4"], "--t-end", "2.5", "--n-cells", "401", "--output", str(out))
    assert code == 0
    assert out.read_text().splitlines()[0] == "x,rho,u,p"
    assert "worst plateau Linf" in text and "origin pressure defect" in text
    assert text.splitlines()[1].startswith("region,n_cells")


def test_simulate_weak_heating_is_near_uniform(tmp_path):
    out = tmp_path / "snap.csv"
    code, _ = run("simulate", "--u", "0.5", "--k", "1e-8", "--t-end", "1", "--n-cells", "51", "--output", str(out))
    assert code == 0
    data = np.loadtxt(out, delimiter=",", skiprows=1)
    assert np.allclose(data[:, 3], 1.0, rtol=1e-6)


def test_simulate_even_cells_is_input_error(capsys):
    assert run("simulate", *TEST["Test1"], "--n-cells", "100")[0] == 1
    capsys.readouterr()


def test_simulate_small_domain_is_numerical_error(capsys):
    code, _ = run("simulate", *TEST["Test1"], "--t-end", "4.5", "--n-cells", "101", "--half-width", "2")
    assert code == 2
    capsys.readouterr()


# --- scan -------------------------------------------------------------------------------


def test_scan_reference_row():
    code, text = run("scan", "--gamma-min", "1.4", "--gamma-max", "1.4", "--n-gamma", "1",
                     "--k-min", "0.2", "--k-max", "0.2", "--n-k", "1")
    rows = parse_csv(text)
    assert rows[0] == ["gamma", "k", "m_star", "m_star_star", "y_root", "T"]
    assert float(rows[1][5]) == pytest.approx(0.7510, abs=1e-3)


def test_scan_marks_unbounded_and_positive():
    code, text = run("scan", "--n-gamma", "6", "--n-k", "6")
    assert code == 0
    rows = parse_csv(text)[1:]
    assert len(rows) == 36
    for g, k, _, mss, root, t in rows:
        if float(k) * (float(g) ** 2 - 1) >= 1:
            assert mss == "inf" and (t == "inf" or t.startswith("error:"))
        else:
            assert float(t) > 0.0


def test_scan_rejects_zero_k():
    assert run("scan", "--k-min", "0")[0] == 1


# --- kmax --------------------------------------------------------------------------------


def test_kmax_table():
    code, text = run("kmax")
    data = np.loadtxt(io.StringIO(text), delimiter=",", skiprows=1)
    m, k = data[:, 0], data[:, 1]
    assert k[np.argmin(np.abs(m - 1.0))] == 0.0
    assert m[-1] == 100.0
    assert k[-1] == pytest.approx(1 / (1.4**2 - 1), rel=0.01)


def test_kmax_linear_row():
    code, text = run("kmax", "--m-min", "0.5", "--m-max", "1.5", "--n", "3", "--spacing", "linear")
    rows = parse_csv(text)[1:]
    assert float(rows[0][1]) == pytest.approx(0.446429, abs=5e-7)
    assert float(rows[1][1]) == 0.0


# --- table1 -----------------------------------------------------------------------------


def test_table1_passes():
    code, text = run("table1")
    assert code == 0
    assert "MISMATCH" not in text and text.count(" ok") == 5


def test_table1_detects_tampered_expectations():
    code, text = run("table1", "--expected", "Type1,Type1,Type2,Type2,Type2")
    assert code != 0 and "MISMATCH" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "heatriemann", "table1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "Test5" in proc.stdout


def test_fmt_round_trips():
    for v in (0.1, 1 / 3, 2.36643191323984, 1e-300, math.pi):
        assert float(cli.fmt(v)) == v
    assert cli.fmt(math.inf) == "inf"
