import io
import json

import numpy as np
import pytest

from cubictrans import cli
from cubictrans.datafile import parse_values


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(text):
    body = text.split("\n# histogram\n")[0].strip().splitlines()
    header = body[0].split(",")
    return header, np.array([[float(v) for v in line.split(",")] for line in body[1:]])


def test_fit_mg(capsys, floyd_path):
    code, out, _ = run(capsys, "fit", floyd_path, "--family", "MG")
    assert code == 0
    d = json.loads(out)
    assert d["neg_log_lik"] == pytest.approx(380.665, abs=1e-3)
    assert d["family"] == "MG" and d["k"] == 3 and d["n"] == 39


def test_fit_pareto(capsys, floyd_path):
    code, out, _ = run(capsys, "fit", floyd_path, "--family", "pareto")
    assert code == 0
    assert json.loads(out)["alpha"] == pytest.approx(0.412, abs=5e-4)


def test_fit_empty(capsys, tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("")
    assert run(capsys, "fit", f, "--family", "mg")[0] == cli.EXIT_DATA


def test_fit_parse_error_line(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("1\n2\n3x\n")
    code, _, err = run(capsys, "fit", f, "--family", "mg")
    assert code == cli.EXIT_DATA
    assert "line 3" in err


def test_unknown_family(capsys, floyd_path):
    assert run(capsys, "fit", floyd_path, "--family", "weibull")[0] == cli.EXIT_USAGE


def test_usage_error_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["fit"])
    assert exc.value.code == cli.EXIT_USAGE


def test_fit_reports_nonconvergence(capsys, floyd_path, monkeypatch):
    real = cli.fit

    def fake(*a, **kw):
        from dataclasses import replace
        return replace(real(*a, **kw), converged=False)

    monkeypatch.setattr(cli, "fit", fake)
    code, out, _ = run(capsys, "fit", floyd_path, "--family", "mr19", "--starts", "2")
    assert code == cli.EXIT_NONCONVERGED
    assert json.loads(out)["converged"] is False


def test_compare_single_value(capsys, tmp_path):
    f = tmp_path / "one.txt"
    f.write_text("5\n")
    assert run(capsys, "compare", f)[0] == cli.EXIT_DATA


def test_compare_unmodified(capsys, floyd_path):
    code, out, _ = run(capsys, "compare", floyd_path, "--set", "unmodified")
    assert code == 0
    lines = [l.split("\t") for l in out.strip().splitlines()]
    assert lines[0] == ["family", "negloglik", "aic", "aicc", "bic",
                        "rank_negloglik", "rank_aic", "rank_aicc", "rank_bic"]
    rows = {l[0]: l for l in lines[1:]}
    assert set(rows) == {"G", "A", "R18a", "R18b", "R19", "R23", "QT", "Pareto"}
    assert rows["Pareto"][5:] == ["8", "8", "8", "8"]
    assert rows["G"][5] == "1"
    assert float(rows["G"][1]) == pytest.approx(375.626, abs=1e-3)


def test_scan_r18b_grid(capsys):
    code, out, _ = run(capsys, "scan", "r18b", "--x=-3.5:1.5:0.1", "--y=-2.5:4.5:0.1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "param1,param2,valid"
    assert len(lines) == 1 + 51 * 71


def test_scan_ma_strip(capsys):
    code, out, _ = run(capsys, "scan", "ma", "--x=-1.5:3.5:0.1")
    assert code == 0
    for line in out.strip().splitlines()[1:]:
        x, _, ok = line.split(",")
        assert int(ok) == int(-1 <= float(x) <= 3)


@pytest.mark.parametrize("args", [["g", "--x=0:1:0"], ["g", "--x=0:1"], ["ma", "--x=0:1:0.1", "--y=0:1:0.1"]])
def test_scan_bad_grid(capsys, args):
    assert run(capsys, "scan", *args)[0] == cli.EXIT_USAGE


def test_curves_unmodified_g_negative_cdf(capsys, floyd_path):
    code, out, _ = run(capsys, "curves", floyd_path, "--families", "g",
                       "--points", 533, "--from", 318, "--to", 850)
    assert code == 0
    header, arr = read_csv(out)
    assert header == ["x", "G_cdf", "G_pdf"]
    x, F = arr[:, 0], arr[:, 1]
    neg = x[F < 0]
    assert neg.size and neg.min() == pytest.approx(372.4, abs=1.5)
    assert neg.max() == pytest.approx(640.7, abs=1.5)
    assert "# histogram" in out


def test_curves_modified_valid_and_equivalent(capsys, floyd_path, tmp_path):
    hist = tmp_path / "hist.csv"
    code, out, _ = run(capsys, "curves", floyd_path, "--families", "mg,mr18a",
                       "--hist-out", hist)
    assert code == 0
    header, arr = read_csv(out)
    assert header == ["x", "MG_cdf", "MG_pdf", "MR18a_cdf", "MR18a_pdf"]
    x = arr[:, 0]
    assert np.all(np.diff(x) > 0)
    assert x[0] == 318 and x[-1] <= 71500 * 1.1
    F = arr[:, 1]
    assert np.all(np.diff(F) >= 0) and F.min() >= 0 and F.max() <= 1
    # after fitting, the two parameterizations describe the same curve
    np.testing.assert_allclose(arr[:, 1], arr[:, 3], rtol=0, atol=1e-9)
    rows = hist.read_text().strip().splitlines()
    assert rows[0] == "bin_lo,bin_hi,count,density"
    assert len(rows) - 1 == 7  # ceil(sqrt(39))
    assert sum(int(r.split(",")[2]) for r in rows[1:]) == 39


def test_sample_deterministic(capsys):
    argv = ["sample", "mg", "--params", "1,1", "--baseline", "pareto:1,1", "-n", 3, "--seed", 7]
    code, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert code == 0 and out1 == out2
    values = parse_values(out1)
    assert len(values) == 3
    assert "\n".join(f"{v:.12g}" for v in values) + "\n" == out1


def test_sample_boundary_accepted(capsys):
    assert run(capsys, "sample", "ma", "--params", "3", "-n", 2)[0] == 0


def test_sample_invalid_rejected(capsys):
    assert run(capsys, "sample", "g", "--params", "0,-0.5", "-n", 2)[0] == cli.EXIT_USAGE
    code, out, _ = run(capsys, "sample", "g", "--params", "0,-0.5", "-n", 2, "--unchecked")
    assert code == 0 and len(out.splitlines()) == 2


def test_sample_bad_baseline(capsys):
    assert run(capsys, "sample", "ma", "--params", "1", "--baseline", "normal:0,1")[0] == cli.EXIT_USAGE
    assert run(capsys, "sample", "ma", "--params", "1", "--baseline", "pareto:-1,1")[0] == cli.EXIT_USAGE


def test_check_data(capsys, floyd_path, tmp_path):
    code, out, _ = run(capsys, "check-data", floyd_path)
    assert code == 0 and "MISMATCH" not in out
    f = tmp_path / "short.txt"
    f.write_text("\n".join(floyd_path.read_text().splitlines()[:-3]))
    assert run(capsys, "check-data", f)[0] == cli.EXIT_DATA


def test_out_file(capsys, tmp_path):
    target = tmp_path / "scan.csv"
    code, out, _ = run(capsys, "scan", "mg", "--x=0:3:1", "--y=0:3:1", "--out", target)
    assert code == 0 and out == ""
    assert target.read_text().startswith("param1,param2,valid\n")


@pytest.mark.parametrize("pin", ["0=1", "2=1", "x=1"])
def test_scan_bad_fixed_index(capsys, pin):
    assert run(capsys, "scan", "ma", "--x=-1:1:0.5", "--fixed", pin)[0] == cli.EXIT_USAGE


def test_scan_fixed_second_parameter(capsys):
    code, out, _ = run(capsys, "scan", "r23", "--x=-3:1:0.5", "--fixed", "2=0")
    assert code == 0
    # with eta = 0 the family reduces to QT, valid exactly for |lambda| <= 1
    for line in out.strip().splitlines()[1:]:
        x, _, ok = line.split(",")
        assert int(ok) == int(abs(float(x)) <= 1)
