import json

from gge import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_measure_chi(capsys):
    code, out, _ = run(capsys, "measure", "--state", "chi", "--class", "2")
    assert code == 0
    assert "G(2,1) = 0.888888888889 (= 8/9)" in out
    assert "G(2,2) = 1 (= 1)" in out
    assert "G(2,3) = 0.666666666667 (= 2/3)" in out
    assert "E_G^(2) = 0.851851851852 (= 23/27)" in out


def test_measure_ghz6_class1(capsys):
    code, out, _ = run(capsys, "measure", "--state", "ghz", "--n", "6",
                       "--class", "1")
    assert code == 0
    assert "G(1) = 1 (= 1)" in out
    assert "E_G^(1) = 1 (= 1)" in out


def test_measure_gaps_filter(capsys):
    code, out, _ = run(capsys, "measure", "--state", "chi", "--class", "2",
                       "--gaps", "3")
    assert code == 0
    assert "G(2,3)" in out and "G(2,1)" not in out


def test_measure_product_state_file(capsys, tmp_path):
    path = tmp_path / "product.json"
    amp = [[0.0, 0.0]] * 16
    amp[0] = [1.0, 0.0]
    path.write_text(json.dumps({"version": 1, "num_sites": 4, "local_dim": 2,
                                "amplitudes": amp}))
    code, out, _ = run(capsys, "measure", "--state-file", str(path),
                       "--class", "2")
    assert code == 0
    assert "E_G^(2) = 0 (= 0)" in out


def test_measure_rejects_bad_state_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    amp = [[0.5, 0.0]] + [[0.0, 0.0]] * 15
    path.write_text(json.dumps({"version": 1, "num_sites": 4, "local_dim": 2,
                                "amplitudes": amp}))
    code, _, err = run(capsys, "measure", "--state-file", str(path),
                       "--class", "2")
    assert code == 3
    assert "norm" in err


def test_usage_errors(capsys):
    assert run(capsys, "measure", "--state", "chi")[0] == 2       # no --class
    assert run(capsys, "measure", "--state", "nope", "--class", "2")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "ising", "--lambda-min", "0", "--steps", "0",
               "--out", "x.csv")[0] == 2


def test_tables_4_all_match(capsys):
    code, out, _ = run(capsys, "tables", "4")
    assert code == 0
    assert "DISCREPANCY" not in out
    assert out.count("ok") == 25


def test_tables_1_and_2(capsys):
    code, out, _ = run(capsys, "tables", "1")
    assert code == 0
    assert "DISCREPANCY" not in out
    code, out2, _ = run(capsys, "tables", "2")
    assert code == 0
    assert "DISCREPANCY" not in out2


def test_tables_3_flags_relabeled_row(capsys):
    code, out, _ = run(capsys, "tables", "3")
    assert code == 0
    epr2_line = next(l for l in out.splitlines() if l.strip().startswith("EPR2"))
    g1_line = next(l for l in out.splitlines() if l.strip().startswith("G1"))
    assert "DISCREPANCY" not in epr2_line
    assert g1_line.count("DISCREPANCY") == 2
    assert "subset-uniform class-2 values agree" in out


def test_mes_check_def2_ghz2x3(capsys):
    code, out, _ = run(capsys, "mes-check", "--state", "ghz2x3",
                       "--nmax", "3")
    assert code == 0
    assert "NOT genuine" in out
    assert "witness subset (1, 2, 3)" in out


def test_mes_check_def1_chi(capsys):
    code, out, _ = run(capsys, "mes-check", "--state", "chi")
    assert code == 0
    assert "definition 1" in out and "genuine" in out
    assert "NOT genuine" not in out


def test_mes_check_needs_nmax_for_large_states(capsys):
    code, _, err = run(capsys, "mes-check", "--state", "ghz", "--n", "6")
    assert code == 2
    assert "--nmax" in err


def test_ising_sweep_csv(capsys, tmp_path):
    out_path = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "ising", "--lambda-min", "0.5",
                       "--lambda-max", "1.5", "--steps", "3",
                       "--max-gap", "2", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0].startswith("lambda,px,pz,pxx_1,pxx_2")
    assert len(lines) == 4
    assert "g1 peaks at lambda = 1" in out


def test_ising_single_point(capsys, tmp_path):
    out_path = tmp_path / "one.csv"
    code, _, _ = run(capsys, "ising", "--lambda-min", "1", "--steps", "1",
                     "--max-gap", "1", "--out", str(out_path))
    assert code == 0
    assert len(out_path.read_text().splitlines()) == 2


def test_ising_quadrature_failure_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "ising", "--lambda-min", "0.5", "--steps", "1",
                       "--max-gap", "1", "--quad-tol", "1e-300",
                       "--out", str(tmp_path / "x.csv"))
    assert code == 4
    assert "convergence" in err


def test_ed_check(capsys):
    code, out, _ = run(capsys, "ed-check", "--n", "8", "--lambda", "0.25",
                       "--boundary", "periodic")
    assert code == 0
    assert "max |delta| on diagonal correlators" in out
    tail = out.rsplit("= ", 1)[1]
    assert float(tail) < 1e-3


def test_ed_check_broken_phase(capsys):
    code, out, _ = run(capsys, "ed-check", "--n", "10", "--lambda", "1.5",
                       "--boundary", "periodic")
    assert code == 0
    assert "OUTSIDE" not in out
    assert "|pxz_1|" in out
