from __future__ import annotations

import json

from tatedual import cli

EXPECTED_SHIFTS_P3 = """\
group   p  route   shift  periodicity  certificate         degree
Cp      3  dual        4           18  D(a)                     6
F       3  both       22           72  D(a D^-1)               24
G       3  both       22           72  D(a D^-1)               24
"""


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_shifts_table_p3(capsys):
    code, out, err = run_cli(capsys, "shifts", "--prime", "3")
    assert code == 0
    assert out == EXPECTED_SHIFTS_P3
    assert err == ""


def test_shifts_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "shifts", "--prime", "5")
    _, out2, _ = run_cli(capsys, "shifts", "--prime", "5")
    assert out1 == out2
    assert " 16 " in out1.replace("  ", " ")
    assert "116" in out1


def test_shifts_routes(capsys):
    code, out, _ = run_cli(capsys, "shifts", "--prime", "5", "--route", "dual")
    assert code == 0
    assert out.count("dual") == 3
    code, out, _ = run_cli(capsys, "shifts", "--prime", "5", "--route", "det")
    assert code == 0
    assert "Cp" not in out


def test_composite_prime_rejected(capsys):
    code, out, err = run_cli(capsys, "shifts", "--prime", "4")
    assert code == 2
    assert out == ""
    assert "odd prime" in err


def test_unknown_flag_exits_2(capsys):
    code, _, err = run_cli(capsys, "shifts", "--primes", "3")
    assert code == 2


def test_unknown_subcommand_exits_2(capsys):
    code, _, _ = run_cli(capsys, "transmogrify")
    assert code == 2


def test_verify_congruence(capsys):
    code, out, _ = run_cli(capsys, "verify", "congruence", "--max-prime", "101")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "PASS congruence p=3 invariant_exponent=0 modulus=4"
    assert lines[-1] == "congruence: 25/25 primes verified (p <= 101)"


def test_verify_cancellation(capsys):
    code, out, _ = run_cli(capsys, "verify", "cancellation", "--prime", "3")
    assert code == 0
    assert out.count("PASS cancellation") == 3


def test_verify_nilpotence_small(capsys):
    code, out, _ = run_cli(capsys, "verify", "nilpotence", "--prime", "3", "--max-degree", "9")
    assert code == 0
    assert "PASS nilpotence p=3 k=1 max_degree=9" in out


def test_verify_freeness_small(capsys):
    code, out, _ = run_cli(capsys, "verify", "freeness", "--prime", "3", "--max-degree", "8")
    assert code == 0
    assert "PASS freeness p=3 k=0" in out
    assert "PASS freeness p=3 k=1" in out


def test_sympow_json(capsys):
    code, out, _ = run_cli(capsys, "sympow", "--prime", "3", "--k", "1", "--degree", "2")
    assert code == 0
    blob = json.loads(out)
    assert blob == {
        "p": 3,
        "k": 1,
        "degree": 2,
        "dimension": 3,
        "jordan": {"blocks": [3], "total": 3},
        "tate": {"even_dim": 0, "odd_dim": 0},
        "free": True,
    }


def test_sympow_resource_guard(capsys, monkeypatch):
    monkeypatch.setenv("TATEDUAL_MAX_DIM", "5")
    code, out, err = run_cli(capsys, "sympow", "--prime", "5", "--k", "0", "--degree", "3")
    assert code == 2
    assert "cap" in err


def test_chart_stdout_and_file(tmp_path, capsys):
    code, out, _ = run_cli(
        capsys, "chart", "--group", "Cp", "--prime", "5", "--window", "-20", "20", "-10", "10"
    )
    assert code == 0
    golden = (tmp_path / "c.txt")
    code2, _, _ = run_cli(
        capsys,
        "chart", "--group", "Cp", "--prime", "5",
        "--window", "-20", "20", "-10", "10", "--out", str(golden),
    )
    assert code2 == 0
    assert golden.read_text() == out


def test_chart_bad_directory_is_io_error_not_verification(capsys):
    code, out, err = run_cli(
        capsys, "chart", "--out", "/nonexistent-dir/x.txt", "--window", "-4", "4", "-2", "2"
    )
    assert code == 2
    assert "cannot write" in err


def test_chart_overlay(capsys):
    code, out, _ = run_cli(
        capsys, "chart", "--prime", "3", "--overlay", "--window", "-6", "6", "-4", "4"
    )
    assert code == 0
    assert "# overlay: O survives, x killed" in out


def test_chart_svg_format(capsys):
    code, out, _ = run_cli(
        capsys, "chart", "--format", "svg", "--window", "-6", "6", "-4", "4"
    )
    assert code == 0
    assert out.startswith("<?xml")


def test_chart_default_window(capsys):
    code, out, _ = run_cli(capsys, "chart", "--prime", "3")
    assert code == 0
    assert "window: t-s in [-18, 18], s in [-10, 10]" in out


def test_verification_failure_exit_code(capsys, monkeypatch):
    from tatedual import duality_shifts as ds

    def broken(group, params):
        raise ds.VerificationFailure("synthetic failure")

    monkeypatch.setattr(ds, "shift_dual_route", broken)
    code, out, err = run_cli(capsys, "shifts", "--prime", "3")
    assert code == 1
    assert "VERIFICATION FAILED" in out
