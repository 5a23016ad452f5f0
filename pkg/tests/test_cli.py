import subprocess
import sys

import pytest

from fraccat.cli import COMMANDS, main
from fraccat.report import parse_summary

SPEC_COMMANDS = [
    "check-category", "check-lf", "localize", "local-objects", "saturate", "kb-build", "verify-tr", "thick",
    "verdier", "perp", "bousfield", "gamma", "recollement-idem", "abelianize", "modloc",
]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_every_command_is_registered():
    assert set(SPEC_COMMANDS) <= set(COMMANDS)


def test_check_lf_span_fails_with_witness(capsys):
    code, out, _ = run(capsys, "check-lf", "fixtures/span.cat", "--sigma", "σ")
    assert code == 1
    assert "('σ', 'f')" in out
    assert parse_summary(out)["status"] == "FAIL"


def test_localize_interval(capsys):
    code, out, _ = run(capsys, "localize", "fixtures/interval.cat", "--sigma", "σ")
    assert code == 0
    assert parse_summary(out)["status"] == "PASS"
    assert "seed: 1" in out


def test_modloc_z6(capsys):
    code, out, _ = run(capsys, "modloc", "--ring", "z6", "--mult", "1,3")
    assert code == 0
    assert "order 2" in out


def test_modloc_closes_the_set(capsys):
    code, out, _ = run(capsys, "modloc", "--ring", "z4", "--mult", "1,2")
    assert code == 0
    assert "added by multiplicative closure: 0" in out


@pytest.mark.parametrize("argv,expected", [
    (["check-category", "interval.cat"], 0),
    (["check-category", "corrupted-interval.cat"], 1),
    (["local-objects", "chain3.cat"], 0),
    (["saturate", "chain3.cat", "--sigma", "xy,τ"], 0),
    (["kb-build", "vect"], 0),
    (["verify-tr", "product", "--dim-cap", "1", "--tr4-budget", "5"], 0),
    (["verify-tr", "vect", "--dim-cap", "1", "--corrupt", "--tr4-budget", "2"], 1),
    (["verdier", "product", "--dim-cap", "1", "--gen", "0:P1"], 0),
    (["perp", "product", "--dim-cap", "1", "--gen", "0:P1"], 0),
    (["bousfield", "product", "--dim-cap", "1", "--gen", "0:P1"], 0),
    (["gamma", "product", "--dim-cap", "1", "--gen", "0:P1"], 0),
    (["recollement-idem", "product.alg", "--e", "1,0", "--dim-cap", "1"], 0),
    (["abelianize", "vect"], 0),
])
def test_exit_codes(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == expected
    assert parse_summary(out)["status"] == ("PASS" if expected == 0 else "FAIL")


def test_escaped_cones_are_reported(capsys):
    code, out, _ = run(capsys, "thick", "product", "--dim-cap", "1", "--gen", "0:P1")
    assert code == 1
    assert "[FAIL] no cone escaped the model caps" in out


@pytest.mark.parametrize("argv,fragment", [
    (["check-lf", "interval.cat", "--sigma", "σ,bogus"], "--sigma:1:3:"),
    (["modloc", "--ring", "z6", "--mult", "1,x"], "--mult:1:3:"),
    (["check-category", "no-such-file.cat"], "no such file"),
    (["modloc", "--ring", "z6", "--mult", "1", "--p", "4"], "--p:"),
])
def test_input_errors_exit_2(capsys, argv, fragment):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert fragment in err


def test_parse_error_position_from_file(capsys, tmp_path):
    bad = tmp_path / "bad.cat"
    bad.write_text("objects X Y\nmorphism s X Q\n", encoding="utf-8")
    code, _, err = run(capsys, "check-category", str(bad))
    assert code == 2
    assert f"{bad}:2:14:" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["modloc", "--ring", "z6"])
    assert exc.value.code == 2


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.txt"
    code, out, _ = run(capsys, "modloc", "--ring", "z6", "--mult", "1,3", "-o", str(target))
    assert code == 0
    assert out.strip() == f"PASS: report written to {target}"
    assert parse_summary(target.read_text(encoding="utf-8"))["status"] == "PASS"


def test_reports_are_deterministic(capsys):
    first = run(capsys, "suite", "--only", "1,2,7", "--seed", "3")
    second = run(capsys, "suite", "--only", "1,2,7", "--seed", "3")
    assert first[0] == 0
    assert first[1] == second[1]
    assert "seed: 3" in first[1]
    assert "criterion 1: PASS in" in first[2]
    assert " s\n" not in first[1]


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "fraccat", "modloc", "--ring", "z6", "--mult", "1,3"],
                          capture_output=True, text=True, cwd=tmp_path, timeout=120)
    assert proc.returncode == 0
    assert "order 2" in proc.stdout
