import json
from pathlib import Path

import pytest

from qwreath.cli import main, to_latex

ROOT = Path(__file__).resolve().parents[1]


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.strip()


def test_mul_quadratic(capsys):
    assert run(capsys, "mul", "H1", "H1", "-i", "hecke") == (0, "(q - 1)*H[s1] + q")


def test_mul_degenerate(capsys):
    assert run(capsys, "mul", "H1", "(X⊗1)", "-i", "degenerate", "--window", "8") == (0, "(1⊗X)*H[s1] - 1")


def test_identity_unchanged(capsys):
    assert run(capsys, "normal-form", "1", "-i", "hecke")[1] == "1"
    assert run(capsys, "normal-form", "(q-1)*H1 + 2", "-i", "hecke")[1] == "(q - 1)*H[s1] + 2"


def test_left_form(capsys):
    assert run(capsys, "normal-form", "(X⊗1)*H1", "--left", "-i", "degenerate")[1] == "H[s1]*(1⊗X) - 1"


def test_check_files(capsys):
    code, out = run(capsys, "check", "--instance", str(ROOT / "instances/hecke.toml"), "-d", "3")
    assert code == 0 and "exact" in out
    code, out = run(capsys, "check", "--instance", str(ROOT / "instances/hu.toml"), "-m", "2")
    assert code == 0 and "σ(R)=R" in out
    code, out = run(capsys, "check", "--instance", str(ROOT / "instances/bad.toml"))
    assert code == 1 and "witness" in out


def test_check_json_file(capsys, tmp_path):
    f = tmp_path / "yok.json"
    f.write_text(json.dumps({"instance": "yokonuma", "m": 3, "d": 2}))
    code, out = run(capsys, "check", "-i", str(f), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1 and data["report"]["certification"] == "exact"


def test_unknown_instance(capsys):
    assert main(["check", "-i", "nope"]) == 2


def test_window_environment(capsys, monkeypatch):
    monkeypatch.setenv("QWREATH_WINDOW", "3")
    code, out = run(capsys, "check", "-i", "affine", "--format", "json")
    assert code == 0 and json.loads(out)["report"]["certification"] == "window-certified"


def test_grand_loop_and_oracle(capsys):
    assert run(capsys, "grand-loop", "-i", "hu", "-m", "2")[0] == 0
    assert run(capsys, "oracle", "assoc", "-i", "yokonuma", "-m", "2")[0] == 0
    assert run(capsys, "oracle", "assoc", "-i", "ariki_koike", "-m", "2")[0] == 1
    assert run(capsys, "oracle", "hm-typeB", "-m", "1", "--seed", "4")[0] == 0


def test_hu_commands(capsys):
    assert run(capsys, "hu", "b1", "-m", "1", "--dual-canonical")[1] == "2*c[s1] + (v + v^-1)"
    assert run(capsys, "hu", "h", "-m", "1", "--at", "v=1")[1] == "2*T[w_{1,1}]"
    code, out = run(capsys, "hu", "z", "-m", "2", "--format", "json")
    fams = json.loads(out)["families"]
    assert fams["3.1"].startswith("v^18")
    assert run(capsys, "hu", "gen", "-m", "1", "-d", "3")[0] == 0
    assert run(capsys, "hu", "member", "z*T[1]", "-m", "2")[0] == 0
    assert run(capsys, "hu", "member", "T[2]", "-m", "2")[0] == 1


def test_hu_basis_latex(capsys):
    code, out = run(capsys, "hu", "basis", "-m", "1", "--format", "latex")
    assert code == 0 and out.startswith("\\begin{tabular}")


def test_schur_commands(capsys):
    code, out = run(capsys, "schur", "--instance", "heckeA", "-n", "2", "-d", "2", "--prime", "auto", "--seed", "7",
                    "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "pass"
    assert data["dim_commutant"] == [10, 10] and data["dim_bicommutant"] == [2, 2]
    code, out = run(capsys, "schur", "--instance", "heckeA", "-n", "1", "-d", "2", "--format", "json")
    assert json.loads(out)["verdict"] == "skipped" and code == 1


def test_json_is_byte_identical(capsys):
    a = run(capsys, "schur", "-i", "heckeA", "-n", "2", "-d", "2", "--seed", "5", "--format", "json")[1]
    b = run(capsys, "schur", "-i", "heckeA", "-n", "2", "-d", "2", "--seed", "5", "--format", "json")[1]
    assert a == b


def test_latex_labels():
    assert to_latex("I[2.1.~3.~2]") == "$I_{2.1.\\bar{3}.\\bar{2}}$"
    assert to_latex("v^-1*T[s1 s2]") == "$v^{-1} T_{1.2}$"


def test_acceptance_single(capsys):
    code, out = run(capsys, "acceptance", "4")
    assert code == 0 and out.startswith("criterion  4: PASS")


def test_report(capsys, tmp_path):
    code, out = run(capsys, "report", "--plot", str(tmp_path), "--quick")
    assert code == 0
    for name in ("z_coefficients", "hecke_commutant"):
        for ext in ("csv", "json", "png"):
            assert (tmp_path / f"{name}.{ext}").stat().st_size > 0
    rows = json.loads((tmp_path / "hecke_commutant.json").read_text())["rows"]
    assert all(r["commutant"] == r["binomial"] for r in rows)
