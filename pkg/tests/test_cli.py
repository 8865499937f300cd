import json
import subprocess
import sys

import pytest

from concordkit.cli import main
from concordkit.matrixfile import format_matrix
from concordkit.seifert import TREFOIL


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_times(text):
    data = json.loads(text)
    if isinstance(data, dict):
        for c in data.get("checks", []):
            c.pop("wall_time")
    return data


def test_alex_output(capsys):
    code, out, _ = run(capsys, "alex", "paper_A.mat")
    assert code == 0 and out.strip() == "Φ₃₀(t) = t^8+t^7-t^5-t^4-t^3+t+1"
    code, out, _ = run(capsys, "alex", "paper_C.mat")
    assert code == 0 and out.startswith("Φ₃₀(t)^2 = t^16+")
    code, out, _ = run(capsys, "alex", "trefoil.mat")
    assert out.strip() == "Φ₆(t) = t^2-t+1"


def test_sig_integral(capsys):
    code, out, _ = run(capsys, "sig", "trefoil.mat", "--integral")
    assert code == 0 and out.strip() == "-4/3"
    code, out, _ = run(capsys, "sig", "granny.mat", "--integral")
    assert out.strip() == "-8/3"
    code, out, _ = run(capsys, "sig", "trefoil.mat", "--omega-u", "inf")
    assert code == 0 and out.strip().endswith("-2")


def test_covers_table(capsys):
    code, out, _ = run(capsys, "covers", "paper_C.mat", "--max-k", "128", "--prime-powers")
    assert code == 0
    rows = [line.split() for line in out.splitlines() if line.strip() and line.split()[0].isdigit()]
    assert [int(r[0]) for r in rows][:5] == [2, 3, 4, 5, 7]
    assert all(r[1] == "1" for r in rows) and int(rows[-1][0]) == 128
    code, out, _ = run(capsys, "covers", "trefoil.mat", "--max-k", "8", "--prime-powers")
    assert code == 1
    code, out, _ = run(capsys, "covers", "trefoil.mat", "--max-k", "6")
    assert code == 0 and "infinite" in out


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["alex", "paper_B.mat"], 0),
        (["module", "paper_B.mat"], 0),
        (["module", "paper_C.mat"], 0),
        (["arf", "paper_C.mat"], 0),
        (["arf", "trefoil.mat"], 0),
        (["foxmilnor", "paper_C.mat"], 0),
        (["foxmilnor", "trefoil.mat"], 1),
        (["metabolizer", "granny.mat", "--search"], 1),
        (["metabolizer", "trefoil.mat", "--search"], 1),
        (["blanchfield", "paper_C.mat"], 0),
        (["blanchfield", "paper_B.mat", "--x", "1;0", "--y", "0;1"], 0),
        (["blanchfield", "paper_C.mat", "--x", "1;1"], 2),
        (["blanchfield", "unknot.mat"], 2),
        (["graft", "paper_C.mat", "--companion", "granny.mat"], 0),
        (["graft", "paper_C.mat", "--rho=-8/3", "--arf", "0"], 0),
        (["graft", "paper_C.mat", "--rho", "1/0", "--arf", "0"], 2),
        (["graft", "paper_C.mat"], 2),
        (["certify", "paper_C.mat", "--companion", "granny.mat"], 0),
        (["certify", "paper_C.mat", "--companion", "trefoil.mat"], 1),
        (["certify", "paper_C.mat", "--rho=-8/3", "--arf", "0", "--eta", "t^8+t^7-t^5-t^4-t^3+t+1"], 1),
        (["certify", "paper_A.mat", "--companion", "granny.mat"], 1),
        (["certify", "paper_B.mat", "--companion", "granny.mat"], 1),
        (["certify"], 2),
        (["sig", "trefoil.mat", "--omega-u", "0"], 2),
        (["covers", "trefoil.mat", "--max-k", "1"], 2),
    ],
)
def test_exit_codes(capsys, argv, expected):
    code, _, _ = run(capsys, *argv)
    assert code == expected


def test_metabolizer_basis(capsys, tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("1 0 0 0\n0 1 0 0\n")
    code, out, _ = run(capsys, "metabolizer", "granny.mat", "--basis", str(good))
    assert code in (0, 1)
    bad = tmp_path / "bad.txt"
    bad.write_text("1 x\n")
    assert run(capsys, "metabolizer", "granny.mat", "--basis", str(bad))[0] == 2
    assert run(capsys, "metabolizer", "granny.mat", "--basis", str(tmp_path / "missing"))[0] == 2


def test_metabolizer_diagonal_basis_of_b(capsys, tmp_path):
    from concordkit.report import diagonal_metabolizer

    basis = tmp_path / "b.txt"
    basis.write_text("\n".join(" ".join(map(str, v)) for v in diagonal_metabolizer(8)) + "\n")
    code, out, _ = run(capsys, "metabolizer", "paper_B.mat", "--basis", str(basis))
    assert code == 0 and "spans a metabolizer" in out


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.mat"
    bad.write_text("2\n1 0\n0 1\n")
    code, _, err = run(capsys, "alex", str(bad))
    assert code == 2 and "not a Seifert matrix" in err
    bad.write_text("2\n1 0\n")
    code, _, err = run(capsys, "alex", str(bad))
    assert code == 2 and "line 2" in err
    with pytest.raises(SystemExit) as info:
        main(["alex", "paper_A.mat", "--no-such-flag"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_user_matrix_file(capsys, tmp_path):
    path = tmp_path / "t.mat"
    path.write_text(format_matrix(TREFOIL, comment="trefoil"))
    code, out, _ = run(capsys, "arf", str(path))
    assert code == 0 and out.strip().endswith("1")


@pytest.mark.parametrize(
    "argv",
    [
        ["alex", "paper_C.mat"],
        ["module", "paper_C.mat"],
        ["covers", "paper_C.mat", "--max-k", "32", "--prime-powers"],
        ["sig", "granny.mat", "--integral"],
        ["arf", "granny.mat"],
        ["foxmilnor", "paper_C.mat"],
        ["blanchfield", "paper_C.mat"],
        ["graft", "paper_C.mat", "--companion", "granny.mat"],
        ["certify", "paper_C.mat", "--companion", "granny.mat"],
    ],
)
def test_json_is_deterministic(capsys, argv):
    first = run(capsys, *argv, "--json")[1]
    second = run(capsys, *argv, "--json", "--seed", "7")[1]
    assert strip_times(first) == strip_times(second)
    data = json.loads(first)
    if isinstance(data, list):
        # certificates carry no timings, so the bytes must match
        assert first == second
    if isinstance(data, dict):
        assert data["schema"] == "concordkit.report/1"
        assert len(data["input_digest"]) == 64
        assert set(data["checks"][0]) == {"name", "verdict", "claim", "witnesses", "wall_time"}


def test_certify_replay(capsys, tmp_path):
    out_file = tmp_path / "cert.json"
    code, _, _ = run(capsys, "certify", "paper_C.mat", "--companion", "granny.mat", "--output", str(out_file))
    assert code == 0
    code, out, _ = run(capsys, "certify", "--replay", str(out_file))
    assert code == 0 and "replay matches" in out

    data = json.loads(out_file.read_text())
    data[1]["witnesses"]["pairing_nonzero"] = False
    out_file.write_text(json.dumps(data))
    assert run(capsys, "certify", "--replay", str(out_file))[0] == 1

    out_file.write_text("[1, 2]")
    assert run(capsys, "certify", "--replay", str(out_file))[0] == 2
    out_file.write_text("not json")
    assert run(capsys, "certify", "--replay", str(out_file))[0] == 2


def test_paper_verify_and_replay(capsys, tmp_path):
    code, out, _ = run(capsys, "paper-verify", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] and len(data["checks"]) == 10
    assert all(c["verdict"] == "pass" for c in data["checks"])
    report = tmp_path / "report.json"
    report.write_text(out)
    code, out, _ = run(capsys, "certify", "--replay", str(report))
    assert code == 0 and "replay matches" in out


def test_paper_verify_text(capsys):
    code, out, _ = run(capsys, "paper-verify")
    assert code == 0
    assert out.count("[PASS]") == 10 and "all checks pass" in out


def test_paper_verify_with_trefoil_companion(capsys):
    code, out, _ = run(capsys, "paper-verify", "--companion", "trefoil.mat", "--json")
    assert code == 1
    checks = json.loads(out)["checks"]
    assert [c["verdict"] for c in checks[:8]] == ["pass"] * 8
    cert = checks[8]
    assert cert["verdict"] == "fail"
    assert cert["witnesses"]["one_solvable"]["failed_check"] == "companion_arf"


def test_paper_verify_with_a_base(capsys):
    code, out, _ = run(capsys, "paper-verify", "--base", "paper_A.mat", "--json")
    assert code == 1
    cert = json.loads(out)["checks"][8]
    assert cert["verdict"] == "fail"
    assert cert["witnesses"]["not_one_point_five"]["error"] == "HypothesisError"


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "concordkit.cli", "alex", "paper_A.mat"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "Φ₃₀(t) = t^8+t^7-t^5-t^4-t^3+t+1"
