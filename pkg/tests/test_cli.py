import json
import subprocess
import sys
from pathlib import Path

import pytest

from sosbound.assumption import AssumptionReport
from sosbound.cli import CertifyReport, GradientReport, load_problem, main
from sosbound.degbound import DegreeBoundReport
from sosbound.gradpipe import CopositivityInstance

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_exit_codes(capsys):
    assert run(capsys, "check", PROBLEMS / "four_point.json")[0] == 0
    code, out, _ = run(capsys, "check", "--json", PROBLEMS / "three_point_a0.json")
    assert code == 1
    rep = AssumptionReport.from_json(json.loads(out))
    assert not rep.holds_at_infinity and rep.witness is not None
    assert rep.to_json() == json.loads(out)


def test_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"objective": "x1",\n "constraints": [}')
    code, _, err = run(capsys, "check", bad)
    assert code == 2 and ":2:" in err


def test_parse_error_position(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"objective": "x1 +* x2", "constraints": ["x1^2 - 1", "x2^2 - 1"]}))
    code, _, err = run(capsys, "bound", bad)
    assert code == 2 and "column" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2
    assert run(capsys, "check", PROBLEMS / "missing.json")[0] == 2


def test_bound_report(capsys):
    code, out, _ = run(capsys, "bound", "--json", PROBLEMS / "three_point.json")
    assert code == 0
    rep = DegreeBoundReport.from_json(json.loads(out))
    assert rep.sos_order == 2 and rep.frak_n == 2
    code, out, _ = run(capsys, "bound", "--json", PROBLEMS / "binary3.json")
    assert DegreeBoundReport.from_json(json.loads(out)).sos_order == 3


def test_certify_exact_example_3_1(capsys, tmp_path):
    cert_path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "certify", "--exact", "--json", "-o", cert_path, PROBLEMS / "four_point.json")
    assert code == 0
    obj = json.loads(out)
    rep = CertifyReport.from_json(obj, 2)
    assert rep.residual.exact_zero and rep.residual.residual == 0
    assert rep.to_json() == obj
    assert json.loads(cert_path.read_text())["fstar"] == "0"


def test_certify_numeric_example_3_2(capsys):
    code, out, _ = run(capsys, "certify", "--json", PROBLEMS / "three_point.json")
    rep = CertifyReport.from_json(json.loads(out), 2)
    assert code == 0
    assert rep.values[-1]["order"] == 2
    assert rep.values[-1]["fd"] == pytest.approx(-1, abs=1e-6)
    assert "attainment not guaranteed: singular optimizer" in rep.notes


def test_certify_exact_refuses_singular_optimizer(capsys):
    code, out, _ = run(capsys, "certify", "--exact", PROBLEMS / "three_point.json")
    assert code == 3
    assert "no square-root certificate" in out


def test_certify_order_below_floor(capsys):
    assert run(capsys, "certify", "--order", "0", PROBLEMS / "four_point.json")[0] == 2


def test_certify_assumption_failure(capsys):
    assert run(capsys, "certify", PROBLEMS / "three_point_a0.json")[0] == 1


def test_relax_only_mode(capsys, tmp_path):
    path = tmp_path / "nonsquare.json"
    path.write_text(json.dumps({"objective": "x1 + x2", "constraints": ["x1^2 + x2^2 - 1"]}))
    code, out, _ = run(capsys, "certify", "--json", "--order", "1", path)
    rep = CertifyReport.from_json(json.loads(out), 2)
    assert code == 0 and rep.mode == "relax-only"
    assert rep.values[0]["fd"] == pytest.approx(-(2**0.5), abs=1e-6)
    assert run(capsys, "certify", path)[0] == 2
    assert run(capsys, "check", path)[0] == 2


def test_copositive_commands(capsys):
    code, out, _ = run(capsys, "copositive", "--json", PROBLEMS / "identity2.json")
    assert code == 0
    inst = CopositivityInstance.from_json(json.loads(out))
    assert inst.verdict == "copositive"
    assert run(capsys, "copositive", PROBLEMS / "not_copositive.json")[0] == 1
    assert run(capsys, "copositive", PROBLEMS / "vanishing_minor.json")[0] == 3
    assert run(capsys, "copositive", "--lambda", "2", PROBLEMS / "not_copositive.json")[0] == 1


def test_gradient_command(capsys):
    code, out, _ = run(capsys, "gradient", "--json", PROBLEMS / "gradient_quartic.json")
    rep = GradientReport.from_json(json.loads(out))
    assert code == 0 and rep.bound == 2
    assert rep.value == pytest.approx(0, abs=1e-6)


def test_term_list_input():
    prob = load_problem(str(PROBLEMS / "binary1.json"))
    assert prob.is_square and prob.nvars == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "sosbound", "check", str(PROBLEMS / "four_point.json")],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "yes" in res.stdout
