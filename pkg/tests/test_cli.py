import json
import subprocess
import sys

import pytest

from dyndeg import cli

GOLDEN = "kind: monomial\nmatrix: [[2, 1], [1, 1]]\n"
SIGMA = 'kind: rational\nk: 2\nmap: "x1*x2, x0*x2, x0*x1"\noptions: {N: 4}\n'
TRI = "kind: monomial-triangular\nmatrix: [[2, 0], [5, 3]]\nl: 1\n"
PROD = ('kind: product\nbase: {kind: rational, k: 1, map: "x0^2, x1^2"}\n'
        'fiber: {kind: rational, k: 1, map: "x0^3, x1^3"}\n')
PROD_ID = "kind: product\nbase: {kind: monomial, matrix: [[2]]}\nfiber: {kind: monomial, matrix: [[1]]}\n"
SKEW = ('kind: skew\nbase: {kind: rational, k: 1, map: "x0^2 + x1^2, x0*x1"}\nm: 1\n'
        'fiber: "z0^2, y1*z1^2 + z0*z1"\n')


@pytest.fixture
def run(tmp_path, capsys):
    def _run(text, *args):
        path = tmp_path / "sys.yaml"
        path.write_text(text)
        argv = [args[0], str(path), *args[1:]]
        code = cli.main(argv)
        out = capsys.readouterr()
        return code, out.out, out.err
    return _run


def test_degrees_examples(run):
    code, out, _ = run(GOLDEN, "degrees")
    assert code == 0 and out.strip() == "d = [1, 2.618033989, 1] (eigenvalue-exact)"
    code, out, _ = run(SIGMA, "degrees")
    assert code == 0 and out.strip() == "d1 = 1 (upper bound 1 at n=2, sequence-estimate)"
    code, out, _ = run(TRI, "degrees")
    lines = out.splitlines()
    assert lines[0].split() == ["base", "d", "=", "[1,", "2]", "(eigenvalue-exact)"]
    assert "[1, 3]" in lines[1] and "[1, 3, 6]" in lines[2]


def test_sequence_examples(run):
    code, out, _ = run(GOLDEN, "sequence", "--p", "1", "--n", "2")
    assert code == 0 and "[3, 8]" in out
    code, out, _ = run(PROD, "sequence", "--p", "1", "--n", "3")
    assert code == 0 and "b         [8, 22, 62]" in out
    code, out, _ = run(SIGMA, "sequence", "--n", "4")
    assert "[2, 1, 2, 1]" in out


def test_sequence_json_uses_decimal_strings(run):
    code, out, _ = run(GOLDEN, "sequence", "--n", "100", "--json", "-")
    rec = json.loads(out[out.index("{"):])
    assert all(isinstance(v, str) for v in rec["total"])
    assert int(rec["total"][-1]) > 2 ** 64


def test_verify_examples(run):
    code, out, _ = run(TRI, "verify", "--check", "theorem1.1")
    assert code == 0 and "witnesses j = [0->0, 1->0, 2->1]" in out
    code, out, _ = run(GOLDEN, "verify", "--check", "logconcavity")
    assert code == 0
    code, out, _ = run(PROD_ID, "verify", "--check", "corollary1.3")
    assert code == 0 and "predicate false; implication vacuous; pass" in out
    code, out, _ = run(PROD, "verify", "--check", "lemma4.2", "--n", "25")
    assert code == 0 and "gap at n=25: 0.08434" in out


def test_verify_neutral_names_match_aliases(run):
    a = run(TRI, "verify", "--check", "product-formula")
    b = run(TRI, "verify", "--check", "theorem1.1")
    assert a == b


def test_equal_dimension_checks(run):
    code, out, _ = run(GOLDEN + "options: {conjugator: [[1, 1], [0, 1]]}\n", "verify", "--check", "corollary1.2")
    assert code == 0 and "same charpoly: True" in out
    code, out, _ = run(SIGMA.replace("{N: 4}", "{N: 4, conjugator: [[1, 2, 0], [0, 1, 3], [1, 0, 1]]}"),
                       "verify", "--check", "equal-dimension")
    assert code == 0 and "d1 upper bounds 1 and 1: equal" in out


def test_exit_codes(run):
    assert run('kind: rational\nk: 2\nmap: "x0 + x1^2, x1, x2"\n', "degrees")[0] == 2
    assert run("kind: monomial\nmatrix: [[1, 2], [2, 4]]\n", "degrees")[0] == 2
    assert run("kind: nonsense\n", "degrees")[0] == 2
    assert run("kind: monomial\nmatrix: [[1, 2]\n", "degrees")[0] == 2
    assert run("kind: monomial\nmatrix: [[1.5]]\n", "degrees")[0] == 2
    five = "kind: monomial\nmatrix: [[2,0,0,0,0],[0,2,0,0,0],[0,0,2,0,0],[0,0,0,2,0],[0,0,0,1,2]]\n"
    assert run(five, "sequence", "--p", "2", "--n", "2")[0] == 3
    assert run(five, "sequence", "--p", "1", "--n", "2")[0] == 0
    assert run(GOLDEN, "verify", "--check", "theorem1.1")[0] == 3
    assert run(SIGMA, "sequence", "--p", "2")[0] == 3
    assert run(TRI, "verify", "--check", "corollary1.2")[0] == 3


def test_failed_verification_exit_code(run, monkeypatch):
    monkeypatch.setitem(cli.VERIFIERS, "powerrule", lambda s, a: (False, {"status": "fails"}, ["forced"]))
    code, out, _ = run(GOLDEN, "verify", "--check", "powerrule")
    assert code == 1 and "FAIL" in out


def test_decimal_string_integers(run):
    big = "123456789012345678901234567890"
    code, out, _ = run(f'kind: monomial\nmatrix: [["{big}", "0"], ["1", "1"]]\n', "degrees", "--json", "-")
    assert code == 0
    rec = json.loads(out[out.index("{"):])
    assert rec["total"]["exact"]["2"] == big


def test_json_round_trip_reverification(run, tmp_path):
    out_path = tmp_path / "report.json"
    code, _, _ = run(TRI, "report", "--json", str(out_path))
    assert code == 0
    rec = json.loads(out_path.read_text())
    formula = rec["checks"]["product-formula"]
    assert cli.reverify(json.loads(json.dumps(formula))) == formula["status"] == "holds"


def test_report_skips_unsupported_checks(run, tmp_path):
    out_path = tmp_path / "r.json"
    code, _, _ = run(SIGMA, "report", "--json", str(out_path))
    rec = json.loads(out_path.read_text())
    assert code == 0
    assert "unsupported" in rec["checks"]["product-formula"]
    assert rec["degrees"]["d1_upper_bound"] == 1.0


def test_seeded_skew_runs_are_identical(run):
    a = run(SKEW, "sequence", "--n", "4", "--seed", "9", "--json", "-")
    b = run(SKEW, "sequence", "--n", "4", "--seed", "9", "--json", "-")
    assert a == b
    rec = json.loads(a[1][a[1].index("{"):])
    assert rec["relative"] == ["2", "4", "8", "16"]


def test_batch_file_keeps_order(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    path = tmp_path / "batch.yaml"
    path.write_text("systems:\n"
                    "  - {name: first, kind: monomial, matrix: [[2, 1], [1, 1]]}\n"
                    "  - {name: second, kind: monomial-triangular, matrix: [[2, 0], [5, 3]], l: 1}\n"
                    "  - {name: third, kind: monomial, matrix: [[3]]}\n")
    assert cli.main(["degrees", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.index("== first") < out.index("== second") < out.index("== third")


def test_console_entry_point(tmp_path):
    path = tmp_path / "g.yaml"
    path.write_text(GOLDEN)
    res = subprocess.run([sys.executable, "-m", "dyndeg.cli", "degrees", str(path)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "2.618033989" in res.stdout
