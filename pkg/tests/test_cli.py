import json

import pytest

from qfermion import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_diagnostic_only_exits_zero(capsys):
    code, out, _ = run(capsys, "verify", "--tier", "diagnostic", "--max-n", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["diag_fail"] > 0 and doc["summary"]["core_pass"] == 0
    fails = {(r["id"], json.dumps(r["params"], sort_keys=True)) for r in doc["results"] if r["status"] == "exact-fail"}
    assert ("thm-3.4", json.dumps({"i": 1, "n": 1, "reading": "printed"}, sort_keys=True)) in fails


def test_verify_empty_grid(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "-1")
    assert code == 0 and json.loads(out)["results"] == []


def test_verify_report_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--tier", "core", "--max-n", "0", "--report", str(path))
    assert code == 0 and "core:" in out
    assert json.loads(path.read_text())["summary"]["core_fail"] == 0


def test_verify_bad_q(capsys):
    code, _, err = run(capsys, "verify", "--q", "2", "--max-n", "0")
    assert code == 2 and "configuration error" in err


def test_core_failure_sets_exit_code(capsys, monkeypatch):
    from qfermion import registry
    from qfermion.results import EXACT_FAIL, IdentityResult

    def broken(cfg):
        yield IdentityResult("eq-st1", {"r": 0}, "exact-q", EXACT_FAIL)

    d = registry.descriptor("eq-st1")
    patched = tuple(registry.IdentityDescriptor(x.id, x.tier, x.mode, x.quote, x.param_grid, broken, x.tiers)
                    if x is d else x for x in registry.REGISTRY)
    monkeypatch.setattr(registry, "REGISTRY", patched)
    code, _, _ = run(capsys, "verify", "--max-n", "-1")
    assert code == 1


def test_table(capsys):
    code, out, _ = run(capsys, "table", "euler", "--max-n", "1")
    assert code == 0 and out == "n,value\n0,1\n1,-1/(1+q)\n"
    code, _, err = run(capsys, "table", "euler", "--max-n", "1000")
    assert code == 2 and "max_n" in err


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--f", "euler:n=2", "--levels", "1..4")
    doc = json.loads(out)
    assert code == 0 and doc["exact"] == "3/85"
    assert [l["N"] for l in doc["levels"]] == [1, 2, 3, 4]
    assert all(l["agreement"] >= l["target"] for l in doc["levels"])


@pytest.mark.parametrize("spec", ["power:a=2", "bernstein:k=1,n=2", "euler-poly:n=2,x=1", "norlund:n=1,h=1,r=2"])
def test_oracle_families(capsys, spec):
    code, out, _ = run(capsys, "oracle", "--f", spec, "--levels", "2..4")
    assert code == 0
    assert all(l["agreement"] >= l["target"] for l in json.loads(out)["levels"])


@pytest.mark.parametrize("argv", [["--f", "nope:n=1"], ["--f", "euler"], ["--f", "euler:n=1", "--q", "2"],
                                  ["--f", "euler:n=1", "--levels", "1..20"]])
def test_oracle_errors(capsys, argv):
    code, _, err = run(capsys, "oracle", *argv)
    assert code == 2 and err.startswith("error:")


def test_bad_levels_syntax():
    with pytest.raises(SystemExit):
        cli.main(["oracle", "--f", "euler:n=1", "--levels", "5..2"])
