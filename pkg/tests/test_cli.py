import json

import pytest

from confhom import cli
from confhom.cli import BUDGET, JobConfig, estimate, main, run


def test_delta_zeta_order_one_prints_zero(capsys):
    assert main(["delta-zeta", "--genus", "1", "--order", "1"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_homology_torus_codim_zero():
    code, report, text = run(["homology", "--genus", "1", "--punctures", "1", "--points", "2", "--codim", "0"])
    assert code == 0
    assert text == '{"rank":5,"torsion":[]}'
    assert report["groups"] == [{"codim": 0, "degree": 2, "rank": 5, "torsion": []}]


def test_closed_torus_one_point():
    code, report, text = run(["closed", "--genus", "1", "--points", "1", "--format", "json"])
    assert code == 0
    assert [h["rank"] for h in report["groups"]] == [1, 2, 1]
    assert "H^cl_1" in run(["closed", "--genus", "1", "--points", "1"])[2]


def test_json_schema_and_determinism():
    base = ["kernel", "--genus", "1", "--punctures", "1", "--order", "3", "--format", "json"]
    outs = {run(base + ["--threads", str(t)])[2] for t in (1, 2, 8)}
    assert len(outs) == 1
    doc = json.loads(outs.pop())
    assert doc["schema"] == 1 and doc["command"] == "kernel"
    assert doc["params"]["order"] == 3


@pytest.mark.parametrize("argv", [
    ["nonsense"],
    [],
    ["delta-zeta", "--genus", "-1", "--order", "2"],
    ["homology", "--genus", "1", "--punctures", "0", "--points", "2"],
    ["johnson", "--genus", "2", "--n", "2"],
    ["johnson", "--genus", "2", "--n", "4", "--c", "a1"],
    ["johnson", "--genus", "2", "--n", "3", "--c", "zz"],
    ["group", "--presentation", "/nonexistent/file", "--points", "2"],
    ["delta-zeta", "--genus", "1", "--order", "1", "--threads", "0"],
])
def test_bad_input_exits_two(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("confhom")


def test_budget_guard():
    cfg = JobConfig("kernel", {"genus": 4, "punctures": 1, "order": 6})
    assert estimate(cfg) > BUDGET
    code, _, text = run(["kernel", "--genus", "4", "--punctures", "1", "--order", "6"])
    assert code == 2 and "--force" in text


def test_icfg_genus_two_order_four():
    code, report, _ = run(["icfg", "--genus", "2", "--order", "4", "--format", "json"])
    assert code == 0 and report["rank"] >= 1


def test_johnson_text():
    code, report, text = run(["johnson", "--genus", "2", "--n", "4", "--c", "a1,a-1"])
    assert code == 0
    assert "scfg_image: zero" in text
    assert report["in_insertion_span"]


def test_group_from_file(tmp_path):
    f = tmp_path / "rp2.txt"
    f.write_text("gens: x\nrel: x x\n")
    code, report, _ = run(["group", "--presentation", str(f), "--points", "1", "--format", "json"])
    assert code == 0
    assert report["rank"] == 0 and report["torsion"] == [2]


def test_act_from_file(tmp_path):
    f = tmp_path / "map.txt"
    f.write_text("b1 -> b1 a1 a-1 a1^-1 a-1^-1\n")
    argv = ["act", "--genus", "1", "--punctures", "2", "--map", str(f), "--points", "2", "--format", "json"]
    code, report, _ = run(argv)
    assert code == 0 and report["is_identity"]
    f.write_text("a1 -> a-1\n")
    assert run(argv)[0] == 2


def test_paper_check_passes():
    code, report, text = run(["paper-check"])
    assert code == 0
    assert all(item["ok"] for item in report["items"])
    assert all("seconds" in item for item in report["items"])
    assert "passed" in text.splitlines()[-1]


def test_paper_check_detects_sign_flip():
    code, report, text = run(["paper-check", "--only", "bar-complex", "--inject-sign-flip"])
    assert code == 1
    assert "FAIL" in text
    # the hook is undone afterwards
    assert run(["paper-check", "--only", "bar-complex"])[0] == 0


def test_assertion_failure_exits_one(monkeypatch):
    def broken(params):
        raise AssertionError("boundary squares to nonzero")
    monkeypatch.setitem(cli.COMMANDS, "closed", broken)
    assert run(["closed", "--genus", "0", "--points", "1"])[0] == 1
