"""End-to-end exercises of the aimg command line interface via main()."""

import json

import pytest

from aimg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_classify_sample(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, out, err = run(capsys, "classify", "--out", str(out_file))
    assert code == 0
    report = json.loads(out_file.read_text())
    assert [e["label"] for e in report["entries"]] == ["1A-1A", "2A-2A"]
    assert "1A-1A: Theorem2" in err
    assert "v=5: Theorem1" in err
    assert "v=-1: Theorem2" in err


def test_classify_stdout(capsys):
    code, out, err = run(capsys, "classify")
    assert code == 0
    report = json.loads(out)
    assert {"entries", "run"} == set(report)


def test_check_curve(capsys):
    code, out, _ = run(capsys, "check-curve", "--label", "2A-2A",
                       "--j", "1732")
    assert code == 0
    data = json.loads(out)
    assert data["result"] == "Member"
    assert data["witnesses"] == ["-2", "2"]
    code, out, _ = run(capsys, "check-curve", "--label", "2A-2A", "--j", "oo")
    assert code == 0
    assert json.loads(out)["witnesses"][-1] == "oo"
    code, out, _ = run(capsys, "check-curve", "--label", "2A-2A", "--j", "0")
    assert json.loads(out)["result"] == "ExcludedJ"


def test_check_curve_unknown_label(capsys):
    code, _, err = run(capsys, "check-curve", "--label", "XX", "--j", "5")
    assert code == 1
    assert "UnknownLabel" in err


def test_genus(capsys, tmp_path):
    full = write_json(tmp_path, "full.json", {"level": 1, "gens": []})
    code, out, _ = run(capsys, "genus", "--group", full)
    assert code == 0
    data = json.loads(out)
    assert data["genus"] == 0 and data["degree"] == 1
    gamma7 = write_json(tmp_path, "g7.json",
                        {"level": 7, "gens": [[6, 0, 0, 6]]})
    code, out, _ = run(capsys, "genus", "--group", gamma7)
    assert json.loads(out)["genus"] == 3


def test_genus_bad_file(capsys, tmp_path):
    code, _, err = run(capsys, "genus", "--group", str(tmp_path / "nope"))
    assert code == 1 and "error" in err


def test_commutator_full_group(capsys, tmp_path):
    full = write_json(tmp_path, "full.json", {"level": 1, "gens": []})
    code, out, _ = run(capsys, "commutator", "--group", full)
    assert code == 0
    data = json.loads(out)
    assert data["index_in_sl2"] == 2
    assert data["det_full"] is True
    code, out, _ = run(capsys, "commutator", "--group", full, "--transpose")
    assert json.loads(out)["index_in_sl2"] == 2


def test_cap_order_flag(capsys, tmp_path):
    import os
    grp = write_json(tmp_path, "g.json",
                     {"level": 5, "gens": [[1, 1, 0, 1], [0, 4, 1, 0],
                                           [2, 0, 0, 1]]})
    try:
        code, _, err = run(capsys, "--cap-order", "10", "genus",
                           "--group", grp)
    finally:
        # main() exports the flag into the environment; undo it
        os.environ.pop("AIMG_CAP_ORDER", None)
    assert code == 1
    assert "ResourceExceeded" in err


def test_surjectivity(capsys, tmp_path):
    trunc = write_json(tmp_path, "trunc.json", {
        "m_part": {"level": 4,
                   "gens": [[1, 1, 0, 1], [3, 0, 0, 1], [1, 0, 0, 3]]},
        "primes": [5]})
    # Borel generators extended by the identity mod 5: misses the 5-factor
    sub = write_json(tmp_path, "sub.json", {
        "level": 20,
        "gens": [[1, 5, 0, 1], [11, 0, 0, 1], [1, 0, 0, 11]]})
    code, out, _ = run(capsys, "surjectivity", "--group", trunc,
                       "--subgroup", sub)
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "FailsProjection" and data["factor"] == "5"


def test_surjectivity_modulus_mismatch(capsys, tmp_path):
    trunc = write_json(tmp_path, "trunc.json", {
        "m_part": {"level": 4,
                   "gens": [[1, 1, 0, 1], [3, 0, 0, 1], [1, 0, 0, 3]]},
        "primes": [5]})
    sub = write_json(tmp_path, "sub.json", {"level": 4, "gens": [[1, 1, 0, 1]]})
    code, _, err = run(capsys, "surjectivity", "--group", trunc,
                       "--subgroup", sub)
    assert code == 1 and "SchemaError" in err


def test_condition(capsys):
    code, out, _ = run(capsys, "condition", "--label", "2A-2A", "--v", "5")
    assert code == 0
    data = json.loads(out)
    assert data["holds"] is True and data["trace"]
    code, out, _ = run(capsys, "condition", "--label", "2A-2A", "--v", "1")
    assert json.loads(out)["holds"] is False


def test_condition_bad_v(capsys):
    code, _, err = run(capsys, "condition", "--label", "2A-2A", "--v", "x")
    assert code == 1 and "SchemaError" in err


def test_unknown_subcommand_exits_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
