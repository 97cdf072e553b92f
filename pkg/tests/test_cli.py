import json
from argparse import Namespace
from fractions import Fraction


from surfsec import cli

Q8 = {"type": "catalog", "name": "quaternion", "order": 8}
S3 = {"type": "catalog", "name": "symmetric", "order": 6}


def write(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run_cli(capsys, *args):
    code = cli.main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_q8_survey_json(capsys):
    code, out, _ = run_cli(capsys, "q8-survey", "--format", "json")
    assert code == 0 and json.loads(out)["values"] == [8, 16, 24, 40]


def test_fm_json(tmp_path, capsys):
    spec = write(tmp_path, {"group": S3, "genus": 1})
    code, out, _ = run_cli(capsys, "--command", "fm", "--spec", spec, "--format", "json")
    assert code == 0 and json.loads(out) == {"formula": "18", "brute": 18}


def test_count_trivial_fiber(tmp_path, capsys):
    spec = write(tmp_path, {"genus": 2, "phi": {"type": "catalog", "name": "trivial"}})
    code, out, _ = run_cli(capsys, "count", "--spec", spec, "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["formula"] == "1" and report["exists"] is True


def test_json_is_byte_stable_and_round_trips(tmp_path, capsys):
    doc = {"genus": 1, "boundary": 1, "phi": Q8, "lift_auts": {"a1": {"inner": "i"}}, "boundary_twists": ["-1"]}
    spec = write(tmp_path, doc)
    first = run_cli(capsys, "count", "--spec", spec, "--format", "json", "--verify")[1]
    second = run_cli(capsys, "count", "--spec", spec, "--format", "json", "--verify")[1]
    assert first == second
    opts = Namespace(verify=True, budget=cli.DEFAULT_BUDGET, jobs=1)
    report = cli.run("count", doc, opts)
    assert json.loads(first) == cli._plain(report)


def test_human_table_for_q8_torus(tmp_path, capsys):
    spec = write(tmp_path, {"genus": 1, "phi": Q8})
    code, out, _ = run_cli(capsys, "count", "--spec", spec)
    lines = out.splitlines()
    header = lines[0].split()
    assert header == ["rep", "dim", "in_I0", "zeta", "term"]
    rows = lines[2:lines.index("")]
    assert len(rows) == 5
    assert "total (formula): 40" in out


def test_human_table_shows_flags_with_boundary(tmp_path, capsys):
    spec = write(tmp_path, {"genus": 1, "boundary": 1, "phi": Q8, "boundary_twists": ["i"]})
    out = run_cli(capsys, "count", "--spec", spec)[1]
    assert out.splitlines()[0].split() == ["rep", "dim", "in_I0", "t", "zeta", "term"]


def test_tsv_and_out_file(tmp_path, capsys):
    spec = write(tmp_path, {"genus": 1, "phi": Q8})
    target = tmp_path / "report.tsv"
    code, out, _ = run_cli(capsys, "count", "--spec", spec, "--format", "tsv", "--out", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert "formula\t40" in text and "rep\tdim\tin_I0\tzeta\tterm" in text


def test_lift_center_statesum(tmp_path, capsys):
    lift = write(tmp_path, {"cover": {"type": "catalog", "name": "cyclic", "order": 4}, "kernel": ["0", "2"],
                            "genus": 1, "g_images": ["1", "0"]}, "lift.json")
    report = json.loads(run_cli(capsys, "lift", "--spec", lift, "--format", "json")[1])
    assert report["formula"] == "4" and report["brute"] == 4
    center = write(tmp_path, {"cover": S3}, "center.json")
    report = json.loads(run_cli(capsys, "center", "--spec", center, "--format", "json")[1])
    assert report["total_dim"] == 3 and report["axioms_ok"]
    assert sorted(d["eta_ii"] for d in report["idempotents"]) == ["1", "1", "4"]
    ss = write(tmp_path, {"cover": S3, "surface": {"genus": 1}}, "ss.json")
    assert json.loads(run_cli(capsys, "statesum", "--spec", ss, "--format", "json")[1])["value"] == "3"


def test_exit_code_invalid_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run_cli(capsys, "count", "--spec", str(bad))
    assert code == 3 and "InvalidInput" in err
    spec = write(tmp_path, {"genus": 1, "phi": Q8, "lift_auts": {"a1": {"map": [0, 0, 0, 0, 0, 0, 0, 0]}}})
    code, _, err = run_cli(capsys, "count", "--spec", spec)
    assert code == 3


def test_exit_code_budget(tmp_path, capsys):
    spec = write(tmp_path, {"genus": 2, "phi": Q8})
    code, _, err = run_cli(capsys, "verify", "--spec", spec, "--budget", "1000")
    assert code == 4 and "BudgetExceeded" in err


def test_exit_code_convention_failure(tmp_path, capsys, monkeypatch):
    real = cli.formula_count

    def skewed(E, irreps=None):
        report = real(E, irreps)
        report.formula_value += 1
        return report

    monkeypatch.setattr(cli, "formula_count", skewed)
    spec = write(tmp_path, {"genus": 1, "phi": Q8})
    code, out, err = run_cli(capsys, "verify", "--spec", spec, "--format", "json")
    assert code == 2 and "disagree" in err
    assert json.loads(out)["diff"] == "1"


def test_plain_converts_fractions():
    assert cli._plain({"x": [Fraction(1, 2)]}) == {"x": ["1/2"]}
