import json

import pytest

from asmoments.cli import main, parse_point


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_point():
    assert parse_point("1/9", 3) == parse_point("q^-2", 3)
    assert abs(parse_point("q^(-1/2)", 9) - parse_point("1/3", 9)) < 1e-30
    assert parse_point("0.5", 3) == 0.5


def test_lfun(capsys):
    code, out, _ = run(capsys, "lfun", "--p", "3", "--q", "3", "--num", "0,0,1")
    assert code == 0
    data = json.loads(out)
    assert data["degree"] == 1


def test_family_moment(capsys):
    code, out, _ = run(capsys, "family-moment", "--kind", "polynomial", "--d", "2", "--p", "3", "--q", "3")
    assert code == 0
    assert json.loads(out)["size"] == 18


def test_euler_eval(capsys):
    code, out, _ = run(capsys, "euler-eval", "--product", "G", "--at", "1/9", "--trunc", "8")
    assert code == 0
    assert "tail_bound" in json.loads(out)


def test_verify_list_and_run(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and out.splitlines()[0].startswith("thm1.1-k1 ")
    path = tmp_path / "r.json"
    code, _, err = run(capsys, "verify", "--case", "lem3.4", "--case", "card-Fd", "--output", str(path))
    assert code == 0 and "pass   lem3.4" in err
    code, out, _ = run(capsys, "report", str(path), "--format", "csv")
    assert code == 0 and out.startswith("case,theorem")


def test_verify_failure_exit_code(capsys):
    code, _, err = run(capsys, "verify", "--case", "prop2.8", "--no-timing")
    assert code == 1 and "fail" in err


def test_error_exit_code(capsys):
    code, _, err = run(capsys, "family-moment", "--kind", "odd", "--d", "4", "--p", "3", "--q", "3")
    assert code == 2 and err.startswith("error:")


def test_bad_subcommand():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
