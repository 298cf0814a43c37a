from __future__ import annotations

import io
import json
from fractions import Fraction

import pytest

from surreal import __version__
from surreal.cli.main import main, parse_seeds
from surreal.core.errors import ParseError
from surreal.core.logs import sessions_dir


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_version(capsys):
    code, out, _err = run(capsys, "--version")
    assert code == 0
    assert out.strip() == f"Surreal version {__version__}"


@pytest.mark.parametrize(
    "argv",
    [
        ("day", "2", "--format", "json"),
        ("--format", "json", "day", "2"),
    ],
)
def test_day_json(capsys, argv):
    code, out, _err = run(capsys, *argv)
    assert code == 0
    assert out == '{"candidates":64,"numbers":20,"new_values":["-2","-1/2","1/2","2"]}\n'


def test_day_text_and_table(capsys):
    code, out, _err = run(capsys, "day", "1")
    assert code == 0
    assert out.strip() == "day 1: 4 candidates, 3 numbers, new values: -1, 1"
    code, out, _err = run(capsys, "day", "0", "--format", "table")
    assert code == 0
    assert out.splitlines()[2] == "numbers     1"


def test_day_beyond_cap(capsys):
    code, out, err = run(capsys, "day", "3")
    assert code == 2
    assert out == ""
    assert err.startswith("error: DayTooLarge: ")


def test_tree(capsys):
    code, out, _err = run(capsys, "tree", "3")
    assert code == 0
    assert out.startswith("digraph days {")
    assert out.count("->") == 14
    code, out, _err = run(capsys, "tree", "1", "--format", "json")
    data = json.loads(out)
    assert sorted(n["value"] for n in data["nodes"]) == ["-1", "0", "1"]


def test_eval(capsys):
    code, out, _err = run(capsys, "--eval", "born({1|})", "--no-log")
    assert (code, out) == (0, "2\n")
    code, out, _err = run(capsys, "--eval", "cnf(w*3 + 5 + w^2*0)", "--no-log")
    assert out == "3*w + 5\n"
    assert list(sessions_dir().glob("*.log")) == []


def test_eval_error(capsys):
    code, out, err = run(capsys, "--eval", "{1|0}", "--no-log")
    assert code == 2
    assert err.startswith("error: NotANumber: ")
    code, _out, err = run(capsys, "--eval", "{0|", "--no-log")
    assert code == 2
    assert "ParseError" in err
    assert "(column 4)" in err


def test_eval_writes_session_log(capsys):
    code, _out, _err = run(capsys, "--eval", "1 + 1")
    assert code == 0
    logs = list(sessions_dir().glob("*.log"))
    assert len(logs) == 1
    text = logs[0].read_text(encoding="utf-8")
    assert "Mode:    eval" in text
    assert "[OUT] 2" in text


def test_embed(capsys):
    assert run(capsys, "embed", "int", "2")[1] == "{{{|}|}|}\n"
    assert run(capsys, "embed", "dyadic", "1/2")[1] == "{{|}|{{|}|}}\n"
    code, out, _err = run(capsys, "embed", "rat", "1/3", "--depth", "2")
    assert code == 0
    assert out == "{0,0,1/4|1,1/2,1/2} in (1/4, 1/2) [approx]\n"
    assert run(capsys, "embed", "ord", "w^2 + 1")[1] == "w^2 + 1\n"
    code, _out, err = run(capsys, "embed", "dyadic", "1/3")
    assert code == 2
    assert err.startswith("error: ParseError")
    assert run(capsys, "embed", "int", "x")[0] == 2


def test_embed_deep_integer(capsys):
    code, out, _err = run(capsys, "embed", "int", "2000")
    assert code == 0
    assert out.startswith("{{{")
    assert len(out) == 3 * 2001 + 1


def test_inv(capsys):
    code, out, _err = run(capsys, "inv", "5", "--steps", "3")
    assert code == 0
    assert out == "{0,3/16,51/256|1/4,13/64,205/1024} in (51/256, 205/1024) [approx]\n"
    code, out, _err = run(capsys, "inv", "5", "--steps", "3", "--format", "json")
    data = json.loads(out)
    assert data["layer"] == "cut"
    assert data["result"]["interval"] == ["51/256", "205/1024"]
    assert data["provenance"] == ["inv(steps=3)"]
    code, _out, err = run(capsys, "inv", "w + 1")
    assert code == 2
    assert "LayerMismatch" in err
    assert run(capsys, "inv", "0")[0] == 2


def test_sqrt(capsys):
    code, out, _err = run(capsys, "sqrt", "4", "--steps", "2", "--seeds", "0,1|")
    assert code == 0
    assert out.strip().endswith("in (13/7, 41/20) [exact]")
    code, out, _err = run(capsys, "sqrt", "4", "--seeds", "0|")
    assert code == 0
    assert out == "{0|} in (0, +inf) [approx]\n"
    code, _out, err = run(capsys, "sqrt", "4")
    assert code == 2
    assert "SeedNotRational" in err
    code, _out, err = run(capsys, "sqrt", "4", "--seeds", "3|")
    assert code == 2
    assert "InvalidSeed" in err


def test_parse_seeds():
    assert parse_seeds("0,1|") == ([0, 1], [])
    assert parse_seeds("|5/2") == ([], [Fraction(5, 2)])
    with pytest.raises(ParseError):
        parse_seeds("0,1")


def test_config_show_and_set(capsys):
    code, out, _err = run(capsys, "config", "show")
    assert code == 0
    assert json.loads(out)["steps"] == 8
    code, out, _err = run(capsys, "config", "set", "steps", "5")
    assert (code, out) == (0, "steps = 5\n")
    assert json.loads(run(capsys, "config", "show")[1])["steps"] == 5
    code, _out, err = run(capsys, "config", "set", "colour", "red")
    assert code == 2
    assert "ConfigError" in err


def test_run(capsys, tmp_path):
    script = tmp_path / "prog.sur"
    script.write_text("# squares\nlet h = {0|1}\nvalue(h * h)\n", encoding="utf-8")
    code, out, _err = run(capsys, "run", str(script), "--no-log")
    assert code == 0
    assert out == "h = 1/2\n1/4\n"
    script.write_text("1\n{1|0}\n2\n", encoding="utf-8")
    code, out, _err = run(capsys, "run", str(script), "--no-log")
    assert code == 2
    assert out.splitlines()[1].startswith("error: line 2: NotANumber")
    assert len(out.splitlines()) == 2


def test_repl_command(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("let x = 3/4\nsign(x)\n:q\n"))
    code, out, _err = run(capsys, "repl", "--no-log")
    assert code == 0
    assert out == "x = 3/4\n+-+\n"


def test_default_is_repl(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("{1|0}\n"))
    code, out, _err = run(capsys, "--no-log")
    assert code == 2
    assert out.startswith("error: NotANumber")
