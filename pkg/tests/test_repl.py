from __future__ import annotations

import io

import pytest

from surreal.cli.repl import PROMPT, Session, repl, run_lines, run_script
from surreal.core.config import Config
from surreal.core.errors import NotANumber
from surreal.core.logs import open_session_log
from surreal.core.types import OutputFormat


def test_session_execute():
    s = Session(Config())
    assert s.execute("let h = {0|1}") == "h = 1/2"
    assert s.execute("value(h + h)") == "1"
    assert s.execute("   ") is None
    assert s.execute("# comment only") is None
    assert s.execute("1 + 1  # two") == "2"
    with pytest.raises(NotANumber):
        s.execute("{1|0}")


def test_session_json_format():
    s = Session(Config(output_format=OutputFormat.JSON))
    out = s.execute("let x = 1/2")
    assert out.startswith('x = {"schema": "surreal/1"')


def test_session_logs_statements():
    log = open_session_log("repl", {})
    s = Session(Config(), log)
    s.execute("1")
    with pytest.raises(NotANumber):
        s.execute("{0|0}")
    log.finalize()
    log.close()
    assert log.statements == 2
    assert log.errors == 1
    text = log.path.read_text(encoding="utf-8")
    assert "[OUT] 1" in text
    assert "[ERR] NotANumber" in text


def test_repl_continues_after_errors():
    stdin = io.StringIO("1 + 1\n{1|0}\nvalue(1/2 + 1/2)\nquit\nnever\n")
    stdout = io.StringIO()
    code = repl(Session(Config()), stdin, stdout, prompt=False)
    lines = stdout.getvalue().splitlines()
    assert code == 2
    assert lines[0] == "2"
    assert lines[1].startswith("error: NotANumber: ")
    assert lines[2] == "1"
    assert len(lines) == 3


def test_repl_prompt_and_eof():
    stdout = io.StringIO()
    code = repl(Session(Config()), io.StringIO("w\n"), stdout, prompt=True)
    assert code == 0
    assert stdout.getvalue() == f"{PROMPT}w\n{PROMPT}"


def test_run_lines_stops_at_first_error():
    out = []
    code, line = run_lines(Session(Config()), ["let a = 2", "value(a * a)", "bogus(", "1"], out.append)
    assert (code, line) == (2, 3)
    assert out[:2] == ["a = 2", "4"]
    assert out[2].startswith("error: line 3: ParseError: ")
    assert len(out) == 3


def test_run_script(tmp_path):
    script = tmp_path / "prog.sur"
    script.write_text("let t = w + 1\nt * t\n", encoding="utf-8")
    out = []
    assert run_script(Session(Config()), script, out.append) == 0
    assert out == ["t = w + 1", "w^2 + 2*w + 1"]
    missing = []
    assert run_script(Session(Config()), tmp_path / "nope.sur", missing.append) == 2
    assert missing[0].startswith("error: ")


def test_repl_survives_step_limit():
    stdout = io.StringIO()
    code = repl(Session(Config()), io.StringIO("inv(5, 100)\n1\n"), stdout, prompt=False)
    lines = stdout.getvalue().splitlines()
    assert code == 2
    assert lines[0].startswith("error: EvaluationError: ")
    assert lines[1] == "1"
