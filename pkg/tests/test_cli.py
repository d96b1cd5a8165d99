"""Command-line interface: output formats and the exit-status contract."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from coindwhile.cli import main

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"

COUNTER = str(PROGRAMS / "counter.whl")
ECHO = str(PROGRAMS / "echo.whl")
LOOP = str(PROGRAMS / "loop.whl")
EMIT = str(PROGRAMS / "emit.whl")
EMIT_PADDED = str(PROGRAMS / "emit_padded.whl")


def run_cli(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, out.splitlines()


class TestRun:
    def test_counter_states(self, capsys):
        status, lines = run_cli(capsys, "run", COUNTER)
        assert status == 0
        assert lines == [
            "{}", "{x=3}", "{x=3}", "{x=2}", "{x=2}",
            "{x=1}", "{x=1}", "{}", "{}", "ended",
        ]

    def test_small_step_mode_agrees(self, capsys):
        _, big = run_cli(capsys, "run", COUNTER, "--mode", "big")
        _, small = run_cli(capsys, "run", COUNTER, "--mode", "small")
        assert big == small

    def test_echo_events(self, capsys):
        status, lines = run_cli(capsys, "run", ECHO, "--script", "0,5")
        assert status == 0
        assert lines == ["in 0", "delay", "out 0", "in 5", "delay", "ret {x=5}"]

    def test_truncated_exit_status(self, capsys):
        status, lines = run_cli(capsys, "run", LOOP, "--fuel", "3")
        assert status == 2
        assert lines == ["{}", "{}", "{}", "truncated"]

    def test_input_exhausted_exit_status(self, capsys):
        status, lines = run_cli(capsys, "run", ECHO, "--script", "0")
        assert status == 3
        assert lines[-1] == "input-exhausted"

    def test_init_seeds_the_state(self, capsys, tmp_path):
        prog = tmp_path / "down.whl"
        prog.write_text("while 1 <= x do x := x - 1 od\n")
        status, lines = run_cli(capsys, "run", str(prog), "--init", "x=2")
        assert status == 0
        assert lines[0] == "{x=2}" and lines[-1] == "ended"

    def test_json_events(self, capsys):
        status, lines = run_cli(capsys, "run", ECHO, "--script", "0,5", "--json")
        assert status == 0
        objs = [json.loads(line) for line in lines]
        assert [o["tag"] for o in objs] == ["in", "delay", "out", "in", "delay", "ret"]
        assert objs[0]["value"] == 0
        assert objs[-1]["state"] == {"x": 5}

    def test_summary_pure(self, capsys):
        status, lines = run_cli(capsys, "run", COUNTER, "--emit", "summary")
        assert status == 0
        assert lines == ["status=ended steps=9 state={}"]

    def test_summary_io(self, capsys):
        status, lines = run_cli(
            capsys, "run", ECHO, "--script", "0,5", "--emit", "summary"
        )
        assert status == 0
        assert lines == ["status=ret in=2 out=1 delay=2 state={x=5}"]

    def test_states_emit_rejected_for_io_program(self, capsys):
        status, _ = run_cli(capsys, "run", ECHO, "--emit", "states")
        assert status == 1

    def test_script_and_interactive_conflict(self, capsys):
        status, _ = run_cli(
            capsys, "run", ECHO, "--script", "1", "--interactive"
        )
        assert status == 1

    def test_run_is_deterministic(self, capsys):
        a = run_cli(capsys, "run", ECHO, "--script", "0,0,3")
        b = run_cli(capsys, "run", ECHO, "--script", "0,0,3")
        assert a == b


class TestErrors:
    def test_missing_file(self, capsys):
        assert main(["run", str(PROGRAMS / "nope.whl")]) == 1

    def test_parse_error_reports_position(self, capsys, tmp_path):
        prog = tmp_path / "bad.whl"
        prog.write_text("skip ;\nwhile tt do skip\n")
        status = main(["run", str(prog)])
        assert status == 1
        err = capsys.readouterr().err
        assert "bad.whl:" in err and "od" in err


class TestCompare:
    @pytest.mark.parametrize("path", [COUNTER, LOOP, ECHO])
    def test_interpreters_agree(self, capsys, path):
        status, lines = run_cli(
            capsys, "compare", path, "--fuel", "512", "--script", "0,0,1"
        )
        assert status == 0
        assert lines == ["agree up to fuel 512"]


class TestBisim:
    def test_padded_emitter_is_equivalent(self, capsys):
        status, lines = run_cli(capsys, "bisim", EMIT, EMIT_PADDED)
        assert status == 0
        assert lines == ["equivalent up to bounds"]

    def test_distinguished(self, capsys, tmp_path):
        other = tmp_path / "emit7.whl"
        other.write_text("while tt do output 7 od\n")
        status, lines = run_cli(capsys, "bisim", EMIT, str(other))
        assert status == 4
        assert lines[0].startswith("distinguished:")

    def test_budget_exhausted(self, capsys):
        status, lines = run_cli(
            capsys, "bisim", EMIT, LOOP, "--delay-budget", "4"
        )
        assert status == 5
        assert lines[0].startswith("budget exhausted (delay)")


class TestResponsive:
    def test_echo_is_responsive(self, capsys):
        status, lines = run_cli(capsys, "responsive", ECHO)
        assert status == 0
        assert lines == ["responsive up to bounds"]

    def test_silent_divergence_is_not(self, capsys):
        status, lines = run_cli(capsys, "responsive", LOOP)
        assert status == 4
        assert lines[0].startswith("latency exceeded")


class TestParseCommand:
    def test_pretty_prints(self, capsys):
        status, lines = run_cli(capsys, "parse", COUNTER)
        assert status == 0
        text = "\n".join(lines)
        assert "x := 3" in text and "while" in text

    def test_output_reparses(self, capsys, tmp_path):
        _, lines = run_cli(capsys, "parse", ECHO)
        again = tmp_path / "again.whl"
        again.write_text("\n".join(lines) + "\n")
        status, lines2 = run_cli(capsys, "parse", str(again))
        assert status == 0
        assert lines2 == lines


class TestInteractive:
    def test_prompts_on_stderr_reads_stdin(self):
        proc = subprocess.run(
            [sys.executable, "-m", "coindwhile", "run", ECHO, "--interactive"],
            input="0\n7\n",
            capture_output=True,
            text=True,
            timeout=30,
        )
        assert proc.returncode == 0
        assert proc.stdout.splitlines() == [
            "in 0", "delay", "out 0", "in 7", "delay", "ret {x=7}",
        ]
        assert "? " in proc.stderr

    def test_closed_stdin_is_input_exhausted(self):
        proc = subprocess.run(
            [sys.executable, "-m", "coindwhile", "run", ECHO, "--interactive"],
            input="",
            capture_output=True,
            text=True,
            timeout=30,
        )
        assert proc.returncode == 3
        assert proc.stdout.splitlines()[-1] == "input-exhausted"
