import subprocess
import sys

import pytest

from pnmc.aut import import_aut
from pnmc.cli import bundled, main

MODEL = bundled("meeting.pnt")
PROPS = bundled("meeting.prop")
OVERFLOW = bundled("overflow.prop")


def _prop_lines(text):
    return [l for l in text.splitlines() if l.startswith("PROP ")]


def test_build_writes_aut(tmp_path, capsys):
    out = tmp_path / "m.aut"
    dot = tmp_path / "m.dot"
    code = main(["build", str(MODEL), "--inst", "G=2,cap=2", "--min", "branching", "-o", str(out), "--dot", str(dot)])
    assert code == 0
    l = import_aut(out.read_text())
    assert (l.num_states, l.num_transitions) == (10, 18)
    assert dot.read_text().startswith("digraph")
    table = capsys.readouterr().out
    assert "System" in table and "602" in table


def test_build_hierarchical_table(tmp_path, capsys):
    code = main(["build", str(MODEL), "--inst", "G=1,cap=1", "--hier", "--min", "branching", "-o",
                 str(tmp_path / "x.aut")])
    assert code == 0
    rows = capsys.readouterr().out.splitlines()
    names = [r.split("|")[0].strip() for r in rows[2:]]
    assert names == ["Initiator", "Participant", "ParticipantGroup", "System"]


def test_build_is_deterministic(tmp_path):
    a, b = tmp_path / "a.aut", tmp_path / "b.aut"
    for target in (a, b):
        assert main(["build", str(MODEL), "--inst", "G=3,cap=1", "--min", "branching", "-o", str(target)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_check_lines_and_traces(tmp_path, capsys):
    code = main(["check", str(MODEL), str(PROPS), "--inst", "G=3,cap=2", "--min", "branching",
                 "--trace-dir", str(tmp_path)])
    assert code == 0
    lines = _prop_lines(capsys.readouterr().out)
    assert "PROP err_never - = TRUE" in lines
    assert "PROP reply_reach R_Suggest(2,true) = TRUE" in lines
    assert sum(l.startswith("PROP reply_reach") for l in lines) == 6
    assert "PROP no_deadlock - = TRUE" in lines
    assert all(l.endswith("= TRUE") for l in lines)
    last = (tmp_path / "collate_false.trace").read_text().splitlines()[-1]
    assert '"T_CollateResults(false)"' in last


def test_check_failure_exit_and_trace(tmp_path, capsys):
    code = main(["check", str(MODEL), str(PROPS), "--inst", "G=3,cap=1", "--only", "err_never",
                 "--trace-dir", str(tmp_path)])
    assert code == 5
    assert _prop_lines(capsys.readouterr().out) == ["PROP err_never - = FALSE"]
    trace = (tmp_path / "err_never.trace").read_text().splitlines()
    assert trace[0].startswith('(0, "Q_Suggest(')
    assert trace[-1].split(", ")[1] == '"Error()"'


def test_overflow_expectation(capsys):
    assert main(["check", str(MODEL), str(OVERFLOW), "--inst", "G=2,cap=1"]) == 0
    assert main(["check", str(MODEL), str(OVERFLOW), "--inst", "G=2,cap=2"]) == 5


def test_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.pnt"
    bad.write_text("plts P { states s init }")
    assert main(["build", str(bad)]) == 2
    assert "bad.pnt:" in capsys.readouterr().err
    badprop = tmp_path / "bad.prop"
    badprop.write_text("prop x = sometimes")
    assert main(["check", str(MODEL), str(badprop), "--inst", "G=1,cap=1"]) == 2
    assert main(["check", str(MODEL), str(PROPS), "--inst", "G=1,cap=1", "--only", "nope"]) == 2


@pytest.mark.parametrize("inst", ["G=7,cap=1", "cap=1", "G=1,cap=1,", "G"])
def test_instantiation_errors(tmp_path, inst):
    code = main(["build", str(MODEL), "--inst", inst, "-o", str(tmp_path / "x.aut")])
    assert code == (0 if inst == "G=1,cap=1," else 3)


def test_state_cap(tmp_path, capsys):
    assert main(["build", str(MODEL), "--inst", "G=3,cap=2", "--state-cap", "100", "-o", str(tmp_path / "x.aut")]) == 4
    assert "100" in capsys.readouterr().err


def test_state_cap_from_environment(tmp_path):
    env = {"PNMC_STATE_CAP": "50", "PATH": "/usr/bin:/bin"}
    proc = subprocess.run(
        [sys.executable, "-m", "pnmc.cli", "build", str(MODEL), "--inst", "G=2,cap=1", "-o", str(tmp_path / "x.aut")],
        env=env, capture_output=True, text=True,
    )
    assert proc.returncode == 4


def test_gen_round_trips(tmp_path, capsys):
    assert main(["gen", "meeting", "--G", "2", "--cap", "1"]) == 0
    text = capsys.readouterr().out
    target = tmp_path / "g.pnt"
    target.write_text(text)
    assert main(["build", str(target), "--inst", "G=2,cap=1", "-o", str(tmp_path / "g.aut")]) == 0
    assert import_aut((tmp_path / "g.aut").read_text()).num_states == 650


def test_demo(capsys, tmp_path):
    assert main(["demo", "meeting", "--G", "2", "--cap", "2", "--trace-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "Full system, 2 participants, queue[2]" in out
    assert "PROP err_reach - = FALSE" in out
    assert main(["demo", "meeting", "--G", "0"]) == 3
