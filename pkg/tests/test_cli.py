import io
import json
import subprocess
import sys

import pytest

from affinetrace.affine_weyl import ConvexPath
from affinetrace.cli import run
from affinetrace.cocenter import CocenterVector
from affinetrace.ring import IntLaurent1
from affinetrace.shuffle import SymLaurent, r_element
from affinetrace.tilde_a import FormalElement


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def test_classify_pi():
    status, out, _ = call("classify", "-n", "2", "pi")
    assert status == 0
    assert "convex path: [(2,1)]" in out
    assert "length: 0" in out
    assert "degree: 1" in out
    assert "newton point: (1/2,1/2)" in out


def test_cocenter_braid_word():
    status, out, _ = call("cocenter", "-n", "2", "Y1*T1")
    assert status == 0
    lines = out.strip().splitlines()
    assert "[(2,1)]: 1" in lines
    assert "[(1,0),(1,1)]: -q^-1 + q" in lines
    vec = CocenterVector.parse(out, 2)
    assert vec[ConvexPath(((1, 0), (1, 1)))] == IntLaurent1.q() - IntLaurent1.q(-1)


def test_cocenter_e_word_and_strand_check():
    status, out, _ = call("cocenter", "E(0,1)")
    assert status == 0 and out.strip() == "[(2,1)]: 1"
    status, _, err = call("cocenter", "-n", "3", "E(0,1)")
    assert status == 1 and "StrandMismatch" in err


def test_verify_rel_a2_cocenter():
    status, out, _ = call("verify", "rel-a2", "--target", "cocenter",
                          "--n-max", "3", "--d-max", "2", "--k-max", "2")
    assert status == 0
    assert "failures: 0" in out


def test_verify_probe_mode_machine():
    status, out, _ = call("verify", "rel-shuf", "--target", "shuffle", "--n-max", "3",
                          "--probe", "--seed", "4", "--format", "machine")
    doc = json.loads(out)
    assert status == 0
    assert set(doc) == {"command", "inputs", "results", "failures"}
    assert doc["inputs"]["mode"] == "probe" and doc["inputs"]["seed"] == 4
    assert doc["results"]["failures"] == 0


def test_shuffle_command_round_trips():
    status, out, _ = call("shuffle", "R(1,0)*R(0)", "--wheel")
    assert status == 0
    lines = dict(line.split(": ", 1) for line in out.strip().splitlines())
    F = SymLaurent.parse(lines["value"], int(lines["n"]))
    assert F == r_element((1, 0)) * r_element((0,))
    assert lines["wheel"] == "true"


def test_shuffle_partial_and_h():
    status, out, _ = call("shuffle", "H(1,2)", "--partial", "1", "--format", "machine")
    doc = json.loads(out)
    assert status == 0 and doc["results"]["n"] == 2


def test_reduce_command():
    status, out, _ = call("reduce", "-n", "2", "-m", "-1")
    assert status == 0
    lines = dict(line.split(": ", 1) for line in out.strip().splitlines())
    assert lines["oracle"] == "pass"
    X = FormalElement.parse(lines["element"])
    assert all(len(f) == 1 for w in X.terms for f in w.factors)


def test_parse_error_reports_position():
    status, out, err = call("cocenter", "-n", "2", "Y1**T1")
    assert status == 1
    assert "ParseError" in err and "position 3" in err
    status, out, _ = call("classify", "-n", "2", "s1*q", "--format", "machine")
    doc = json.loads(out)
    assert status == 1 and doc["failures"][0]["error"] == "ParseError"


def test_bounds_warning():
    status, _, err = call("verify", "rel-a1", "--n-max", "4", "--d-max", "0")
    assert status == 0
    assert "warning" in err


def test_bad_flags_are_rejected():
    with pytest.raises(SystemExit) as info:
        call("verify", "rel-a1", "--n-max", "0")
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        call("verify", "no-such-relation")
    with pytest.raises(SystemExit):
        call("verify", "rel-a1", "--exact", "--probe")


@pytest.mark.parametrize("argv", [
    ("classify", "-n", "3", "s1*pi*y2^-1", "--format", "machine"),
    ("cocenter", "-n", "3", "Y1*T2^-1*Omega"),
    ("shuffle", "R(1,-1)", "--format", "machine"),
    ("verify", "tor1", "--target", "shuffle", "--format", "machine"),
])
def test_deterministic_output(argv):
    first = call(*argv)
    second = call(*argv)
    assert first == second


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "affinetrace", "classify", "-n", "2", "pi"],
        capture_output=True, text=True, check=False,
    )
    assert result.returncode == 0
    assert "[(2,1)]" in result.stdout
