import io
import json
import pathlib
from fractions import Fraction as F

import pytest

from wpcl.cli import main
from wpcl.logic import expand_derived
from wpcl.pvm import NEG_INF, Flags, PvMonoid, add, register_monoid, unregister_monoid, MAX_AVG_PLUS
from wpcl.textio import parse_wpcl, print_wpcl

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue().strip(), err.getvalue().strip()


def test_eval():
    assert run("eval", "-m", "max-avg-plus", "-f", "w(2) (#) w(4)", "-c", "{ {p},{q} }", "--ports", "p,q") == (0, "6", "")
    assert run("eval", "-m", "max-avg-plus", "-f", "w(2) (#) w(4)", "-c", "{ {p} }", "--ports", "p,q")[:2] == (0, "-inf")


def test_eval_malformed_config():
    code, _, err = run("eval", "-f", "w(1)", "-c", "{ {p}, }", "--ports", "p,q")
    assert code == 2
    assert "^" in err


def test_normalize():
    assert run("normalize", "-m", "max-avg-plus", "--ports", "p,q", "-f", "[m: p] (x) w(3)")[:2] == (0, "3 @ {{p}}")
    assert run("normalize", "--ports", "p,q", "-f", "w(5)")[:2] == (0, "CONST 5")


def test_normalize_refuses_weak_monoid():
    weak = PvMonoid("weak-monoid", NEG_INF, F(0), max, add, MAX_AVG_PLUS.raw_val,
                    Flags(idempotent=True, val_symmetric=True))
    register_monoid(weak)
    try:
        code, _, err = run("normalize", "-m", "weak-monoid", "--ports", "p", "-f", "w(1)")
    finally:
        unregister_monoid("weak-monoid")
    assert code == 3
    assert "otimes_commutative" in err


def test_resource_guard_exit():
    code, _, err = run("table", "--ports", "a,b,c,d,e", "-f", "w(1)")
    assert code == 3 and "--port-limit" in err
    assert run("table", "--ports", "a,b,c,d,e", "--port-limit", "0", "-f", "w(1)")[0] == 2


def test_equiv():
    z = "close([p] (#) w(2)) (+) star([m: q])"
    expanded = print_wpcl(expand_derived(parse_wpcl(z, ("p", "q")), ("p", "q"), MAX_AVG_PLUS))
    assert run("equiv", "--ports", "p,q", "-f", z, "-f", expanded)[:2] == (0, "EQUIVALENT")
    code, out, _ = run("equiv", "--ports", "p,q", "-f", "w(2)", "-f", "w(3)")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "NOT EQUIVALENT" and lines[1].startswith("witness: {")
    assert lines[2:] == ["left: 2", "right: 3"]
    assert run("equiv", "-m", "max-avg-plus", "--ports", "p,q", "-f", "[p] (#) w(-inf)", "-f", "w(-inf)")[:2] == (
        0,
        "EQUIVALENT",
    )
    assert run("equiv", "--ports", "p", "-f", "w(1)")[0] == 2


def test_table():
    code, out, _ = run("table", "--ports", "p", "-f", "w(7)")
    assert (code, out) == (0, "7 @ {{p}}")
    code, out, _ = run("table", "--ports", "p,q", "-f", "[m: p]")
    assert len(out.splitlines()) == 7 and "0 @ {{p}}" in out.splitlines()


def test_json_lines():
    code, out, _ = run("eval", "--format", "json-lines", "--ports", "p,q", "-f", "w(1)", "-c", "{{p}}")
    assert code == 0 and json.loads(out) == {"config": "{{p}}", "formula": "w(1)", "value": "1"}
    code, out, _ = run("normalize", "--format", "json-lines", "--ports", "p", "-f", "[p] (x) w(2)")
    assert json.loads(out)["normal_form"] == {"constant": "2"}


def test_file_input(tmp_path):
    path = tmp_path / "f.wpcl"
    path.write_text("ports p, q;\nw(2) (#) w(4);\n[m: q];\n")
    code, out, _ = run("eval", "--file", str(path), "-c", "{{p},{q}}")
    assert (code, out.splitlines()) == (0, ["6", "-inf"])
    assert run("eval", "--file", str(tmp_path / "missing"), "-c", "{{p}}")[0] == 2


def test_input_errors():
    assert run("eval", "-f", "w(1)", "-c", "{{p}}")[0] == 2  # no ports
    assert run("normalize", "--ports", "p", "-f", "w(1) (+)")[0] == 2
    assert run("normalize", "--ports", "p", "-f", "[q]")[0] == 2
    assert run("eval", "-m", "nope", "--ports", "p", "-f", "w(1)", "-c", "{{p}}")[0] == 2
    assert run("eval", "-m", "max-avg-plus", "--ports", "p", "-f", "w(inf)", "-c", "{{p}}")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"], stdout=io.StringIO(), stderr=io.StringIO())
    assert e.value.code == 2


@pytest.mark.parametrize(
    "argv, value, monoid",
    [
        (["master-slave", "i", "--weights", "master_slave.json"], "5", "max-avg-plus"),
        (["master-slave", "ii", "--weights", "master_slave.json"], "12", "max-avg-plus"),
        (["master-slave", "iii", "--weights", "master_slave.json"], "3", "max-avg-plus"),
        (["star", "--weights", "star3.json"], "2", "min-avg-plus"),
        (["pubsub", "topic_2", "--weights", "pubsub.json"], "3", "min-maj-max"),
        (["pubsub", "subscriber_1", "--weights", "pubsub.json"], "5/2", "max-avg-plus"),
    ],
)
def test_demo(argv, value, monoid):
    argv = [a if not a.endswith(".json") else str(FIXTURES / a) for a in argv]
    code, out, _ = run("demo", *argv)
    assert code == 0
    lines = dict(line.split(": ", 1) for line in out.splitlines())
    assert lines["value"] == value and lines["monoid"] == monoid
    assert lines["config"].startswith("{{")


def test_demo_normalize():
    code, out, _ = run("demo", "star", "--weights", str(FIXTURES / "star3.json"), "--normalize")
    assert code == 0 and "normal form:" in out


def test_demo_bad_weights(tmp_path):
    path = tmp_path / "w.json"
    path.write_text('{"s1,m1": "4"}')
    # counts default to what the keys mention: a single slave and master
    assert run("demo", "master-slave", "i", "--weights", str(path))[:2][0] == 0
    code, _, err = run("demo", "master-slave", "i", "--weights", str(path), "--masters", "2", "--slaves", "2")
    assert code == 2 and "missing weight" in err


def test_verify_flags():
    code, out, _ = run("verify-flags", "-m", "min-maj-max", "--samples", "300")
    assert code == 0 and "no counterexample" in out
