import json
import subprocess
import sys

import pytest

from maip.algebra import poly_from_json, render
from maip.diagram import parse, random_diagram, serialize
from maip.invariant import maip

from conftest import FIXTURES, load


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "maip", *args],
        capture_output=True, text=True, cwd=FIXTURES.parent)


def fx(name):
    return str(FIXTURES / f"{name}.tangle")


def test_compute_ex3():
    res = run_cli("compute", fx("ex3"))
    assert res.returncode == 0
    assert res.stdout.strip() == "t1^(c1-c3-1) - t2^(c2-c3)"


def test_compute_kink():
    res = run_cli("compute", fx("kink"))
    assert res.returncode == 0
    assert res.stdout.strip() == "0"


def test_compute_singular_is_an_input_error():
    res = run_cli("compute", fx("singular"))
    assert res.returncode == 2
    assert "singular" in res.stderr and "resolve" in res.stderr


def test_compute_json_round_trips():
    res = run_cli("compute", fx("ex3"), "--json")
    assert res.returncode == 0
    assert poly_from_json(json.loads(res.stdout)) == maip(load("ex3"))


def test_compute_numeric_and_collapse():
    res = run_cli("compute", fx("ex3"), "--numeric", "all=0", "--collapse")
    assert res.returncode == 0
    assert res.stdout.strip() == "-1 + t1^(-1)"


def test_compute_numeric_partial_assignment_fails():
    res = run_cli("compute", fx("ex3"), "--numeric", "c1=0")
    assert res.returncode == 2
    assert "c2" in res.stderr or "c3" in res.stderr


def test_compute_parse_error(tmp_path):
    bad = tmp_path / "bad.tangle"
    bad.write_text("tangle m=0 n=0\ncomponent 1 closed : O1+ U1-\n")
    res = run_cli("compute", str(bad))
    assert res.returncode == 2
    assert "sign mismatch at crossing 1" in res.stderr


def test_resolve_singular_example():
    res = run_cli("resolve", fx("singular"))
    assert res.returncode == 0
    assert res.stdout.strip() == "-t1 + t1^(c1-c2) - t2^(-1) + t2^(-c1+c2)"


def test_resolve_two_singular_is_zero(tmp_path):
    d = random_diagram(9, 1, 1, 4, n_singular=2)
    path = tmp_path / "two_singular.tangle"
    path.write_text(serialize(d))
    res = run_cli("resolve", str(path))
    assert res.returncode == 0
    assert res.stdout.strip() == "0"


def test_resolve_without_singular_is_an_input_error():
    res = run_cli("resolve", fx("ex3"))
    assert res.returncode == 2


def test_tensor_output():
    res = run_cli("tensor", fx("ex3"), fx("ex3"))
    assert res.returncode == 0
    body, trailer = res.stdout.rsplit("# maip: ", 1)
    product = parse(body)
    assert (product.m, product.n) == (4, 8)
    assert trailer.strip() == render(maip(product))


def test_compose_published_example():
    res = run_cli("compose", fx("ex3"), fx("ex2"))
    assert res.returncode == 0
    assert "# maip: 1 + t1^(c1-c2-1) - t1^(c1-c2) - t2^(-1) - t2 + t2^(-c1+c2)" in res.stdout
    assert "# predict: ok" in res.stdout
    body = res.stdout.split("# maip:")[0]
    assert parse(body) == load("ex4")


def test_compose_cyclic_prediction_skipped(tmp_path):
    upper = tmp_path / "upper.tangle"
    lower = tmp_path / "lower.tangle"
    upper.write_text("tangle m=0 n=2\ncomponent 1 long from B1 to B2 : O1+ U1+\n")
    lower.write_text("tangle m=2 n=0\ncomponent 1 long from T2 to T1 :\n")
    res = run_cli("compose", str(upper), str(lower))
    assert res.returncode == 0
    assert "# predict: skipped (cyclic gluing)" in res.stdout
    assert "# maip: 0" in res.stdout


def test_compose_arity_mismatch_exit_code():
    res = run_cli("compose", fx("ex3"), fx("ex3"))
    assert res.returncode == 2


def test_compose_writes_output_file(tmp_path):
    out = tmp_path / "composite.tangle"
    res = run_cli("compose", fx("ex3"), fx("ex2"), "-o", str(out))
    assert res.returncode == 0
    assert parse(out.read_text()) == load("ex4")


@pytest.mark.parametrize("what", ["moves", "prop2", "corollary", "compose", "vassiliev"])
def test_check_random_suites(what):
    res = run_cli("check", "--what", what, "--random", "--trials", "25", "--seed", "3")
    assert res.returncode == 0, res.stdout + res.stderr
    assert "PASS" in res.stdout


def test_check_file_based_prop2():
    res = run_cli("check", fx("ex3"), "--what", "prop2")
    assert res.returncode == 0
    assert "PASS" in res.stdout


def test_check_file_based_moves():
    res = run_cli("check", fx("ex1"), "--what", "moves", "--trials", "10", "--seed", "4")
    assert res.returncode == 0
    assert "PASS" in res.stdout


def test_check_json_report():
    res = run_cli("check", "--what", "vassiliev", "--random", "--trials", "5",
                  "--seed", "2", "--json")
    assert res.returncode == 0
    report = json.loads(res.stdout)
    assert report["ok"] is True
    assert report["trials"] == 5


def test_check_requires_input():
    res = run_cli("check", "--what", "moves")
    assert res.returncode == 2


def test_check_compose_needs_random():
    res = run_cli("check", fx("ex3"), "--what", "compose")
    assert res.returncode == 2


def test_check_rejects_singular_file():
    res = run_cli("check", fx("singular"), "--what", "prop2")
    assert res.returncode == 2
    assert "singular" in res.stderr


def test_missing_file_is_an_input_error():
    res = run_cli("compute", "no-such-file.tangle")
    assert res.returncode == 2


def test_json_diagram_files_are_accepted(tmp_path):
    from maip.diagram import to_json

    path = tmp_path / "ex3.json"
    path.write_text(json.dumps(to_json(load("ex3"))))
    res = run_cli("compute", str(path))
    assert res.returncode == 0
    assert res.stdout.strip() == "t1^(c1-c3-1) - t2^(c2-c3)"


def test_bad_json_diagram_is_an_input_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"m": 1}')
    res = run_cli("compute", str(path))
    assert res.returncode == 2
