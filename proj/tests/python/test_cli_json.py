import json


def check(cli, validate, name, *args, expect=0):
    doc = json.loads(cli("--format", "json", *args, expect=expect))
    validate(doc, name)
    return doc


def test_graphs(cli, validate):
    doc = check(cli, validate, "graphs", "graphs", "--order", "2")
    assert doc["count"] == 36


def test_weight_exact_and_mc(cli, validate):
    doc = check(cli, validate, "weight", "weight", "--graph", "2; 2 L; L R")
    assert doc["value"]["text"] == "-1/12"
    check(cli, validate, "weight", "weight", "--graph", "3; 2 R; 3 L; L R", expect=1)
    doc = check(cli, validate, "weight", "weight", "--graph", "1; L R", "--mc", "100000", "5", "--sampler", "mixture")
    assert abs(doc["mean"] - 0.5) < 0.02


def test_star(cli, validate, data_dir):
    doc = check(cli, validate, "star", "star", "--pi", data_dir / "constant2d.txt", "--order", "2", "--apply", "x", "y")
    assert doc["result"] == "x*y + 1*h"
    doc = check(cli, validate, "star", "star", "--pi", data_dir / "so3.txt", "--order", "1")
    assert len(doc["terms"]) == 2


def test_verify(cli, validate, data_dir):
    doc = check(cli, validate, "verify", "verify", "--pi", data_dir / "x_dxdy.txt", "--order", "2")
    assert doc["passed"]


def test_brackets(cli, validate):
    doc = check(cli, validate, "brackets", "brackets", "hkr", "dim 2; d/dx ^ d/dy")
    assert doc["result"].startswith("dim 2; arity 2")


def test_mzv(cli, validate):
    doc = check(cli, validate, "mzv", "mzv", "zeta(3,3)/pi^6 + 1/2")
    assert not doc["value"]["rational"]


def test_solve_weights_order_one(cli, validate):
    doc = check(cli, validate, "solve-weights", "solve-weights", "--order", "1", "--pin-samples", "200000",
                "--check-samples", "100000")
    assert doc["weights"] == {"1; L R": "1/2", "1; R L": "-1/2"}


def test_usage_errors(cli):
    cli("graphs", expect=2)
    cli("star", "--pi", "/nonexistent", "--order", "1", expect=2)
