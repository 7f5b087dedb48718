import math

import pytest

kstar = pytest.importorskip("kstar")

CONSTANT = "dim 2; d/dx ^ d/dy"
SO3 = "dim 3; x * d/dy ^ d/dz + y * d/dz ^ d/dx + z * d/dx ^ d/dy"


def test_graph_counts():
    assert [len(kstar.graphs(n)) for n in range(4)] == [1, 2, 36, 1728]
    assert kstar.graphs(1) == ["1; L R", "1; R L"]
    assert kstar.graph_count(4) == 160000


def test_star_on_constant_structure():
    assert kstar.star(CONSTANT, 2, "x", "y") == ["x*y", "1", "0"]
    assert kstar.star(CONSTANT, 2, "x^2", "y^2") == ["x^2*y^2", "4*x*y", "2"]


def test_verify_and_dirac():
    r = kstar.verify(SO3, 2)
    assert r["associative"] and r["quantization"] and r["sample_failures"] == 0
    assert kstar.verify("dim 2; x * d/dx ^ d/dy", 2, dirac=True)["quantization"]


def test_weights():
    assert kstar.weight_exact("2; L 2; 1 R") == "1/24"
    assert kstar.weight_exact("3; 2 R; 3 L; L R") is None
    est = kstar.weight_mc("1; L R", 200000, 3)
    assert abs(est["mean"] - 0.5) < max(0.01, 3 * est["standard_error"])
    assert kstar.wedge_integral(0j, 1 + 0j) == 0.5


def test_brackets():
    assert kstar.schouten("dim 2; x * d/dy", "dim 2; y * d/dx") == "dim 2; x * d/dx - y * d/dy"
    assert kstar.is_poisson(SO3)
    assert kstar.hochschild_d("dim 1; arity 1; [dx^2]") == "dim 1; arity 2; -2*[dx | dx]"
    assert kstar.hkr(CONSTANT).startswith("dim 2; arity 2;")


def test_mzv_against_mpmath():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    expected = -mpmath.mpf(1) / 6048 + mpmath.mpf(9) / 128 * mpmath.zeta(3) ** 2 / mpmath.pi**6
    got = mpmath.mpf(kstar.mzv("-1/6048 + 9/128*zeta(3)^2/pi^6", 30))
    assert abs(got - expected) < 1e-28


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        kstar.star(CONSTANT, 1, "x +", "y")
    with pytest.raises(ValueError):
        kstar.weight_exact("1; L L")
    with pytest.raises(LookupError):
        kstar.star("dim 2; x * d/dx ^ d/dy", 3, "x", "y")
    with pytest.raises(ValueError):
        kstar.star("dim 3; y * d/dx ^ d/dy + x * d/dy ^ d/dz", 1, "x", "y")
