import pytest

import skewcert

HENON = {"vars": ["x", "y"], "images": ["1+y-x^2", "x"], "inverse_images": ["y", "x-1+y^2"]}
MONOMIAL = {"vars": ["x", "y"], "images": ["x", "x*y"], "inverse_images": ["x", "y/x"]}
WEHLER = {"gram": [[2, 4], [4, 2]], "pullback": [[15, 4], [-4, -1]], "classes": {"H": [1, 1]}}


def test_spectral_radius_exact():
    r = skewcert.evaluate("spectral_radius", lattice=WEHLER)
    assert r["exact"] == "7 + 4*sqrt(3)"
    assert skewcert.evaluate("signature", lattice=WEHLER) == [1, 1]


def test_intersection_sequence():
    s = skewcert.evaluate("intersection_sequence", {"H": "H", "j_max": 4}, lattice=WEHLER)
    assert s["values"][:3] == [12, 84, 1164]
    assert s["doubling_holds"]


def test_certify_henon():
    c = skewcert.certify(HENON, "x", "y", step=4, depth=3)
    assert c["dims"] == [2, 4, 8, 16]
    assert c["verdict"] == "FreeUpTo(3)"


def test_certify_monomial_relation():
    c = skewcert.certify(MONOMIAL, "x", "y", step=2, depth=3)
    assert c["verdict"] == "NotFree(at t-degree 8)"
    assert sorted(w["word"] for w in c["witness"]) == ["ABBA", "BAAB"]
    assert c["witness_expands_to_zero"]


def test_degree_sequence():
    d = skewcert.degree_sequence(HENON, 6)
    assert d["degrees"] == [2, 4, 8, 16, 32, 64]
    assert d["drops"] == []


def test_fixtures_pass():
    names = [f["name"] for f in skewcert.list_fixtures()]
    assert "wehler-pic2" in names and names == sorted(names)
    rep = skewcert.run_fixture("wehler-pic2")
    assert all(r["status"] == "pass" for r in rep["results"])
    assert "## E1. " in skewcert.errata()


def test_errors_raise():
    with pytest.raises(skewcert.SkewcertError):
        skewcert.run_fixture("no-such-fixture")
    with pytest.raises(skewcert.SkewcertError):
        skewcert.evaluate("no_such_op", lattice=WEHLER)
