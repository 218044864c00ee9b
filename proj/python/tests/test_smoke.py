import math

import pytest

import perfo


def test_families_listed():
    names = perfo.family_names()
    assert "equator-poles" in names and "stek-boundary" in names


def test_construct_roundtrip_hash():
    d = perfo.construct("equator-poles", k=4, c=1.0)
    assert d["holes"]
    assert perfo.blueprint_hash(d) == perfo.blueprint_hash(perfo.construct("equator-poles", k=4, c=1.0))


def test_bad_family_raises():
    with pytest.raises(Exception):
        perfo.construct("no-such-family", k=4)


def test_mesh_and_solve_sphere_with_holes():
    d = perfo.construct("equator-poles", k=4, c=1.0)
    s = perfo.mesh_summary(d, 0.2)
    assert s["vertices"] > 0
    vals = perfo.solve(d, 0.2, "neumann", 3)
    assert vals[0] == pytest.approx(0.0, abs=1e-8)
    assert 0 < vals[1] <= vals[2]


def test_evaluate_gap_positive():
    d = perfo.construct("equator-poles", k=4, c=1.0)
    e = perfo.evaluate(d, 0.2)
    assert e["ok"]
    assert e["gap"] > 0


def test_fit_decay_recovers_rate():
    xs = [4, 9, 16, 25]
    fit = perfo.fit_decay(xs, [math.exp(-0.5 * math.sqrt(x)) for x in xs], "exp-sqrt")
    assert fit["rate"] == pytest.approx(0.5, abs=1e-12)
    assert fit["r2"] == pytest.approx(1.0, abs=1e-12)


def test_lawson_and_leqpol():
    assert perfo.lawson_area(10.0) == pytest.approx(8 * math.pi - 4 * math.pi * math.log(2) / 10)
    # R = 2 pi / k with r = exp(-c sqrt k), c = 0.038
    r = 1e-6
    R = 2 * math.pi * (0.038 / math.log(1 / r)) ** 2
    L = perfo.leqpol(R, r)
    assert abs(L["a"] + math.log(r)) <= 5
    assert abs(L["b"] - 1) <= 2 * math.sqrt(R)
    with pytest.raises(ValueError):
        perfo.leqpol(0.5, 1e-3)
