from __future__ import annotations

import pytest

from logfw.errors import NotAHomomorphism, NotLocalPrelog
from logfw.groebner import Ideal
from logfw.instance import load_dict
from logfw.prelog import ideal_I_alpha, log_regular_by_definition, quotient_by_I_alpha, sharp_reduce, validate


def make(variables, ideal, gens, alpha, p=3, point=None, base="Fq"):
    data = {
        "base": {"base": base, "p": p},
        "ring": {"variables": list(variables), "ideal": list(ideal)},
        "monoid": {"ambient_rank": len(gens[0]) if gens else 0, "generators": [list(g) for g in gens]},
        "alpha": {f"e{i + 1}": a for i, a in enumerate(alpha)},
    }
    if point is not None:
        data["ring"]["point"] = list(point)
    return load_dict(data).prelog()


A1 = dict(variables="uvw", ideal=["u*w - v^2"], gens=[(1, 0), (1, 1), (1, 2)])


def same_ideal(P, texts):
    ring = P.ring.ambient
    # I_alpha lives in centered coordinates
    return ideal_I_alpha(P).equals(Ideal(ring, [P.ring.center(ring.parse(t)) for t in texts]))


@pytest.mark.parametrize(
    "case,log_regular,dims",
    [
        (dict(variables="xy", ideal=[], gens=[(1, 0), (0, 1)], alpha=["x", "y"]), True, (2, 0, 2)),
        (dict(variables="xy", ideal=[], gens=[(1,)], alpha=["x"]), True, (2, 1, 1)),
        (dict(variables="xy", ideal=[], gens=[(1,)], alpha=["x*y"]), False, (2, 1, 1)),
        (dict(variables="xy", ideal=["x*y"], gens=[], alpha=[]), False, (1, 1, 0)),
        (dict(variables="xy", ideal=["x*y"], gens=[(1, 0), (0, 1)], alpha=["x", "y"]), False, (1, 0, 2)),
        (dict(variables="xy", ideal=["x*y"], gens=[(1, 1), (1, 0), (0, 1)], alpha=["0", "x", "y"]), False, (1, 0, 2)),
        (dict(A1, alpha=["u", "v", "w"]), True, (2, 0, 2)),
        (dict(variables="x", ideal=[], gens=[(2,), (3,)], alpha=["x^2", "x^3"], p=5), False, (1, 0, 1)),
        (dict(variables="x", ideal=[], gens=[(1,)], alpha=["x^2"]), False, (1, 0, 1)),
    ],
)
def test_definition_route(case, log_regular, dims):
    P = make(**case)
    validate(P)
    v = log_regular_by_definition(P)
    assert v.is_log_regular == log_regular
    assert (v.dims["dim_R"], v.dims["dim_R_mod_I_alpha"], v.dims["dim_Q"]) == dims


def test_I_alpha():
    assert same_ideal(make("xy", [], [(1,)], ["x*y"]), ["x*y"])
    assert same_ideal(make(**A1, alpha=["u", "v", "w"]), ["u", "v", "w"])
    P = make("xuv", ["u*v - 1"], [(1, 0), (0, 1), (0, -1)], ["x", "u", "v"], point=[0, 1, 1])
    # unit generators do not contribute
    assert same_ideal(P, ["x", "u*v - 1"])
    Q = quotient_by_I_alpha(P)
    assert Q.dimension() == 1


def test_validation_rejects_non_homomorphisms():
    with pytest.raises(NotAHomomorphism):
        validate(make(**A1, alpha=["u", "v", "u + v"]))
    with pytest.raises(NotAHomomorphism):
        validate(make("xy", [], [(2,), (3,)], ["x", "y"], p=5))
    report = validate(make(**A1, alpha=["u", "v", "w"]))
    assert report.relations_checked == 1


def test_validation_rejects_non_local():
    with pytest.raises(NotLocalPrelog):
        validate(make("x", [], [(1,)], ["1 + x"]))
    with pytest.raises(NotLocalPrelog):
        validate(make("xuv", ["u*v - 1"], [(1, 0), (0, 1), (0, -1)], ["u", "u", "v"], point=[0, 1, 1]))


def test_validation_notes_unsaturated():
    report = validate(make("x", [], [(2,), (3,)], ["x^2", "x^3"], p=5))
    assert any("saturated" in n for n in report.notes)


def test_sharp_reduction():
    P = make("xuv", ["u*v - 1"], [(1, 0), (0, 1), (0, -1)], ["x", "u", "v"], point=[0, 1, 1])
    red = sharp_reduce(P)
    assert red.prelog.monoid.is_sharp
    assert len(red.prelog.monoid.generators) == 1
    assert red.ideal_equal
    assert str(red.prelog.alpha[0]) == "x"
    v = log_regular_by_definition(P)
    assert v.is_log_regular and v.dims["dim_Q"] == 1


def test_sharp_reduction_of_sharp_is_identity():
    P = make(**A1, alpha=["u", "v", "w"])
    assert sharp_reduce(P).prelog is P


def test_alpha_of_extends_multiplicatively():
    P = make(**A1, alpha=["u", "v", "w"])
    assert P.ring.ideal.contains(P.alpha_of((2, 2)) - P.ring.ambient.parse("v^2"))
    with pytest.raises(ValueError):
        P.alpha_of((0, 1))


def test_verdict_json():
    v = log_regular_by_definition(make("xy", [], [(1,)], ["x*y"]))
    js = v.to_json()
    assert js["route"] == "definition" and js["regular_quotient"] is False
    assert js["witness"]["edim_R_mod_I_alpha"] == 2
