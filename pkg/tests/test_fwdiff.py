from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logfw.arith import p_sum_correction
from logfw.fwdiff import (
    WP,
    FWElement,
    Gen,
    determinant,
    fitting_minors,
    fw_criterion_verdict,
    fw_expand,
    is_free_by_minors,
    is_free_of_rank,
    presentation,
    verify_derivation,
)
from logfw.instance import load_dict
from logfw.ring import BaseSpec, PresentedRing

X, Y, Z = Gen("x", 0), Gen("x", 1), Gen("x", 2)


def ring(kind, p, variables, ideal=(), point=None, **kw):
    return PresentedRing(BaseSpec(kind, p, **kw), variables, list(ideal), point)


def prelog(variables, ideal, gens, alpha, p=3, base="Fq", point=None):
    data = {
        "base": {"base": base, "p": p},
        "ring": {"variables": list(variables), "ideal": list(ideal)},
        "monoid": {"ambient_rank": len(gens[0]) if gens else 0, "generators": [list(g) for g in gens]},
        "alpha": {f"e{i + 1}": a for i, a in enumerate(alpha)},
    }
    if point is not None:
        data["ring"]["point"] = point
    return load_dict(data).prelog()


def coeffs(elem, R):
    return {g.label(R): str(c) for g, c in elem.coeffs.items()}


# ------------------------------------------------------------------ w on polynomials


def test_sum_over_z3_carries_the_correction():
    R = ring("ZpLocal", 3, "xy")
    e = fw_expand(R.ambient.parse("x + y"), R)
    fiber = R.fiber_ring
    assert e[X] == fiber.one and e[Y] == fiber.one
    assert e[WP] == fiber.parse("2*x^2*y + 2*x*y^2")


def test_constants_over_z3():
    R = ring("ZpLocal", 3, "x")
    assert coeffs(fw_expand(R.ambient.from_int(3), R), R) == {"WP": "1"}
    assert fw_expand(R.ambient.from_int(9), R).is_zero()
    assert fw_expand(R.ambient.from_int(1), R).is_zero()


def test_squares_vanish_in_characteristic_two():
    R = ring("Fq", 2, "x")
    assert fw_expand(R.ambient.parse("x^2"), R).is_zero()
    assert coeffs(fw_expand(R.ambient.parse("x^3"), R), R) == {"WVar(x)": "x^4"}


def test_monomial_rule():
    R = ring("Fq", 5, "x")
    e = fw_expand(R.ambient.parse("x^3"), R)
    assert coeffs(e, R) == {"WVar(x)": "3*x^10"}


def test_quadric_cone():
    R = ring("Fq", 3, "xyz")
    e = fw_expand(R.ambient.parse("x*y - z^2"), R)
    # y^3 w(x) + x^3 w(y) - 2 z^3 w(z), and -2 = 1 mod 3
    assert coeffs(e, R) == {"WVar(x)": "y^3", "WVar(y)": "x^3", "WVar(z)": "z^3"}


def test_base_generator_over_rational_functions():
    R = ring("FpRational", 3, "x", r=1)
    e = fw_expand(R.ambient.parse("t*x"), R)
    fiber = R.fiber_ring
    t = R.base.coefficient_domain.gen(0)
    assert e[Gen("t", 0)] == fiber.parse("x^3")
    assert e[X] == fiber.const(R.base.coefficient_domain.frobenius(t))


def test_centered_coordinates():
    R = ring("Fq", 5, "xy", ["x^2 + y^2 - 2"], [1, 1])
    rows = presentation(prelog("xy", ["x^2 + y^2 - 2"], [], [], p=5, point=[1, 1]), sharpen=False).evaluated()
    # w(x^2 + y^2) at (1, 1): 2 w(x) + 2 w(y), a unit row
    assert rows == [[2, 2]]
    assert R.centered[0].constant_term() == 0


@st.composite
def zp_polys(draw, R, terms=3):
    mono = st.tuples(*[st.integers(0, 2)] * R.nvars)
    d = draw(st.dictionaries(mono, st.integers(-20, 20).filter(bool), max_size=terms))
    return R.ambient.from_dict({m: Fraction(c) for m, c in d.items()})


@pytest.mark.parametrize("p", [2, 3])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_axioms_over_zp(p, data):
    R = ring("ZpLocal", p, "xy")
    a, b = data.draw(zp_polys(R)), data.draw(zp_polys(R))
    w = lambda f: fw_expand(f, R, reduce=False)
    fiber = R.fiber_ring
    corr = FWElement(fiber, {WP: p_sum_correction([a, b], p)})
    assert w(a + b) == w(a) + w(b) - corr
    pa, pb = R.to_fiber(a) ** p, R.to_fiber(b) ** p
    assert w(a * b) == w(a).scale(pb) + w(b).scale(pa)


@pytest.mark.parametrize("p", [2, 3, 5])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_axioms_in_characteristic_p(p, data):
    R = ring("Fq", p, "xy")
    mono = st.tuples(st.integers(0, 3), st.integers(0, 3))
    draw = lambda: R.ambient.from_dict(data.draw(st.dictionaries(mono, st.integers(1, p - 1), max_size=3)))
    a, b = draw(), draw()
    w = lambda f: fw_expand(f, R, reduce=False)
    assert w(a + b) == w(a) + w(b)
    assert w(a * b) == w(a).scale(b**p) + w(b).scale(a**p)


# ------------------------------------------------------------------ presentations


def test_presentation_of_the_plane_with_both_axes():
    P = prelog("xy", [], [(1, 0), (0, 1)], ["x", "y"])
    M = presentation(P)
    js = M.to_json()
    assert js["generators"] == ["WVar(x)", "WVar(y)", "WLog(1)", "WLog(2)"]
    assert [r["provenance"] for r in js["relations"]] == ["log:1", "log:2"]
    # generators are stored sorted, so (0, 1) -> y comes first; -1 prints as 2 over F_3
    rows = [r["coefficients"] for r in js["relations"]]
    assert rows == [{"WVar(y)": "1", "WLog(2)": "2*y^3"}, {"WVar(x)": "1", "WLog(1)": "2*x^3"}]
    assert M.rank_at_closed_point() == 2
    assert is_free_of_rank(M, 2).free


def test_product_of_coordinates_is_not_free():
    P = prelog("xy", [], [(1,)], ["x*y"])
    M = presentation(P)
    assert M.rank_at_closed_point() == 3
    res = is_free_of_rank(M, 2)
    assert not res.free and res.reason == "Fitt_rho is not the unit ideal"
    assert not is_free_by_minors(M, 2)
    v = fw_criterion_verdict(P)
    assert not v.is_log_regular and v.dims["target"] == 2


def test_cusp_with_trivial_structure():
    P = prelog("xy", ["y^2 - x^3"], [], [], p=5)
    M = presentation(P)
    assert M.generators == [X, Y]
    assert M.rank_at_closed_point() == 2
    assert not fw_criterion_verdict(P).is_log_regular


@pytest.mark.parametrize(
    "args,rank,target",
    [
        (("x", [], [(1,)], ["x"], 3, "ZpLocal"), 2, 2),
        (("xy", ["x*y - 3"], [(1, 0), (0, 1)], ["x", "y"], 3, "ZpLocal"), 2, 2),
        (("x", ["x^2 - 9"], [], [], 3, "ZpLocal"), 2, 1),
        (("x", ["x^2 - 3"], [], [], 3, "ZpLocal"), 1, 1),
        (("uvw", ["u*w - v^2"], [(1, 0), (1, 1), (1, 2)], ["u", "v", "w"], 3, "Fq"), 2, 2),
        (("x", [], [], [], 3, "FpRational"), 2, 2),
    ],
)
def test_rank_and_target(args, rank, target):
    P = prelog(*args)
    v = fw_criterion_verdict(P)
    assert v.dims["rank_at_closed_point"] == rank
    assert v.dims["target"] == target
    assert v.is_log_regular == (rank == target)


def test_mixed_characteristic_generators():
    P = prelog("x", [], [(1,)], ["x"], base="ZpLocal")
    M = presentation(P)
    assert M.to_json()["generators"] == ["WP", "WVar(x)", "WLog(1)"]


def test_rational_function_generators():
    P = prelog("x", [], [], [], base="FpRational")
    assert presentation(P).to_json()["generators"] == ["WVar(x)", "WBase(t)"]


def test_with_entry_replaces_one_coefficient():
    P = prelog("xy", [], [(1,)], ["x*y"])
    M = presentation(P)
    M2 = M.with_entry(0, 0, M.ring.fiber_ring.one)
    assert M2.rows[0][X] == M.ring.fiber_ring.one
    assert M.rows[0][X] != M2.rows[0][X]
    assert M2.rank_at_closed_point() == 2


# ------------------------------------------------------------------ Fitting ideals


def test_determinant():
    R = ring("Fq", 5, "xy").fiber_ring
    m = [[R.parse("x"), R.parse("y")], [R.parse("1"), R.parse("x")]]
    assert determinant(m, R) == R.parse("x^2 - y")


def test_fitting_minors_conventions():
    P = prelog("xy", [], [(1,)], ["x*y"])
    M = presentation(P)
    assert fitting_minors(M, 3) is None
    assert fitting_minors(M, 0) == []
    assert len(fitting_minors(M, 2)) == 3


def test_nilpotent_entries_are_not_locally_zero():
    # F_3[x]/(x^2): w(x^2) = 2x^3 w(x) reduces to 0, the module is free of rank 1
    P = prelog("x", ["x^2"], [], [])
    M = presentation(P)
    assert all(r.is_zero() for r in M.rows)
    assert is_free_of_rank(M, 1).free
    assert not fw_criterion_verdict(P).is_log_regular  # dim 0, target 0


# ------------------------------------------------------------------ verify_derivation


def test_universal_derivation_passes():
    for R in (ring("Fq", 3, "xy"), ring("ZpLocal", 3, "xy"), ring("FpRational", 3, "x", r=1), ring("Fq", 2, "xy", m=2)):
        rep = verify_derivation(lambda f: fw_expand(f, R, reduce=False), R, samples=30)
        assert rep.ok, rep.violations[:3]


def test_zero_map_passes():
    R = ring("ZpLocal", 3, "xy")
    zero = FWElement(R.fiber_ring)
    assert verify_derivation(lambda f: zero, R, samples=20).ok


def test_perturbed_derivation_fails():
    R = ring("Fq", 3, "xy")
    bump = FWElement(R.fiber_ring, {X: R.fiber_ring.one})
    rep = verify_derivation(lambda f: fw_expand(f, R, reduce=False) + bump, R, samples=20)
    assert not rep.ok
    assert any("sum rule" in v for v in rep.violations)


def test_dropping_the_correction_is_detected():
    R = ring("ZpLocal", 3, "xy")

    def naive(f):
        e = fw_expand(f, R, reduce=False)
        if len(f.terms) > 1:
            e = e + FWElement(R.fiber_ring, {WP: p_sum_correction(list(_terms(f)), 3)})
        return e

    assert not verify_derivation(naive, R, samples=30).ok


def _terms(f):
    return [f.ring.from_dict({m: c}) for m, c in f.terms.items()]


def test_log_axiom_check():
    P = prelog("xy", [], [(1, 0), (0, 1)], ["x", "y"])
    R = P.ring
    w = lambda f: fw_expand(f, R, reduce=False)
    # delta(e_i) = w(x_i) / x_i^3 is not polynomial, so use the formal WLog generators
    logs = lambda i: FWElement(R.fiber_ring, {Gen("log", i): R.fiber_ring.one})
    rep = verify_derivation(w, R, samples=4, prelog=P, delta=logs, closure=True)
    assert rep.ok
    rep = verify_derivation(w, R, samples=4, prelog=P, delta=logs, closure=False)
    assert not rep.ok  # w(x) = x^3 WLog only holds in the quotient module
