from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logfw import lattice as lat
from logfw.errors import InputError, UnsupportedMonoid
from logfw.monoid import AffineMonoid, spec_isomorphism


def enumerate_sums(gens, bound):
    """All elements of the monoid with coordinate sum <= bound (generators in N^d minus 0)."""
    seen = {tuple([0] * len(gens[0]))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple(a + b for a, b in zip(v, g))
                if sum(w) <= bound and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


positive_gens = st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any), min_size=1, max_size=4, unique=True
)


@settings(max_examples=60)
@given(positive_gens)
def test_membership_against_enumeration(gens):
    q = AffineMonoid(2, tuple(gens))
    bound = 9
    members = enumerate_sums(gens, bound)
    for v in itertools.product(range(bound + 1), repeat=2):
        if sum(v) <= bound:
            assert q.contains(v) == (v in members), v
    for v in members:
        rep = q.representation(v)
        total = [sum(c * g[i] for c, g in zip(rep, q.generators)) for i in range(2)]
        assert tuple(total) == v and min(rep, default=0) >= 0


@settings(max_examples=60)
@given(positive_gens)
def test_saturation_is_lattice_points_of_cone(gens):
    q = AffineMonoid(2, tuple(gens))
    sat = q.saturate()
    for v in itertools.product(range(9), repeat=2):
        expected = q.in_cone(v) and lat.in_lattice(q.gp_basis, v)
        assert sat.contains(v) == expected, v
    # every Hilbert basis element is irreducible in the saturation
    for h in sat.generators:
        for a in itertools.product(*(range(x + 1) for x in h)):
            b = tuple(x - y for x, y in zip(h, a))
            if any(a) and any(b):
                assert not (sat.contains(a) and sat.contains(b)), (h, a)


def test_numerical_monoid():
    q = AffineMonoid(1, ((2,), (3,)))
    assert not q.contains((1,)) and q.contains((5,)) and q.contains((0,))
    assert not q.is_saturated()
    assert q.saturate().generators == ((1,),)
    assert q.dim_chain() == 1 and q.rank == 1


def test_a1_cone():
    q = AffineMonoid(2, ((1, 0), (1, 1), (1, 2)))
    assert q.is_sharp and q.is_saturated()
    assert q.dim_chain() == 2 == q.dim_rank()
    assert len(q.faces) == 4
    assert not q.contains((0, 1))


def test_conifold_faces():
    q = AffineMonoid(3, ((1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)))
    assert q.is_saturated()
    # cone over a square: itself, 4 facets, 4 rays, the vertex
    assert len(q.faces) == 10
    assert q.dim_chain() == 3


def test_primes_are_complements_of_faces():
    q = AffineMonoid(3, ((1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)))
    for prime in q.spec():
        for i, g in enumerate(q.generators):
            assert prime.contains(g) == (i not in prime.face)


def test_sharpening_of_n_times_z():
    q = AffineMonoid(2, ((1, 0), (0, 1), (0, -1)))
    assert not q.is_sharp
    assert q.units() and q.dim_rank() == 1
    qbar, pi = q.sharpen()
    assert qbar.is_sharp and qbar.rank == 1
    assert pi.verify()
    s = q.section(pi)
    for g in qbar.generators:
        assert pi(s(g)) == g
    assert spec_isomorphism(q, qbar, pi) is not None


def test_group_is_sharpened_to_zero():
    q = AffineMonoid(1, ((1,), (-1,)))
    qbar, _ = q.sharpen()
    assert qbar.generators == () and qbar.rank == 0
    assert q.dim_chain() == 0


def test_torsion_in_sharpening_is_unsupported():
    # units are (+-2, 0) but (1, 0) lies in the group completion
    q = AffineMonoid(2, ((2, 0), (-2, 0), (1, 1), (1, 2)))
    with pytest.raises(UnsupportedMonoid):
        q.sharpen()


def test_generator_validation():
    with pytest.raises(InputError):
        AffineMonoid(2, ((1, 0, 0),))
    q = AffineMonoid(2, ((0, 0), (1, 0), (1, 0)))
    assert q.generators == ((1, 0),)


def test_info_keys():
    info = AffineMonoid(2, ((1, 0), (0, 1), (0, -1))).info()
    assert info["sharp"] is False
    assert info["dim_chain"] == info["dim_rank"] == 1
    assert info["num_primes"] == 2
