from itertools import product

import pytest
from hypothesis import given, strategies as st

from coxfano.cones import (
    Cone2, NotPointed, angular_order, cone_of, contains, effective_cone, intersect,
    moving_cone, ray_constellation,
)
from coxfano.lattice import det2
from oracles import in_cone, moving_cone_contains

vec2 = st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(lambda v: v != (0, 0))
upper = st.tuples(st.integers(-6, 6), st.integers(1, 6))
BOX = list(product(range(-7, 8), repeat=2))


def test_cone_validation():
    with pytest.raises(ValueError):
        Cone2(((2, 0), (0, 1)))
    with pytest.raises(ValueError):
        Cone2(((0, 1), (1, 0)))
    assert Cone2(((1, 0), (0, 1))).is_regular()
    assert not Cone2(((1, 0), (1, 2))).is_regular()


def test_not_pointed():
    with pytest.raises(NotPointed):
        cone_of([(1, 0), (-1, 0)])
    with pytest.raises(NotPointed):
        cone_of([(1, 0), (0, 1), (-1, -1)])


@given(st.lists(upper, min_size=1, max_size=6))
def test_cone_membership_matches_oracle(vs):
    c = cone_of(vs)
    for p in BOX:
        assert contains(c, p) == in_cone(p, vs)
        assert contains(c, p, strict=True) == in_cone(p, vs, strict=True)


@given(st.lists(upper, min_size=1, max_size=4), st.lists(upper, min_size=1, max_size=4))
def test_intersection(a, b):
    ca, cb, cab = cone_of(a), cone_of(b), intersect(cone_of(a), cone_of(b))
    for p in BOX:
        assert contains(cab, p) == (contains(ca, p) and contains(cb, p))


@given(st.lists(upper, min_size=2, max_size=7))
def test_angular_order_is_counter_clockwise(vs):
    order = angular_order(vs)
    for i, j in zip(order, order[1:]):
        assert det2(vs[i], vs[j]) >= 0


def test_moving_cone_of_241_is_the_quadrant(entry):
    Q = entry("241").Q
    assert moving_cone(Q) == Cone2(((1, 0), (0, 1)))
    for p in BOX:
        assert contains(moving_cone(Q), p) == moving_cone_contains(Q, p)


def test_moving_cone_matches_oracle_on_corpus(sporadic):
    pts = [p for p in BOX if p[1] >= 0]
    for e in sporadic[::7]:
        mov = moving_cone(e.Q)
        for p in pts:
            assert contains(mov, p) == moving_cone_contains(e.Q, p), e.id


def test_moving_cone_inside_effective(sporadic):
    for e in sporadic:
        eff, mov = effective_cone(e.Q), moving_cone(e.Q)
        assert all(contains(eff, r) for r in mov.rays)
        # Mov = Eff exactly when both boundary rays carry at least two degrees
        ends = ray_constellation(e.Q).multiplicities
        assert (mov == eff) == (ends[0] >= 2 and ends[-1] >= 2), e.id


def test_constellation_examples(entry):
    assert ray_constellation(entry("1").Q).multiplicities in ((4, 3), (3, 4))
    assert ray_constellation(entry("229").Q).s == 3
