from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from coxfano.intersection import (
    EmptyPolytope, NoChamber, anticanonical_degree, fiber_polytope, hilbert_differences,
    intersection_basis, lattice_point_count, quintic_volume, toric_chambers_inside, volume,
)
from coxfano.cones import Cone2
from coxfano.lattice import det2


def hull_volume(Q, w):
    """Float volume of the fiber polytope, projected along a unimodular pair of columns."""
    ws = [(Q[0][i], Q[1][i]) for i in range(7)]
    j, k = next((j, k) for j, k in combinations(range(7), 2) if abs(det2(ws[j], ws[k])) == 1)
    keep = [i for i in range(7) if i not in (j, k)]
    P = fiber_polytope(Q, w)
    pts = np.array([[float(v[i]) for i in keep] for v in P.vertices])
    return ConvexHull(pts).volume


def test_fiber_polytope_of_id1(entry):
    Q = entry("1").Q
    P = fiber_polytope(Q, (1, 1))
    assert P.n_vertices == 12 and P.dim == 5
    assert volume(Q, (1, 1)) == Fraction(1, 12)
    assert volume(Q, (1, 0)) == 0
    with pytest.raises(EmptyPolytope):
        fiber_polytope(Q, (-1, 0))


def test_volume_matches_convex_hull(sporadic):
    for e in sporadic[::11]:
        for w in [(2, 3), (3, 2), (4, 5)]:
            v = volume(e.Q, w)
            if v:
                assert float(v) == pytest.approx(hull_volume(e.Q, w), rel=1e-9), e.id


def test_mixed_degrees(entry, valid_report):
    q = quintic_volume(entry("1").Q, (1, 0), (0, 1))
    assert [q.degree(k) for k in range(6)] == [0, 0, 0, 1, 0, 0]
    q = quintic_volume(entry("18").Q, (1, 0), (0, 1))
    assert q.degree(3) == Fraction(1, 6)


def test_lattice_point_counts(entry):
    Q = entry("1").Q
    assert lattice_point_count(Q, (1, 1)) == 12
    assert lattice_point_count(Q, (2, 0)) == 10
    assert lattice_point_count(Q, (0, 0)) == 1
    assert lattice_point_count(Q, (-1, 0)) == 0


def test_binomial_consistency(sporadic, valid_report):
    for e in sporadic[::3]:
        lam = valid_report(e.id).lam
        q = intersection_basis(e.Q, lam, valid_report(e.id).antik)
        a, b = q.a, q.b
        lhs = 120 * volume(e.Q, (a[0] + b[0], a[1] + b[1]))
        assert lhs == sum(comb(5, i) * q.degree(i) for i in range(6)), e.id


def test_k4_examples(entry):
    for ident, k4 in [("1", 432), ("9", 16), ("18", 54), ("229", 140), ("241", 80), ("447", 18)]:
        assert anticanonical_degree(entry(ident).data()) == k4


def test_k4_independent_of_chamber_and_basis(sporadic, valid_report):
    multi = 0
    for e in sporadic[::10]:
        rep = valid_report(e.id)
        cands = toric_chambers_inside(e.Q, rep.lam)
        k4 = e.k4
        for c in range(len(cands)):
            assert anticanonical_degree(e.data(), chamber=c, lam=rep.lam) == k4, e.id
        multi += len(cands) > 1
        a, b = cands[0].rays
        other = ((2 * a[0] + b[0], 2 * a[1] + b[1]), (a[0] + 3 * b[0], a[1] + 3 * b[1]))
        assert anticanonical_degree(e.data(), basis=other, lam=rep.lam) == k4, e.id
    assert multi > 0


@pytest.mark.parametrize("ident", ["1", "15", "18"])
def test_ehrhart_diagnostic(entry, ident):
    e = entry(ident)
    _, diffs = hilbert_differences(e.data(), 9)
    assert diffs and all(x == e.k4 for x in diffs)


def test_no_chamber():
    with pytest.raises(NoChamber):
        intersection_basis([[1, 1, 1, 1, 0, 0, 0], [0, 0, 0, 0, 1, 1, 1]], Cone2(((1, 0),)))
