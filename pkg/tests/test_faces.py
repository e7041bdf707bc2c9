import pytest

from coxfano.cones import Cone2, contains, contains_cone, moving_cone
from coxfano.faces import (
    FULL, OnWall, OutsideEffective, OutsideMoving, Trinomial, ample_chamber, git_cone, git_fan,
    is_xbar_face, members, picard_lattice, projected_cone, x_faces,
)
from coxfano.lattice import ZZ2
from coxfano.validity import anticanonical_class
from oracles import face_by_roots_of_unity, in_cone, minors_gcd


def test_face_rule_matches_roots_of_unity_search(sporadic):
    for e in sporadic:
        g = e.data().g
        for mask in range(FULL + 1):
            assert is_xbar_face(g, mask) == face_by_roots_of_unity(g.monomials, mask), (e.id, mask)


def test_face_rule_on_small_trinomial():
    g = Trinomial((2, 0, 0, 0, 0, 0, 0), (0, 1, 1, 0, 0, 0, 0), (0, 0, 0, 3, 0, 0, 0))
    assert is_xbar_face(g, 0)
    assert not is_xbar_face(g, 0b0000001)  # only T1^2 survives
    assert is_xbar_face(g, 0b0000111)  # T1^2 + T2 T3 = 0 has solutions
    assert is_xbar_face(g, 0b1110000)  # g vanishes identically
    assert not is_xbar_face(g, 0b1110001)
    assert is_xbar_face(g, 0b1111001)  # T1^2 + T4^3 = 0


def test_fan_of_229(entry):
    d = entry("229").data()
    assert git_fan(d.Q, d.g).rays == ((1, 0), (1, 1), (0, 1))
    lam = ample_chamber(d.Q, d.g, anticanonical_class(d))
    assert lam == Cone2(((1, 0), (1, 1)))


def test_chamber_agrees_with_definition(sporadic):
    for e in sporadic:
        d = e.data()
        antik = anticanonical_class(d)
        lam = ample_chamber(d.Q, d.g, antik)
        assert git_cone(d.Q, d.g, antik) == lam, e.id
        assert contains(lam, antik, strict=True)


def test_chamber_errors(entry):
    d = entry("229").data()
    with pytest.raises(OnWall):
        ample_chamber(d.Q, d.g, (1, 1))
    with pytest.raises(OutsideEffective):
        ample_chamber(d.Q, d.g, (-1, 0))


def test_chambers_outside_moving_cone_are_rejected(sporadic):
    seen = 0
    for e in sporadic:
        d = e.data()
        mov = moving_cone(d.Q)
        for c in git_fan(d.Q, d.g).chambers:
            if contains_cone(mov, c):
                continue
            w = (c.first[0] + c.last[0], c.first[1] + c.last[1])
            with pytest.raises(OutsideMoving):
                ample_chamber(d.Q, d.g, w)
            seen += 1
    assert seen > 0


def test_x_faces_match_interior_oracle(sporadic):
    for e in sporadic[::5]:
        d = e.data()
        antik = anticanonical_class(d)
        lam = ample_chamber(d.Q, d.g, antik)
        ws = d.degrees
        expected = [m for m in range(1, FULL + 1)
                    if face_by_roots_of_unity(d.g.monomials, m)
                    and in_cone(antik, [ws[i] for i in members(m)], strict=True)]
        assert x_faces(d.Q, d.g, lam) == expected, e.id


def test_picard_lattice_is_full_on_corpus(sporadic):
    for e in sporadic:
        d = e.data()
        lam = ample_chamber(d.Q, d.g, anticanonical_class(d))
        assert picard_lattice(d.Q, d.g, lam) == ZZ2, e.id
        for m in x_faces(d.Q, d.g, lam):
            assert minors_gcd([d.degrees[i] for i in members(m)]) == 1


def test_projected_cone(entry):
    d = entry("229").data()
    assert projected_cone(d.Q, 0) == Cone2(())
    full = projected_cone(d.Q, FULL)
    assert all(in_cone(w, list(full.rays)) for w in d.degrees)
