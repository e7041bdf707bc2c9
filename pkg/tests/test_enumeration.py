import copy
from math import comb, gcd

import pytest

from coxfano.dataio import load_list
from coxfano.enumeration import (
    MIDDLE_RAY_331, SearchBounds, SearchStats, compositions, default_jobs, degree_matrices,
    enumerate_sporadic, exponent_table, ray_configurations, verify_list,
)
from coxfano.isomorphy import canonical_form
from coxfano.lattice import det2


@pytest.fixture(scope="module")
def s2_keys():
    return {canonical_form(e.data()).key for e in load_list("s2")}


def test_bounds_validation():
    with pytest.raises(ValueError):
        SearchBounds(0, 3, 3)
    with pytest.raises(ValueError):
        enumerate_sporadic(1, SearchBounds(1, 1, 1))


@pytest.mark.parametrize("total, parts", [(7, 1), (7, 2), (7, 3), (7, 5), (7, 7)])
def test_compositions(total, parts):
    cs = list(compositions(total, parts))
    assert len(cs) == comb(total - 1, parts - 1)
    assert all(sum(c) == total and min(c) >= 1 for c in cs)


def test_ray_configurations_are_normal():
    for s in (2, 3, 4):
        confs = list(ray_configurations(s, 3))
        assert confs and len(set(confs)) == len(confs)
        for rays in confs:
            assert rays[0] == (1, 0)
            q1, q2 = rays[-1]
            assert 0 <= q1 < q2 <= 3
            assert all(gcd(*r) == 1 for r in rays)
            assert all(det2(a, b) > 0 for a, b in zip(rays, rays[1:]))


def test_degree_matrices_use_every_ray():
    rays = ((1, 0), (0, 1))
    mats = list(degree_matrices(rays, 2, True))
    assert mats
    for r1, r2, too_many in mats:
        cols = set(zip(r1, r2))
        assert any(c[1] == 0 for c in cols) and any(c[0] == 0 for c in cols)
        nonprim = sum(1 for c in zip(r1, r2) if gcd(*c) > 1 and c[1] == 0)
        assert too_many == (nonprim > 2 or sum(1 for c in zip(r1, r2) if gcd(*c) > 1 and c[0] == 0) > 2)


def test_exponent_table():
    E = exponent_table(2, 3)
    assert E.max() <= 2 and E.sum(axis=1).max() <= 3 and E.sum(axis=1).min() >= 2
    assert len({tuple(r) for r in E}) == len(E)


def test_small_search_is_a_subset_of_the_list(s2_keys, entry):
    stats = SearchStats()
    forms = enumerate_sporadic(2, SearchBounds(1, 2, 2), stats=stats)
    keys = {f.key for f in forms}
    assert len(keys) == 2 and keys < s2_keys
    assert canonical_form(entry("15").data()).key in keys
    assert stats.valid >= len(forms)


def test_prune_does_not_change_the_output():
    b = SearchBounds(2, 4, 5)
    assert [f.key for f in enumerate_sporadic(2, b)] == [f.key for f in enumerate_sporadic(2, b, prune=False)]


def test_results_grow_with_bounds(s2_keys):
    small = {f.key for f in enumerate_sporadic(2, SearchBounds(2, 3, 4))}
    big = {f.key for f in enumerate_sporadic(2, SearchBounds(2, 4, 6))}
    assert small <= big <= s2_keys


def test_jobs_do_not_change_the_output():
    b = SearchBounds(2, 3, 4)
    assert [f.key for f in enumerate_sporadic(2, b, jobs=2)] == [f.key for f in enumerate_sporadic(2, b)]


def test_seven_rays_give_nothing():
    assert enumerate_sporadic(7, SearchBounds(3, 3, 4)) == []


def test_subcase_predicates(entry):
    assert MIDDLE_RAY_331.matrix(entry("149").Q)
    assert MIDDLE_RAY_331.degree(entry("149").Q, entry("149").data().mu)
    assert not MIDDLE_RAY_331.matrix(entry("1").Q)


def test_verify_list_reports_a_wrong_k4(entry):
    entries = load_list("s2")
    golden = copy.deepcopy(entries)
    nine = next(g for g in golden if g.id == "9")
    nine.k4 = 17
    rep = verify_list(entries, golden)
    assert rep.total == 18 and rep.passed == 17
    (bad,) = rep.failures
    assert bad.id == "9" and "K4 16 != expected 17" in bad.line()
    assert rep.summary() == "17/18 ok"


def test_verify_list_keeps_order_with_workers():
    entries = load_list("s2")
    rep = verify_list(entries, jobs=2)
    assert [r.id for r in rep.results] == [e.id for e in entries] and rep.ok


def test_verify_series_entry(entry):
    rep = verify_list([entry("S1")])
    assert rep.ok and rep.results[0].computed["samples"] == 20


def test_default_jobs(monkeypatch):
    monkeypatch.setenv("COXFANO_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.setenv("COXFANO_JOBS", "junk")
    assert default_jobs() == 1
    monkeypatch.delenv("COXFANO_JOBS")
    assert default_jobs() == 1
