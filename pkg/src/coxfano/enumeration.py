"""Bounded exhaustive search for valid specifying data.

The search walks grading matrices in normal position (first extreme ray
(1, 0), last extreme ray (q1, q2) with 0 <= q1 < q2), builds every relation
degree as Q*l for exponent vectors l inside the box, and combines monomials
of equal degree into trinomials with disjoint supports and coprime
contents. Survivors are validated and reduced to canonical forms.

With ``prune`` set, the search skips degree configurations and candidates
that the structural filters in :mod:`coxfano.validity` rule out for every
valid entry. The output must not depend on it.

Verification of stored lists lives here too, as it shares the worker pool
and reporting conventions.
"""
from __future__ import annotations

import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product
from math import gcd
from typing import Callable, Iterator, Sequence

import numpy as np

from .cones import contains, effective_cone, leave_out_cones, ray_constellation
from .faces import NVARS
from .isomorphy import CanonicalForm, canonical_form
from .lattice import Vec, content, det2
from .dataio import LIST_INFO, ClassEntry
from .intersection import anticanonical_degree
from .series import ExpressionError, InadmissibleParams, admissible_samples, instantiate_series  # noqa: F401
from .validity import SpecifyingData, check_grading, lemma_filters, smoothable_flag, validate


@dataclass(frozen=True)
class SearchBounds:
    max_coord: int
    max_exp: int
    max_total_deg: int

    def __post_init__(self):
        if min(self.max_coord, self.max_exp, self.max_total_deg) < 1:
            raise ValueError("search bounds must be positive")

    def contains(self, cf: CanonicalForm) -> bool:
        return (
            max(abs(x) for row in cf.Q for x in row) <= self.max_coord
            and max(max(l) for l in cf.monomials) <= self.max_exp
            and max(sum(l) for l in cf.monomials) <= self.max_total_deg
        )


@dataclass
class SearchStats:
    matrices: int = 0
    matrices_pruned: int = 0
    degrees: int = 0
    candidates: int = 0
    candidates_pruned: int = 0
    valid: int = 0

    def merge(self, other: "SearchStats") -> None:
        for k in self.__dataclass_fields__:
            setattr(self, k, getattr(self, k) + getattr(other, k))


def _primitive_between(first: Vec, last: Vec, bound: int) -> list[Vec]:
    out = []
    for x in range(0, bound + 1):
        for y in range(0, bound + 1):
            v = (x, y)
            if gcd(x, y) == 1 and det2(first, v) > 0 and det2(v, last) > 0:
                out.append(v)
    return out


def ray_configurations(s: int, max_coord: int) -> Iterator[tuple[Vec, ...]]:
    """Counter-clockwise tuples of s primitive rays in normal position."""
    first = (1, 0)
    for q2 in range(1, max_coord + 1):
        for q1 in range(0, q2):
            last = (q1, q2)
            if gcd(q1, q2) != 1:
                continue
            # middle rays lie strictly inside the first quadrant, so slope orders them
            inner = sorted(_primitive_between(first, last, max_coord), key=lambda v: Fraction(v[1], v[0]))
            for mids in combinations(inner, s - 2):
                yield (first,) + mids + (last,)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def degree_matrices(rays: Sequence[Vec], max_coord: int, prune: bool) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], bool]]:
    """All grading matrices with degrees on ``rays`` (each ray used).

    Yields (row1, row2, pruned) where ``pruned`` flags matrices with more
    than two non-primitive degrees on one ray.
    """
    mults = []
    for r in rays:
        kmax = min(max_coord // r[0] if r[0] else max_coord, max_coord // r[1] if r[1] else max_coord)
        mults.append(list(range(1, kmax + 1)))
    for comp in compositions(NVARS, len(rays)):
        per_ray = [list(combinations_with_replacement(mults[i], n)) for i, n in enumerate(comp)]
        for choice in product(*per_ray):
            cols = []
            too_many = False
            for r, ks in zip(rays, choice):
                if sum(1 for k in ks if k > 1) > 2:
                    too_many = True
                cols.extend((k * r[0], k * r[1]) for k in ks)
            yield tuple(c[0] for c in cols), tuple(c[1] for c in cols), too_many


@lru_cache(maxsize=8)
def exponent_table(max_exp: int, max_deg: int) -> np.ndarray:
    """All nonzero exponent vectors in the box except lone linear monomials."""
    rows = []

    def rec(prefix, remaining):
        if len(prefix) == NVARS:
            rows.append(prefix)
            return
        for e in range(0, min(max_exp, remaining) + 1):
            rec(prefix + (e,), remaining - e)

    rec((), max_deg)
    arr = np.array(rows, dtype=np.int64)
    total = arr.sum(axis=1)
    keep = (total > 0) & ~((total == 1))
    return arr[keep]


def _block_key(Q, ls) -> tuple:
    """Representative of the trinomial up to permuting equal-degree variables
    and reordering monomials; equal keys mean identical data up to renaming."""
    cols = list(zip(Q[0], Q[1]))
    best = None
    for rho in permutations(range(3)):
        rows = [ls[r] for r in rho]
        order = sorted(range(NVARS), key=lambda i: (cols[i], tuple(rw[i] for rw in rows)))
        key = tuple(tuple(rw[i] for i in order) for rw in rows)
        if best is None or key < best:
            best = key
    return best


@dataclass(frozen=True)
class Subcase:
    """Restriction of a search: ``matrix`` screens grading matrices,
    ``degree`` screens relation degrees for an accepted matrix."""

    name: str
    matrix: Callable[[Sequence[Sequence[int]]], bool]
    degree: Callable[[Sequence[Sequence[int]], Vec], bool]


def _search_matrix(Q, bounds: SearchBounds, prune: bool, subcase: Subcase | None,
                   stats: SearchStats) -> dict[str, CanonicalForm]:
    found: dict[str, CanonicalForm] = {}
    E = exponent_table(bounds.max_exp, bounds.max_total_deg)
    Qa = np.array(Q, dtype=np.int64)
    degs = E @ Qa.T
    eff = effective_cone(Q)
    two_out = leave_out_cones(Q, 2)
    wsum = (sum(Q[0]), sum(Q[1]))
    sup = (E > 0) @ (1 << np.arange(NVARS, dtype=np.int64))
    contents = np.gcd.reduce(E, axis=1)

    groups: dict[tuple[int, int], list[int]] = {}
    for idx, (a, b) in enumerate(map(tuple, degs)):
        groups.setdefault((int(a), int(b)), []).append(idx)

    for mu, members_ in sorted(groups.items()):
        if len(members_) < 3:
            continue
        if subcase is not None and not subcase.degree(Q, mu):
            continue
        antik = (wsum[0] - mu[0], wsum[1] - mu[1])
        if not contains(eff, antik, strict=True):
            continue
        if not all(contains(c, mu) for c in two_out):
            continue
        stats.degrees += 1
        seen: set = set()
        ms = members_
        for x in range(len(ms)):
            i = ms[x]
            for y in range(x + 1, len(ms)):
                j = ms[y]
                if sup[i] & sup[j] or gcd(int(contents[i]), int(contents[j])) != 1:
                    continue
                sij = sup[i] | sup[j]
                for z in range(y + 1, len(ms)):
                    k = ms[z]
                    if sup[k] & sij:
                        continue
                    ck = int(contents[k])
                    if gcd(ck, int(contents[i])) != 1 or gcd(ck, int(contents[j])) != 1:
                        continue
                    ls = (tuple(int(v) for v in E[i]), tuple(int(v) for v in E[j]), tuple(int(v) for v in E[k]))
                    bk = _block_key(Q, ls)
                    if bk in seen:
                        continue
                    seen.add(bk)
                    stats.candidates += 1
                    d = SpecifyingData(Q, ls)
                    rep = validate(d)
                    if prune and rep.lam is not None and not all(c.ok for c in lemma_filters(d, rep.lam)):
                        stats.candidates_pruned += 1
                        continue
                    if not rep.ok:
                        continue
                    cf = canonical_form(d)
                    if not bounds.contains(cf):
                        continue
                    stats.valid += 1
                    found.setdefault(cf.key, cf)
    return found


def _work(args) -> tuple[dict[str, CanonicalForm], SearchStats]:
    rays, bounds, prune, subcase = args
    stats = SearchStats()
    found: dict[str, CanonicalForm] = {}
    for r1, r2, too_many in degree_matrices(rays, bounds.max_coord, prune):
        Q = (r1, r2)
        stats.matrices += 1
        if prune and too_many:
            stats.matrices_pruned += 1
            continue
        if subcase is not None and not subcase.matrix(Q):
            continue
        if not all(c.ok for c in check_grading(Q)):
            continue
        for k, cf in _search_matrix(Q, bounds, prune, subcase, stats).items():
            found.setdefault(k, cf)
    return found, stats


def enumerate_sporadic(s: int, bounds: SearchBounds, prune: bool = True, jobs: int = 1,
                       subcase: Subcase | None = None, progress: bool = False,
                       stats: SearchStats | None = None) -> list[CanonicalForm]:
    """Canonical forms of all valid entries with s rays inside ``bounds``, sorted by key."""
    if not 2 <= s <= NVARS:
        raise ValueError("s must lie between 2 and 7")
    tasks = [(rays, bounds, prune, subcase) for rays in ray_configurations(s, bounds.max_coord)]
    total = SearchStats()
    found: dict[str, CanonicalForm] = {}
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_work, tasks)
            for n, (part, st) in enumerate(results, 1):
                _merge(found, part, total, st, progress, n, len(tasks))
    else:
        for n, t in enumerate(tasks, 1):
            part, st = _work(t)
            _merge(found, part, total, st, progress, n, len(tasks))
    if stats is not None:
        stats.merge(total)
    return [found[k] for k in sorted(found)]


def _merge(found, part, total, st, progress, n, ntasks):
    for k, cf in part.items():
        found.setdefault(k, cf)
    total.merge(st)
    if progress:
        print(
            f"[{n}/{ntasks}] matrices {total.matrices} (pruned {total.matrices_pruned}) "
            f"candidates {total.candidates} (pruned {total.candidates_pruned}) "
            f"valid {total.valid} forms {len(found)}",
            file=sys.stderr,
        )


def _constellation_331_primitive(Q) -> bool:
    rc = ray_constellation(Q)
    if rc.multiplicities not in ((3, 3, 1), (1, 3, 3)):
        return False
    return all(content((Q[0][i], Q[1][i])) == 1 for i in range(NVARS))


def _mu_on_middle_ray(Q, mu) -> bool:
    return det2(ray_constellation(Q).rays[1], mu) == 0


# Constellation (3,3,1) up to reversal, every degree primitive (so the three
# middle degrees coincide) and mu on the middle ray, which bounds Mov.
MIDDLE_RAY_331 = Subcase("middle-ray-331", _constellation_331_primitive, _mu_on_middle_ray)

SUBCASES = {MIDDLE_RAY_331.name: MIDDLE_RAY_331}


@dataclass
class EntryResult:
    id: str
    ok: bool
    problems: list[str]
    computed: dict

    def line(self) -> str:
        return f"{self.id}: ok" if self.ok else f"{self.id}: FAIL " + "; ".join(self.problems)


@dataclass
class VerifyReport:
    results: list[EntryResult]

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.results)

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    @property
    def failures(self) -> list[EntryResult]:
        return [r for r in self.results if not r.ok]

    def summary(self) -> str:
        return f"{self.passed}/{self.total} ok"


def _compare(problems: list[str], what: str, got, want) -> None:
    if want is not None and tuple(got) != tuple(want):
        problems.append(f"{what} {tuple(got)} != expected {tuple(want)}")


def verify_sporadic(entry: ClassEntry, golden: ClassEntry | None = None) -> EntryResult:
    """Validate one sporadic entry and compare invariants with the golden columns."""
    golden = golden or entry
    problems: list[str] = []
    computed: dict = {}
    rep = validate(entry.data())
    for c in rep.failures:
        problems.append(str(c))
    if rep.mu is not None:
        computed["mu"] = list(rep.mu)
        _compare(problems, "mu", rep.mu, golden.mu)
    if rep.antik is not None:
        computed["antik"] = list(rep.antik)
        _compare(problems, "antik", rep.antik, golden.antik)
    if rep.constellation is not None:
        computed["s"] = rep.s
        computed["constellation"] = list(rep.constellation.multiplicities)
        s_want, side = LIST_INFO.get(golden.source, (None, None))
        if s_want is not None and rep.s != s_want:
            problems.append(f"s = {rep.s}, list {golden.source} has s = {s_want}")
    if rep.ok:
        computed["mu_in_lambda"] = contains(rep.lam, rep.mu)
        computed["smoothable"] = smoothable_flag(entry.data(), rep.lam)
        s_want, side = LIST_INFO.get(golden.source, (None, None))
        if side is not None and computed["mu_in_lambda"] != side:
            problems.append(f"mu in lambda is {computed['mu_in_lambda']}, list {golden.source} says {side}")
        try:
            k4 = anticanonical_degree(entry.data(), lam=rep.lam)
        except (ValueError, ArithmeticError) as e:
            problems.append(f"K4 not computable: {e}")
        else:
            computed["k4"] = k4
            if golden.k4 is not None and k4 != golden.k4:
                problems.append(f"K4 {k4} != expected {golden.k4}")
    return EntryResult(entry.id, not problems, problems, computed)


def verify_series(entry: ClassEntry, count: int = 20) -> EntryResult:
    """Instantiate a template at admissible samples; each must validate with
    the closed-form mu and -K."""
    t = entry.template()
    problems: list[str] = []
    samples = admissible_samples(t, count)
    if not samples:
        problems.append("no admissible parameters found")
    for env in samples:
        tag = ",".join(f"{k}={v}" for k, v in env.items())
        try:
            d = t.instantiate(env)
        except (InadmissibleParams, ExpressionError) as e:
            problems.append(f"[{tag}] {e}")
            continue
        rep = validate(d)
        if not rep.ok:
            problems.append(f"[{tag}] " + "; ".join(str(c) for c in rep.failures))
            continue
        if rep.antik != t.expected_antik(env):
            problems.append(f"[{tag}] antik {rep.antik} != {t.expected_antik(env)}")
        if rep.mu != t.expected_mu(env):
            problems.append(f"[{tag}] mu {rep.mu} != {t.expected_mu(env)}")
    return EntryResult(entry.id, not problems, problems, {"samples": len(samples)})


def verify_entry(entry: ClassEntry, golden: ClassEntry | None = None) -> EntryResult:
    if entry.is_series:
        return verify_series(entry)
    return verify_sporadic(entry, golden)


def _verify_pair(pair):
    return verify_entry(*pair)


def verify_list(entries: Sequence[ClassEntry], golden: Sequence[ClassEntry] | None = None,
                jobs: int = 1) -> VerifyReport:
    """Verify entries against golden rows matched by id (default: their own columns).

    Results keep the input order whatever the worker count.
    """
    by_id = {g.id: g for g in golden} if golden is not None else {}
    pairs = [(e, by_id.get(e.id, e) if golden is not None else e) for e in entries]
    if jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_pair, pairs, chunksize=8))
    else:
        results = [verify_entry(*p) for p in pairs]
    return VerifyReport(results)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("COXFANO_JOBS", "1")))
    except ValueError:
        return 1
