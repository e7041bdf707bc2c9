"""Canonical forms of specifying data up to GL2(Z) on degrees and renaming variables.

Normalization: for each of the two orientations of the effective cone, a
unimodular map sends the first extreme ray to (1, 0) and shears the last one
to (q1, q2) with 0 <= q1 < q2. Variables are sorted by angle and length, and
the remaining freedom (ordering the three monomials, permuting variables of
equal degree) is resolved by taking the lexicographically least encoding.
That leaves twelve candidates; the key is the least of them.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .cones import angular_order, columns, effective_cone
from .faces import NVARS, Trinomial
from .lattice import xgcd
from .validity import SpecifyingData

KEY_PREFIX = "CFv1:"
REFLECT = ((1, 0), (0, -1))


class DegenerateEffCone(ValueError):
    """The effective cone is not two-dimensional."""


def _apply(U, w):
    return (U[0][0] * w[0] + U[0][1] * w[1], U[1][0] * w[0] + U[1][1] * w[1])


def _mul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def normalizing_transforms(Q) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """The two unimodular maps putting the effective cone in normal position."""
    eff = effective_cone(Q)
    if not eff.full_dim:
        raise DegenerateEffCone(f"effective cone {eff} is not full-dimensional")
    out = []
    for orient in (((1, 0), (0, 1)), REFLECT):
        ws = [_apply(orient, w) for w in columns(Q)]
        e = effective_cone([[w[0] for w in ws], [w[1] for w in ws]])
        (a, b), last = e.rays
        _, x, y = xgcd(a, b)
        U = ((x, y), (-b, a))
        q1, q2 = _apply(U, last)
        S = ((1, -(q1 // q2)), (0, 1))
        out.append(_mul(_mul(S, U), orient))
    return out


@dataclass(frozen=True)
class CanonicalForm:
    Q: tuple[tuple[int, ...], tuple[int, ...]]
    monomials: tuple[tuple[int, ...], ...]  # in key order
    key: str

    @property
    def data(self) -> SpecifyingData:
        return SpecifyingData(self.Q, self.monomials)

    @property
    def key_bytes(self) -> bytes:
        return self.key.encode("ascii")


def serialize(Q, monomials) -> str:
    q = ",".join(str(x) for row in Q for x in row)
    ls = "|".join(",".join(str(x) for x in l) for l in monomials)
    return f"{KEY_PREFIX}{q}|{ls}"


def _candidates(d: SpecifyingData):
    for M in normalizing_transforms(d.Q):
        ws = [_apply(M, w) for w in d.degrees]
        order = angular_order(ws)
        ws = [ws[i] for i in order]
        base = [[l[i] for i in order] for l in d.g.monomials]
        for rho in permutations(range(3)):
            ls = [base[r] for r in rho]
            cols = list(range(NVARS))
            # within a block of equal degrees, order columns by their exponents
            cols.sort(key=lambda i: (order_pos(ws, i), tuple(l[i] for l in ls)))
            Q = (tuple(ws[i][0] for i in cols), tuple(ws[i][1] for i in cols))
            mons = tuple(tuple(l[i] for i in cols) for l in ls)
            yield (Q[0] + Q[1] + mons[0] + mons[1] + mons[2]), Q, mons


def order_pos(ws, i):
    """Index of the first column carrying the same degree as column i."""
    return next(j for j in range(len(ws)) if ws[j] == ws[i])


def canonical_form(d: SpecifyingData) -> CanonicalForm:
    best = min(_candidates(d), key=lambda c: c[0])
    _, Q, mons = best
    return CanonicalForm(Q, mons, serialize(Q, mons))


def canonical_key(d: SpecifyingData) -> str:
    return canonical_form(d).key


def is_isomorphic(d1: SpecifyingData, d2: SpecifyingData) -> bool:
    return canonical_key(d1) == canonical_key(d2)


def parse_key(key: str) -> SpecifyingData:
    if not key.startswith(KEY_PREFIX):
        raise ValueError(f"not a canonical key: {key!r}")
    parts = key[len(KEY_PREFIX):].split("|")
    q = [int(x) for x in parts[0].split(",")]
    ls = [[int(x) for x in p.split(",")] for p in parts[1:]]
    return SpecifyingData([q[:NVARS], q[NVARS:]], ls)


def _key_of(item) -> str:
    if isinstance(item, CanonicalForm):
        return item.key
    if isinstance(item, str):
        return item
    return canonical_key(item)


def dedupe(items: Iterable) -> list[CanonicalForm]:
    """Distinct canonical forms, sorted by key."""
    seen: dict[str, CanonicalForm] = {}
    for it in items:
        cf = it if isinstance(it, CanonicalForm) else canonical_form(it)
        seen.setdefault(cf.key, cf)
    return [seen[k] for k in sorted(seen)]


def diff(a: Iterable, b: Iterable) -> tuple[list[str], list[str], list[str]]:
    """Keys only in a, only in b, and in both; each sorted."""
    ka = {_key_of(x) for x in a}
    kb = {_key_of(x) for x in b}
    return sorted(ka - kb), sorted(kb - ka), sorted(ka & kb)


def random_unimodular(rng, steps: int = 6, bound: int = 3) -> tuple[tuple[int, int], tuple[int, int]]:
    """Product of random elementary matrices, with a random sign flip."""
    U = ((1, 0), (0, 1))
    for _ in range(steps):
        t = rng.randint(-bound, bound)
        E = ((1, t), (0, 1)) if rng.random() < 0.5 else ((1, 0), (t, 1))
        U = _mul(E, U)
    if rng.random() < 0.5:
        U = _mul(REFLECT, U)
    if rng.random() < 0.5:
        U = _mul(((0, 1), (1, 0)), U)
    return U


def random_relabel(d: SpecifyingData, rng) -> SpecifyingData:
    perm = list(range(NVARS))
    rng.shuffle(perm)
    return d.transformed(random_unimodular(rng)).permuted(perm)
