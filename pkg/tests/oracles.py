"""Brute-force reference implementations used only by the tests.

They deliberately avoid the package's own cone, HNF and face code so that
agreement means something.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm

NVARS = 7


def det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def minors_gcd(vectors) -> int:
    """Index of the subgroup of Z^2 generated by ``vectors`` (0 if rank < 2)."""
    return reduce(gcd, (abs(det2(u, v)) for u, v in combinations(vectors, 2)), 0)


def in_cone(v, gens, strict=False) -> bool:
    """Is v a nonnegative (strict: positive, full-dimensional) combination of gens?"""
    gens = [g for g in gens if g != (0, 0)]
    if v == (0, 0):
        return not strict
    for u, w in combinations(gens, 2):
        den = det2(u, w)
        if den == 0:
            continue
        a = Fraction(det2(v, w), den)
        b = Fraction(det2(u, v), den)
        if strict and a > 0 and b > 0:
            return True
        if not strict and a >= 0 and b >= 0:
            return True
    if strict:
        return False
    return any(det2(u, v) == 0 and u[0] * v[0] + u[1] * v[1] > 0 for u in gens)


def _vanishing_roots(residues, n) -> bool:
    """Do the unit roots zeta_n^a (one per term) sum to zero? Two or three terms."""
    if len(residues) == 2:
        a, b = residues
        return (a - b) % n == n // 2
    a, b, c = sorted(r % n for r in residues)
    return b - a == n // 3 and c - b == n // 3


def face_by_roots_of_unity(monomials, mask: int) -> bool:
    """Is there a point of V(g) whose nonzero coordinates are exactly ``mask``?

    Every coordinate in the mask is taken to be a root of unity of order N;
    a monomial whose exponent content is c then reaches exactly the powers
    zeta^(c*k). The search over those powers is exhaustive.
    """
    if mask == 0:
        return True
    alive = [l for l in monomials if all((mask >> i) & 1 for i in range(NVARS) if l[i])]
    if not alive:
        return True  # g restricts to zero
    if len(alive) == 1:
        return False
    contents = [reduce(gcd, l) for l in alive]
    n = 6 * lcm(*contents)
    choices = [range(0, n, c) for c in contents]
    if len(alive) == 2:
        return any(_vanishing_roots((x, y), n) for x in choices[0] for y in choices[1])
    return any(_vanishing_roots((x, y, z), n)
               for x in choices[0] for y in choices[1] for z in choices[2])


def degrees(Q):
    return [(Q[0][i], Q[1][i]) for i in range(NVARS)]


def relation_degree(Q, monomials):
    ws = degrees(Q)
    return tuple(sum(l[i] * ws[i][k] for i in range(NVARS)) for k in range(2))


def locally_factorial_oracle(Q, monomials, antik) -> tuple[bool, list[int]]:
    """(ok, bad faces) judged from -K, assumed to lie off every wall.

    A face I is an X-face iff -K is interior to cone(w_i : i in I); local
    factoriality asks each such degree set to generate Z^2.
    """
    ws = degrees(Q)
    bad = []
    for mask in range(1, 1 << NVARS):
        if not face_by_roots_of_unity(monomials, mask):
            continue
        sub = [ws[i] for i in range(NVARS) if (mask >> i) & 1]
        if in_cone(antik, sub, strict=True) and minors_gcd(sub) != 1:
            bad.append(mask)
    return not bad, bad


def moving_cone_contains(Q, v, strict=False) -> bool:
    ws = degrees(Q)
    return all(in_cone(v, ws[:i] + ws[i + 1:], strict) for i in range(NVARS))
