"""Pointed rational cones in the plane and the cones attached to a grading."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, Sequence

from .lattice import Vec, det2, primitive


class NotPointed(ValueError):
    """The vectors span a cone that contains a line."""


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[0] + u[1] * v[1]


@dataclass(frozen=True)
class Cone2:
    """A pointed cone in Q^2 given by 0, 1 or 2 primitive rays.

    With two rays they are stored counter-clockwise, ``det(r1, r2) > 0``.
    The zero cone has no rays.
    """

    rays: tuple[Vec, ...]

    def __post_init__(self):
        if len(self.rays) > 2:
            raise ValueError("a planar pointed cone has at most two rays")
        for r in self.rays:
            if primitive(r) != tuple(r):
                raise ValueError(f"ray {r} is not primitive")
        if len(self.rays) == 2 and det2(*self.rays) <= 0:
            raise ValueError("rays must be counter-clockwise with angle < pi")

    @property
    def full_dim(self) -> bool:
        return len(self.rays) == 2

    @property
    def dim(self) -> int:
        return len(self.rays)

    @property
    def first(self) -> Vec:
        return self.rays[0]

    @property
    def last(self) -> Vec:
        return self.rays[-1]

    def contains(self, v: Sequence[int], strict: bool = False) -> bool:
        return contains(self, v, strict)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def is_regular(self) -> bool:
        return self.full_dim and abs(det2(*self.rays)) == 1

    def __str__(self) -> str:
        return "cone(" + ", ".join(f"({a},{b})" for a, b in self.rays) + ")"


ZERO_CONE = Cone2(())


def contains(c: Cone2, v: Sequence[int], strict: bool = False) -> bool:
    """Membership of ``v`` in ``c``; with ``strict`` the topological interior."""
    if not c.rays:
        return not strict and v[0] == 0 and v[1] == 0
    if len(c.rays) == 1:
        if strict:
            return False
        r = c.rays[0]
        return det2(r, v) == 0 and _dot(r, v) >= 0
    r1, r2 = c.rays
    a, b = det2(r1, v), det2(v, r2)
    if strict:
        return a > 0 and b > 0
    return a >= 0 and b >= 0


def contains_cone(outer: Cone2, inner: Cone2) -> bool:
    return all(contains(outer, r) for r in inner.rays)


def first_last(vectors: Iterable[Sequence[int]]) -> tuple[Vec, Vec] | None:
    """Primitive first and last rays of cone(vectors) in counter-clockwise order.

    Returns None for an empty or all-zero input; raises NotPointed when the
    vectors do not lie in an open half-plane (plus its origin).
    """
    dirs = sorted({primitive(v) for v in vectors if v[0] or v[1]})
    if not dirs:
        return None

    def is_first(r):
        for w in dirs:
            d = det2(r, w)
            if d < 0 or (d == 0 and _dot(r, w) < 0):
                return False
        return True

    def is_last(r):
        for w in dirs:
            d = det2(w, r)
            if d < 0 or (d == 0 and _dot(r, w) < 0):
                return False
        return True

    firsts = [r for r in dirs if is_first(r)]
    lasts = [r for r in dirs if is_last(r)]
    if not firsts or not lasts:
        raise NotPointed("cone contains a line")
    return firsts[0], lasts[0]


def cone_of(vectors: Iterable[Sequence[int]]) -> Cone2:
    """The cone generated by ``vectors``."""
    fl = first_last(list(vectors))
    if fl is None:
        return ZERO_CONE
    f, l = fl
    return Cone2((f,)) if f == l else Cone2((f, l))


def intersect(a: Cone2, b: Cone2) -> Cone2:
    """Intersection of two pointed cones."""
    # Extreme rays of the intersection are rays of one cone lying in the other.
    cands = [r for r in a.rays if contains(b, r)] + [r for r in b.rays if contains(a, r)]
    return cone_of(cands)


def intersect_all(cones: Iterable[Cone2]) -> Cone2:
    it = iter(cones)
    acc = next(it)
    for c in it:
        acc = intersect(acc, c)
    return acc


def angular_order(vectors: Sequence[Sequence[int]]) -> list[int]:
    """Indices of ``vectors`` sorted counter-clockwise inside their pointed cone.

    Degrees on a common ray are ordered by increasing length. The result
    satisfies ``det(w_i, w_j) >= 0`` for i before j.
    """
    first_last(vectors)  # raises on non-pointed input

    def cmp(i, j):
        u, v = vectors[i], vectors[j]
        d = det2(u, v)
        if d:
            return -1 if d > 0 else 1
        nu, nv = abs(u[0]) + abs(u[1]), abs(v[0]) + abs(v[1])
        if nu != nv:
            return -1 if nu < nv else 1
        return (i > j) - (i < j)

    # Inside a pointed cone the determinant sign is a transitive comparison.
    return sorted(range(len(vectors)), key=cmp_to_key(cmp))


def effective_cone(Q: Sequence[Sequence[int]]) -> Cone2:
    """cone(w_1, ..., w_r) for the columns of the 2 x r matrix Q.

    Raises NotPointed when the degrees span a line.
    """
    return cone_of(columns(Q))


def columns(Q: Sequence[Sequence[int]]) -> list[Vec]:
    return [(Q[0][i], Q[1][i]) for i in range(len(Q[0]))]


def leave_out_cones(Q, k: int) -> list[Cone2]:
    """Cones generated by all degrees but ``k`` of them, one per k-subset."""
    ws = columns(Q)
    n = len(ws)
    out = []
    for drop in combinations(range(n), k):
        out.append(cone_of([w for i, w in enumerate(ws) if i not in drop]))
    return out


def moving_cone(Q) -> Cone2:
    """Intersection of the leave-one-out cones; may be a ray or zero."""
    return intersect_all(leave_out_cones(Q, 1))


@dataclass(frozen=True)
class RayConstellation:
    rays: tuple[Vec, ...]
    multiplicities: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.rays)

    def reversed(self) -> "RayConstellation":
        return RayConstellation(self.rays[::-1], self.multiplicities[::-1])


def ray_constellation(Q) -> RayConstellation:
    """Distinct rays of the degrees in angular order with their multiplicities."""
    ws = columns(Q)
    rays: list[Vec] = []
    mult: list[int] = []
    for i in angular_order(ws):
        r = primitive(ws[i])
        if rays and rays[-1] == r:
            mult[-1] += 1
        else:
            rays.append(r)
            mult.append(1)
    return RayConstellation(tuple(rays), tuple(mult))
