"""Faces of the orthant realized on V(g), the GIT fan of R_g and the ample chamber.

Coordinate subsets I of {0, ..., 6} are encoded as bitmasks. For a
trinomial with pairwise disjoint supports, V(g) has a point with support
exactly I iff the number of monomials whose support lies in I is not one:
no monomial survives means g vanishes identically on the coordinate
subspace, a single survivor cannot vanish with all I-coordinates nonzero,
and two or three survivors can be balanced against each other.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, cmp_to_key
from typing import Sequence

from .cones import Cone2, columns, cone_of, contains, contains_cone, first_last, intersect, moving_cone
from .lattice import Lattice2, ZZ2, Vec, det2, hnf, lattice_intersection, primitive

NVARS = 7
FULL = (1 << NVARS) - 1


class ChamberError(ValueError):
    """No admissible GIT chamber for the requested class."""


class OnWall(ChamberError):
    """The class lies on a GIT ray, so it is interior to no chamber."""


class OutsideMoving(ChamberError):
    """The chamber is not contained in the moving cone."""


class OutsideEffective(ChamberError):
    """The class is not in the effective cone."""


def support(l: Sequence[int]) -> int:
    m = 0
    for i, e in enumerate(l):
        if e:
            m |= 1 << i
    return m


def members(mask: int) -> list[int]:
    return [i for i in range(NVARS) if mask >> i & 1]


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Trinomial:
    """T^l1 + T^l2 + T^l3 with unit coefficients.

    Monomials are kept in descending lexicographic order. Disjointness of
    supports and nonnegativity are not enforced here so that broken input
    can still be reported on by the validity checks.
    """

    l1: tuple[int, ...]
    l2: tuple[int, ...]
    l3: tuple[int, ...]

    def __init__(self, l1, l2, l3):
        ls = sorted((tuple(int(x) for x in l) for l in (l1, l2, l3)), reverse=True)
        for l in ls:
            if len(l) != NVARS:
                raise ValueError(f"exponent vector needs {NVARS} entries, got {len(l)}")
        object.__setattr__(self, "l1", ls[0])
        object.__setattr__(self, "l2", ls[1])
        object.__setattr__(self, "l3", ls[2])

    @property
    def monomials(self) -> tuple[tuple[int, ...], ...]:
        return (self.l1, self.l2, self.l3)

    @property
    def supports(self) -> tuple[int, int, int]:
        return tuple(support(l) for l in self.monomials)

    def used_variables(self) -> int:
        return self.supports[0] | self.supports[1] | self.supports[2]

    def permuted(self, perm: Sequence[int]) -> "Trinomial":
        """Rename variable i to perm[i]."""
        out = []
        for l in self.monomials:
            new = [0] * NVARS
            for i, e in enumerate(l):
                new[perm[i]] = e
            out.append(new)
        return Trinomial(*out)

    def __str__(self) -> str:
        parts = []
        for l in self.monomials:
            factors = [f"T{i + 1}" + (f"^{e}" if e != 1 else "") for i, e in enumerate(l) if e]
            parts.append("*".join(factors) or "1")
        return " + ".join(parts)


def is_xbar_face(g: Trinomial, mask: int) -> bool:
    inside = sum(1 for s in g.supports if s & ~mask == 0)
    return inside != 1


def xbar_faces(g: Trinomial) -> frozenset[int]:
    """All coordinate subsets (bitmasks) realized as exact supports of points of V(g)."""
    return frozenset(m for m in range(FULL + 1) if is_xbar_face(g, m))


def projected_cone(Q, mask: int) -> Cone2:
    ws = columns(Q)
    return cone_of([ws[i] for i in members(mask)])


@dataclass(frozen=True)
class GitFan:
    rays: tuple[Vec, ...]

    @cached_property
    def chambers(self) -> tuple[Cone2, ...]:
        return tuple(Cone2((a, b)) for a, b in zip(self.rays, self.rays[1:]))

    @property
    def support(self) -> Cone2:
        if not self.rays:
            return Cone2(())
        if len(self.rays) == 1:
            return Cone2((self.rays[0],))
        return Cone2((self.rays[0], self.rays[-1]))


def _sort_rays(rays: set[Vec]) -> tuple[Vec, ...]:
    if not rays:
        return ()
    first_last(rays)  # raises on non-pointed input
    return tuple(sorted(rays, key=cmp_to_key(lambda u, v: -det2(u, v))))


def git_fan(Q, g: Trinomial) -> GitFan:
    """Rays are the extreme rays of all orbit cones Q(I), I a face of V(g)."""
    rays: set[Vec] = set()
    for m in xbar_faces(g):
        c = projected_cone(Q, m)
        rays.update(c.rays)
    return GitFan(_sort_rays(rays))


def toric_fan(Q) -> GitFan:
    """GIT fan of the polynomial ring: one ray per distinct degree direction."""
    return GitFan(_sort_rays({primitive(w) for w in columns(Q) if w != (0, 0)}))


def git_cone(Q, g: Trinomial, w: Sequence[int]) -> Cone2:
    """Intersection of all orbit cones containing ``w``, straight from the definition."""
    acc = None
    for m in xbar_faces(g):
        c = projected_cone(Q, m)
        if contains(c, w):
            acc = c if acc is None else intersect(acc, c)
    if acc is None:
        raise OutsideEffective(f"{tuple(w)} lies in no orbit cone")
    return acc


def chamber_containing(fan: GitFan, w: Sequence[int]) -> Cone2:
    """The chamber of ``fan`` with ``w`` in its interior."""
    if not contains(fan.support, w) or tuple(w) == (0, 0):
        raise OutsideEffective(f"{tuple(w)} is not in the effective cone")
    for r in fan.rays:
        if det2(r, w) == 0:
            raise OnWall(f"{tuple(w)} lies on the ray {r}")
    for c in fan.chambers:
        if contains(c, w, strict=True):
            return c
    raise OutsideEffective(f"{tuple(w)} is not in the effective cone")


def ample_chamber(Q, g: Trinomial, w: Sequence[int]) -> Cone2:
    """The GIT chamber of R_g with ``w`` in its interior, checked against Mov."""
    lam = chamber_containing(git_fan(Q, g), w)
    mov = moving_cone(Q)
    if not mov.full_dim or not contains_cone(mov, lam):
        raise OutsideMoving(f"chamber {lam} is not inside the moving cone {mov}")
    return lam


def x_faces(Q, g: Trinomial, lam: Cone2) -> list[int]:
    """Faces I of V(g) whose orbit cone contains lam (interior in interior)."""
    out = []
    for m in sorted(xbar_faces(g)):
        c = projected_cone(Q, m)
        if c.full_dim and contains_cone(c, lam):
            out.append(m)
    return out


def face_lattice(Q, mask: int) -> Lattice2:
    ws = columns(Q)
    return hnf([ws[i] for i in members(mask)])


def picard_lattice(Q, g: Trinomial, lam: Cone2) -> Lattice2:
    """Intersection of the lattices generated by the degrees of each X-face."""
    acc = ZZ2
    for m in x_faces(Q, g, lam):
        acc = lattice_intersection(acc, face_lattice(Q, m))
    return acc


def non_factorial_face(Q, g: Trinomial, lam: Cone2) -> int | None:
    """First X-face whose degrees fail to generate Z^2, or None."""
    for m in x_faces(Q, g, lam):
        if not face_lattice(Q, m).is_full():
            return m
    return None
