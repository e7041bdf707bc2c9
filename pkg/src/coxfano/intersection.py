"""Anticanonical self-intersection via volumes of fiber polytopes.

For a class w in the effective cone the fiber polytope is
P_w = {x in Q^7 : x >= 0, Qx = w}. Measured in a Z-basis of ker(Q), its
normalized volume times 5! is the top self-intersection of w on the ambient
toric variety, as long as w is nef there. Writing the volume of
P_{s*a + t*b} as a quintic in (s, t) for a nef basis (a, b) recovers all
mixed degrees deg(a^k b^(5-k)), and K^4 on the hypersurface of class mu is
deg((-K)^4 * mu).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Sequence

from .cones import Cone2, columns, contains, contains_cone, effective_cone
from .faces import ChamberError, ample_chamber, toric_fan
from .lattice import Vec, det2, det_rational, hnf_with_transform, primitive, rank_rational, solve_rational
from .validity import SpecifyingData, anticanonical_class

DIM = 5
FIT_POINTS = ((5, 0), (4, 1), (3, 2), (2, 3), (1, 4), (0, 5))


class EmptyPolytope(ValueError):
    """The class lies outside the effective cone."""


class NoChamber(ValueError):
    """No chamber of the toric GIT fan lies inside the given cone."""


class NonIntegerDegree(ArithmeticError):
    """The computed degree is not a positive integer."""


@lru_cache(maxsize=4096)
def kernel_frame(Q: tuple[tuple[int, ...], ...]) -> tuple[tuple[Vec, ...], tuple[Vec, ...]]:
    """(B, L): columns of B are a Z-basis of ker(Q), and L B = I."""
    h, u, v = hnf_with_transform(Q)
    n = len(u)
    rank = sum(1 for j in range(n) if any(r[j] for r in h))
    B = tuple(tuple(u[i][j] for i in range(n)) for j in range(rank, n))
    L = tuple(tuple(v[j]) for j in range(rank, n))
    return B, L


@dataclass(frozen=True)
class FiberPolytope:
    w: Vec
    vertices: tuple[tuple[Fraction, ...], ...]  # points of Q^7
    coords: tuple[tuple[Fraction, ...], ...]  # the same points in kernel coordinates
    dim: int

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)


def fiber_polytope(Q, w: Sequence[int]) -> FiberPolytope:
    """Vertices of {x >= 0 : Qx = w}, one per feasible choice of five zero coordinates."""
    Qt = tuple(tuple(int(x) for x in row) for row in Q)
    w = (int(w[0]), int(w[1]))
    ws = columns(Qt)
    n = len(ws)
    verts: set[tuple[Fraction, ...]] = set()
    if w == (0, 0):
        verts.add(tuple(Fraction(0) for _ in range(n)))
    for j, k in combinations(range(n), 2):
        den = det2(ws[j], ws[k])
        if den == 0:
            continue
        xj = Fraction(det2(w, ws[k]), den)
        xk = Fraction(det2(ws[j], w), den)
        if xj < 0 or xk < 0:
            continue
        x = [Fraction(0)] * n
        x[j], x[k] = xj, xk
        verts.add(tuple(x))
    if not verts:
        raise EmptyPolytope(f"{w} is not in the effective cone")
    vs = tuple(sorted(verts))
    _, L = kernel_frame(Qt)
    coords = tuple(tuple(sum(r[i] * x[i] for i in range(n)) for r in L) for x in vs)
    dim = rank_rational([[a - b for a, b in zip(c, coords[0])] for c in coords[1:]]) if len(coords) > 1 else 0
    return FiberPolytope(w, vs, coords, dim)


def _triangulate(P: FiberPolytope, idx: frozenset[int], d: int, memo: dict) -> list[tuple[int, ...]]:
    """Pulling triangulation of the face with vertex set ``idx`` of dimension ``d``."""
    key = idx
    if key in memo:
        return memo[key]
    if d == 0:
        out = [(min(idx),)]
        memo[key] = out
        return out
    v0 = min(idx)
    seen = set()
    out = []
    n = len(P.vertices[0])
    for i in range(n):
        face = frozenset(v for v in idx if P.vertices[v][i] == 0)
        if v0 in face or not face or face == idx or face in seen:
            continue
        seen.add(face)
        if _affine_dim(P, face) != d - 1:
            continue
        for simplex in _triangulate(P, face, d - 1, memo):
            out.append((v0,) + simplex)
    memo[key] = out
    return out


def _affine_dim(P: FiberPolytope, idx: frozenset[int]) -> int:
    pts = [P.coords[v] for v in sorted(idx)]
    if len(pts) <= 1:
        return 0
    return rank_rational([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]])


def polytope_volume(P: FiberPolytope) -> Fraction:
    """Normalized 5-volume in kernel coordinates; zero if P is lower dimensional."""
    if P.dim < DIM:
        return Fraction(0)
    total = Fraction(0)
    for simplex in _triangulate(P, frozenset(range(P.n_vertices)), DIM, {}):
        base = P.coords[simplex[0]]
        mat = [[a - b for a, b in zip(P.coords[v], base)] for v in simplex[1:]]
        total += abs(det_rational(mat))
    return total / factorial(DIM)


def volume(Q, w: Sequence[int]) -> Fraction:
    return polytope_volume(fiber_polytope(Q, w))


@dataclass(frozen=True)
class QuinticVolume:
    """vol(P_{s*a + t*b}) = sum_k c[k] s^k t^(5-k)."""

    a: Vec
    b: Vec
    c: tuple[Fraction, ...]

    def degree(self, k: int) -> Fraction:
        """deg(a^k b^(5-k)) on the ambient toric variety."""
        return factorial(k) * factorial(DIM - k) * self.c[k]

    def __call__(self, s, t) -> Fraction:
        return sum(ck * Fraction(s) ** k * Fraction(t) ** (DIM - k) for k, ck in enumerate(self.c))


def quintic_volume(Q, a: Sequence[int], b: Sequence[int]) -> QuinticVolume:
    """Fit the volume quintic from the six classes i*a + j*b with i + j = 5."""
    rows, rhs = [], []
    for i, j in FIT_POINTS:
        w = (i * a[0] + j * b[0], i * a[1] + j * b[1])
        rows.append([i ** k * j ** (DIM - k) for k in range(DIM + 1)])
        rhs.append(volume(Q, w))
    c = solve_rational(rows, rhs)
    return QuinticVolume(tuple(a), tuple(b), tuple(c))


def toric_chambers_inside(Q, lam: Cone2) -> list[Cone2]:
    return [c for c in toric_fan(Q).chambers if contains_cone(lam, c)]


def intersection_basis(Q, lam: Cone2, w: Sequence[int] | None = None,
                       chamber: int | None = None) -> QuinticVolume:
    """Nef basis from a toric chamber inside ``lam`` and its volume quintic.

    By default the chamber containing ``w`` (counter-clockwise first on ties)
    is used; ``chamber`` picks one of the candidates by position instead.
    """
    cands = toric_chambers_inside(Q, lam)
    if not cands:
        raise NoChamber(f"no toric chamber inside {lam}")
    if chamber is not None:
        tau = cands[chamber]
    elif w is not None:
        tau = next((c for c in cands if contains(c, w)), cands[0])
    else:
        tau = cands[0]
    a, b = tau.rays
    return quintic_volume(Q, a, b)


def coordinates(v: Sequence[int], a: Sequence[int], b: Sequence[int]) -> tuple[Fraction, Fraction]:
    """(s, t) with v = s*a + t*b."""
    den = det2(a, b)
    return Fraction(det2(v, b), den), Fraction(det2(a, v), den)


def degree_on_hypersurface(q: QuinticVolume, u: Sequence[int], mu: Sequence[int]) -> Fraction:
    """deg(u^4 * mu) computed from the mixed degrees of the basis of ``q``."""
    al, be = coordinates(u, q.a, q.b)
    ga, de = coordinates(mu, q.a, q.b)
    total = Fraction(0)
    for k in range(5):
        coef = comb(4, k) * al ** k * be ** (4 - k)
        total += coef * (ga * q.degree(k + 1) + de * q.degree(k))
    return total


def anticanonical_degree(d: SpecifyingData, chamber: int | None = None,
                         basis: tuple[Vec, Vec] | None = None, lam: Cone2 | None = None) -> int:
    """K^4 of the fourfold X(Q, g)."""
    antik = anticanonical_class(d)
    if lam is None:
        lam = ample_chamber(d.Q, d.g, antik)
    if basis is not None:
        q = quintic_volume(d.Q, *basis)
    else:
        q = intersection_basis(d.Q, lam, antik, chamber)
    k4 = degree_on_hypersurface(q, antik, d.mu)
    if k4.denominator != 1 or k4 <= 0:
        raise NonIntegerDegree(f"K^4 evaluated to {k4}")
    return int(k4)


def lattice_point_count(Q, w: Sequence[int]) -> int:
    """Number of x in Z^7, x >= 0, with Qx = w."""
    ws = columns(Q)
    w = (int(w[0]), int(w[1]))
    if w == (0, 0):
        return 1
    eff = effective_cone(Q)
    if not contains(eff, w):
        return 0
    if eff.full_dim:
        r1, r2 = eff.rays
        phi = lambda v: det2(r1, v) + det2(v, r2)  # positive on Eff minus the origin
    else:
        r = eff.rays[0]
        phi = lambda v: r[0] * v[0] + r[1] * v[1]
    weights = [phi(x) for x in ws]
    n = len(ws)

    @lru_cache(maxsize=None)
    def count(i: int, rem: tuple[int, int]) -> int:
        if i == n:
            return int(rem == (0, 0))
        total = 0
        cur = rem
        while phi(cur) >= 0:
            total += count(i + 1, cur)
            cur = (cur[0] - ws[i][0], cur[1] - ws[i][1])
        return total

    if min(weights) <= 0:
        raise ValueError("a degree is zero")
    return count(0, w)


def hilbert_differences(d: SpecifyingData, m_max: int = 10) -> tuple[list[int], list[int]]:
    """h(m) = #monomials of degree m(-K) minus those of degree m(-K) - mu, and
    its fourth differences; for a degree-4 polynomial these equal K^4."""
    Q = d.Q
    antik = anticanonical_class(d)
    mu = d.mu
    h = []
    for m in range(1, m_max + 1):
        u = (m * antik[0], m * antik[1])
        h.append(lattice_point_count(Q, u) - lattice_point_count(Q, (u[0] - mu[0], u[1] - mu[1])))
    diffs = list(h)
    for _ in range(4):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    return h, diffs
