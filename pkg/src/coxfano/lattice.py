"""Exact integer linear algebra on small lattices.

Subgroups of Z^2 are kept in column Hermite normal form: lower triangular,
positive pivots, the off-diagonal entry reduced modulo the pivot below it.
That makes two subgroups equal exactly when their bases compare equal.

Everything here works on plain Python ints (arbitrary precision) and
``fractions.Fraction``; no floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[int, ...]


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def content(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> Vec:
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class Lattice2:
    """A subgroup of Z^2 given by its column HNF basis (0, 1 or 2 columns)."""

    basis: tuple[Vec, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def index(self) -> int:
        """Index in Z^2; 0 when the rank is deficient."""
        if self.rank < 2:
            return 0
        return abs(det2(*self.basis))

    def is_full(self) -> bool:
        return self.index == 1

    def __contains__(self, v: Sequence[int]) -> bool:
        return hnf([*self.basis, tuple(v)]) == self


ZZ2 = Lattice2(((1, 0), (0, 1)))


def hnf(columns: Iterable[Sequence[int]]) -> Lattice2:
    """Column HNF of the subgroup of Z^2 generated by ``columns``."""
    cols = [tuple(int(x) for x in c) for c in columns]
    # Clear the first row into a single pivot column.
    g, pivot_second = 0, 0
    rest: list[int] = []
    for a, b in cols:
        if a == 0:
            rest.append(b)
            continue
        if g == 0:
            g, pivot_second = a, b
            continue
        d, x, y = xgcd(g, a)
        # [pivot, col] * [[x, -a/d], [y, g/d]] is unimodular
        new_second = pivot_second * x + b * y
        rest.append(-pivot_second * (a // d) + b * (g // d))
        g, pivot_second = d, new_second
    if g < 0:
        g, pivot_second = -g, -pivot_second
    d = content(rest)
    if g == 0:
        return Lattice2(((0, d),) if d else ())
    if d == 0:
        return Lattice2(((g, pivot_second),))
    return Lattice2(((g, pivot_second % d), (0, d)))


def is_full_lattice(columns: Iterable[Sequence[int]]) -> bool:
    """True iff the columns generate all of Z^2."""
    return hnf(columns).is_full()


def hnf_with_transform(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Column echelon form ``H = A U`` of an integer matrix.

    Returns ``(H, U, V)`` with U unimodular and ``V = U^-1``. The columns of
    H past its rank are zero, so the matching columns of U span the integer
    kernel of A.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(map(int, r)) for r in rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]
        v[i], v[j] = v[j], v[i]

    def addmul(dst: int, src: int, k: int) -> None:
        # column dst += k * column src
        for r in a:
            r[dst] += k * r[src]
        for r in u:
            r[dst] += k * r[src]
        v[src] = [x - k * y for x, y in zip(v[src], v[dst])]

    def negate(i: int) -> None:
        for r in a:
            r[i] = -r[i]
        for r in u:
            r[i] = -r[i]
        v[i] = [-x for x in v[i]]

    col = 0
    for row in range(m):
        if col >= n:
            break
        while True:
            nz = [j for j in range(col, n) if a[row][j] != 0]
            if not nz:
                break
            j = min(nz, key=lambda j: abs(a[row][j]))
            if j != col:
                swap(j, col)
            done = True
            for k in range(col + 1, n):
                if a[row][k]:
                    addmul(k, col, -(a[row][k] // a[row][col]))
                    if a[row][k]:
                        done = False
            if done:
                break
        if a[row][col] == 0:
            continue
        if a[row][col] < 0:
            negate(col)
        for k in range(col):
            addmul(k, col, -(a[row][k] // a[row][col]))
        col += 1
    return a, u, v


def integer_kernel(rows: Sequence[Sequence[int]]) -> list[Vec]:
    """A Z-basis of {x in Z^n : A x = 0}."""
    h, u, _ = hnf_with_transform(rows)
    n = len(u)
    rank = sum(1 for j in range(n) if any(r[j] for r in h))
    return [tuple(u[i][j] for i in range(n)) for j in range(rank, n)]


def lattice_intersection(a: Lattice2, b: Lattice2) -> Lattice2:
    """The subgroup A ∩ B of Z^2."""
    if a.rank == 0 or b.rank == 0:
        return Lattice2(())
    gens = list(a.basis) + list(b.basis)
    ka = a.rank
    # A x - B y = 0
    mat = [[g[r] if i < ka else -g[r] for i, g in enumerate(gens)] for r in range(2)]
    images = []
    for vec in integer_kernel(mat):
        images.append(tuple(sum(vec[i] * a.basis[i][r] for i in range(ka)) for r in range(2)))
    return hnf(images)


def solve_rational(mat: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve a square system exactly; None when singular."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(mat)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            return None
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c] / piv
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def det_rational(mat: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-valued elimination."""
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        piv = a[c][c]
        d *= piv
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] / piv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


def rank_rational(vectors: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank
