"""Validity of specifying data (Q, g) and the structural filters derived from it.

``validate`` runs the checks in dependency order and collects one named
verdict per check. A check whose prerequisites failed is not run, so the
report always names the earliest broken condition.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Any, Sequence

from .cones import (
    Cone2,
    NotPointed,
    RayConstellation,
    columns,
    cone_of,
    contains,
    effective_cone,
    leave_out_cones,
    moving_cone,
    ray_constellation,
    angular_order,
)
from .faces import (
    NVARS,
    ChamberError,
    Trinomial,
    ample_chamber,
    members,
    non_factorial_face,
)
from .lattice import Vec, content, det2, hnf, is_full_lattice, primitive


@dataclass(frozen=True)
class SpecifyingData:
    """A 2 x 7 grading matrix together with a trinomial relation."""

    Q: tuple[tuple[int, ...], tuple[int, ...]]
    g: Trinomial

    def __init__(self, Q, g):
        rows = tuple(tuple(int(x) for x in row) for row in Q)
        if len(rows) != 2 or any(len(r) != NVARS for r in rows):
            raise ValueError(f"grading matrix must be 2 x {NVARS}")
        if not isinstance(g, Trinomial):
            g = Trinomial(*g)
        object.__setattr__(self, "Q", rows)
        object.__setattr__(self, "g", g)

    @property
    def degrees(self) -> list[Vec]:
        return columns(self.Q)

    def degree_of(self, l: Sequence[int]) -> Vec:
        return (
            sum(a * e for a, e in zip(self.Q[0], l)),
            sum(a * e for a, e in zip(self.Q[1], l)),
        )

    @property
    def mu(self) -> Vec:
        return self.degree_of(self.g.l1)

    def permuted(self, perm: Sequence[int]) -> "SpecifyingData":
        """Move variable i to position perm[i]."""
        rows = [[0] * NVARS, [0] * NVARS]
        for i in range(NVARS):
            rows[0][perm[i]] = self.Q[0][i]
            rows[1][perm[i]] = self.Q[1][i]
        return SpecifyingData(rows, self.g.permuted(perm))

    def transformed(self, U: Sequence[Sequence[int]]) -> "SpecifyingData":
        """Apply the integer 2 x 2 matrix U to every degree."""
        rows = [
            [U[r][0] * self.Q[0][i] + U[r][1] * self.Q[1][i] for i in range(NVARS)]
            for r in range(2)
        ]
        return SpecifyingData(rows, self.g)

    def normalized(self) -> "SpecifyingData":
        """Reorder variables so that det(w_i, w_j) >= 0 for i <= j."""
        order = angular_order(self.degrees)
        perm = [0] * NVARS
        for pos, i in enumerate(order):
            perm[i] = pos
        return self.permuted(perm)


@dataclass
class Check:
    name: str
    ok: bool
    witness: Any = None
    detail: str = ""

    def __str__(self) -> str:
        s = f"{self.name}: {'ok' if self.ok else 'FAIL'}"
        if not self.ok and self.witness is not None:
            s += f" (witness {self.witness})"
        if self.detail:
            s += f" {self.detail}"
        return s


@dataclass
class ValidityReport:
    checks: list[Check] = field(default_factory=list)
    mu: Vec | None = None
    antik: Vec | None = None
    lam: Cone2 | None = None
    constellation: RayConstellation | None = None

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    @property
    def s(self) -> int | None:
        return self.constellation.s if self.constellation else None

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def check(self, name: str) -> Check | None:
        return next((c for c in self.checks if c.name == name), None)

    def add(self, checks: list[Check]) -> bool:
        self.checks.extend(checks)
        return all(c.ok for c in checks)


def face_indices(mask: int) -> tuple[int, ...]:
    """Bitmask to 1-based variable indices, the form used in witnesses."""
    return tuple(i + 1 for i in members(mask))


def check_presentation(d: SpecifyingData) -> list[Check]:
    ls = d.g.monomials
    out = []

    bad = next((k for k, l in enumerate(ls) if min(l) < 0 or not any(l)), None)
    out.append(Check("exponents", bad is None, None if bad is None else ("monomial", bad + 1),
                     "exponent vectors must be nonnegative and nonzero"))

    shared = None
    for a, b in combinations(range(3), 2):
        common = [i for i in range(NVARS) if ls[a][i] and ls[b][i]]
        if common:
            shared = ("T%d" % (common[0] + 1), a + 1, b + 1)
            break
    out.append(Check("disjoint_supports", shared is None, shared))

    contents = [content(l) for l in ls]
    pair = next(((a + 1, b + 1) for a, b in combinations(range(3), 2)
                 if gcd(contents[a], contents[b]) != 1), None)
    out.append(Check("coprime_contents", pair is None, pair, f"contents {tuple(contents)}"))

    degs = [d.degree_of(l) for l in ls]
    hom_bad = next((k + 1 for k in (1, 2) if degs[k] != degs[0]), None)
    out.append(Check("homogeneity", hom_bad is None,
                     None if hom_bad is None else ("monomial", hom_bad, degs[hom_bad - 1]),
                     "" if hom_bad is None else f"degrees {degs}"))

    lone = next((k + 1 for k, l in enumerate(ls) if sorted(l) == [0] * (NVARS - 1) + [1]), None)
    out.append(Check("irredundancy", lone is None, None if lone is None else ("monomial", lone)))
    return out


def check_grading(Q) -> list[Check]:
    ws = columns(Q)
    out = []
    zero = next((i + 1 for i, w in enumerate(ws) if w == (0, 0)), None)
    out.append(Check("nonzero_degrees", zero is None, zero))
    if zero is not None:
        return out
    try:
        effective_cone(Q)
        out.append(Check("pointed", True))
    except NotPointed:
        out.append(Check("pointed", False, "Eff contains a line"))
        return out
    drop = next((i + 1 for i in range(len(ws))
                 if not is_full_lattice(ws[:i] + ws[i + 1:])), None)
    out.append(Check("almost_free", drop is None, None if drop is None else ("without", drop)))
    mov = moving_cone(Q)
    out.append(Check("mov_full_dim", mov.full_dim, None if mov.full_dim else str(mov)))
    return out


def relation_degree_violation(Q, mu: Sequence[int]) -> tuple[int, int] | None:
    """First index pair (1-based) whose leave-two-out cone misses ``mu``."""
    pairs = list(combinations(range(1, NVARS + 1), 2))
    for (i, j), c in zip(pairs, leave_out_cones(Q, 2)):
        if not contains(c, mu):
            return (i, j)
    return None


def check_cox_conditions(d: SpecifyingData) -> list[Check]:
    mu = d.mu
    out = []
    pair = None if mu != (0, 0) else ("mu", 0)
    if pair is None:
        pair = relation_degree_violation(d.Q, mu)
    out.append(Check("relation_degree_cones", pair is None, pair))
    # Setting T_i = 0 in a monomial leaves a binomial in the other two; it is
    # irreducible iff the two contents are coprime, which makes T_i prime.
    contents = [content(l) for l in d.g.monomials]
    bad = next((k + 1 for k in range(3)
                if gcd(*[contents[m] for m in range(3) if m != k]) != 1), None)
    out.append(Check("variables_prime", bad is None, None if bad is None else ("monomial", bad)))
    return out


def anticanonical_class(d: SpecifyingData) -> Vec:
    ws = d.degrees
    mu = d.mu
    return (sum(w[0] for w in ws) - mu[0], sum(w[1] for w in ws) - mu[1])


def is_fano(d: SpecifyingData) -> bool:
    try:
        ample_chamber(d.Q, d.g, anticanonical_class(d))
    except (ChamberError, NotPointed):
        return False
    return True


def is_locally_factorial(d: SpecifyingData, lam: Cone2) -> tuple[bool, tuple[int, ...] | None]:
    bad = non_factorial_face(d.Q, d.g, lam)
    return bad is None, None if bad is None else face_indices(bad)


def smoothable_flag(d: SpecifyingData, lam: Cone2) -> bool:
    mu = d.mu
    return contains(lam, mu) and contains(moving_cone(d.Q), mu, strict=True)


def validate(d: SpecifyingData) -> ValidityReport:
    rep = ValidityReport()
    if not rep.add(check_presentation(d)):
        return rep
    rep.mu = d.mu
    if not rep.add(check_grading(d.Q)):
        return rep
    rep.constellation = ray_constellation(d.Q)
    if not rep.add(check_cox_conditions(d)):
        return rep
    rep.antik = anticanonical_class(d)
    try:
        lam = ample_chamber(d.Q, d.g, rep.antik)
    except ChamberError as e:
        rep.add([Check("fano", False, type(e).__name__, str(e))])
        return rep
    rep.lam = lam
    rep.add([Check("fano", True), Check("q_factorial", lam.full_dim)])
    ok, face = is_locally_factorial(d, lam)
    rep.add([Check("locally_factorial", ok, face)])
    return rep


# Structural consequences of being a valid entry. Each returns a Check whose
# witness lists the index tuples (1-based) that violate the conclusion.

def sides(d: SpecifyingData, lam: Cone2) -> list[str]:
    """Per degree: '-' before the ample chamber, '0' inside it, '+' after it.

    The two outer cones are closed, so degrees on a boundary ray of the
    chamber count as '-' or '+'.
    """
    out = []
    lo, hi = lam.rays
    for w in d.degrees:
        if contains(lam, w, strict=True):
            out.append("0")
        elif det2(lo, w) <= 0:
            out.append("-")
        else:
            out.append("+")
    return out


def outer_cones(d: SpecifyingData, lam: Cone2) -> tuple[Cone2, Cone2]:
    eff = effective_cone(d.Q)
    return cone_of([eff.first, lam.first]), cone_of([lam.last, eff.last])


def _monomials_within(g: Trinomial, allowed: int) -> list[int]:
    return [k for k, s in enumerate(g.supports) if s and s & ~allowed == 0]


def pair_generation(d: SpecifyingData, lam: Cone2) -> Check:
    """For lam inside cone(w_i, w_j): w_i, w_j generate Z^2 or g has exactly
    one monomial in T_i, T_j alone."""
    ws = d.degrees
    bad = []
    for i, j in combinations(range(NVARS), 2):
        if det2(ws[i], ws[j]) == 0:
            continue
        c = cone_of([ws[i], ws[j]])
        if not all(contains(c, r) for r in lam.rays):
            continue
        if is_full_lattice([ws[i], ws[j]]):
            continue
        if len(_monomials_within(d.g, 1 << i | 1 << j)) != 1:
            bad.append((i + 1, j + 1))
    return Check("pair_generation", not bad, bad or None)


def triple_generation(d: SpecifyingData, lam: Cone2) -> Check:
    ws = d.degrees
    side = sides(d, lam)
    bad = []
    for tri in combinations(range(NVARS), 3):
        roles = "".join(sorted(side[t] for t in tri))
        by = {r: [t for t in tri if side[t] == r] for r in "-0+"}
        if roles == "--+":
            (k,) = by["+"]
            applies = not _monomials_within(d.g, 1 << k)
        elif roles == "-++":
            (i,) = by["-"]
            applies = not _monomials_within(d.g, 1 << i)
        elif roles == "-0+":
            applies = True
        else:
            continue
        if not applies:
            continue
        if not is_full_lattice([ws[t] for t in tri]):
            bad.append(tuple(t + 1 for t in tri))
            continue
        if roles == "-0+":
            (i,), (j,), (k,) = by["-"], by["0"], by["+"]
            idx = hnf([ws[i], ws[k]]).index
            if idx > 1:
                pure = _monomials_within(d.g, 1 << j)
                if not pure or d.g.monomials[pure[0]][j] % idx:
                    bad.append(tuple(t + 1 for t in tri))
    return Check("triple_generation", not bad, bad or None)


def coprime_exponent_bound(a: int, b: int) -> bool:
    """For coprime b > a > 1 with ab <= 2 + a + b only (a, b) = (2, 3) is possible."""
    if b > a > 1 and gcd(a, b) == 1 and a * b <= 2 + a + b:
        return (a, b) == (2, 3)
    return True


def coprime_exponent_check(d: SpecifyingData) -> Check:
    cs = sorted(content(l) for l in d.g.monomials)
    bad = [(a, b) for a, b in combinations(cs, 2) if not coprime_exponent_bound(a, b)]
    return Check("coprime_exponent_bound", not bad, bad or None)


def nonprimitive_per_ray(d: SpecifyingData) -> Check:
    counts: dict[Vec, int] = {}
    for w in d.degrees:
        if content(w) > 1:
            counts[primitive(w)] = counts.get(primitive(w), 0) + 1
    bad = [r for r, n in counts.items() if n > 2]
    return Check("nonprimitive_per_ray", not bad, bad or None)


def non_semiample_relation(d: SpecifyingData, lam: Cone2) -> Check:
    """With mu outside lam on one side: lam is regular, the degrees on its
    boundary are primitive, and all degrees on the other side coincide."""
    mu = d.mu
    if contains(lam, mu):
        return Check("non_semiample_relation", True)
    minus, plus = outer_cones(d, lam)
    far = minus if contains(plus, mu) else plus
    bad = []
    if not lam.is_regular():
        bad.append("chamber not regular")
    for i, w in enumerate(d.degrees):
        on_boundary = contains(lam, w) and not contains(lam, w, strict=True)
        if on_boundary and content(w) != 1:
            bad.append(("non-primitive on boundary", i + 1))
    far_degrees = {w for w in d.degrees if contains(far, w)}
    if len(far_degrees) != 1:
        bad.append(("distinct degrees on the far side", sorted(far_degrees)))
    return Check("non_semiample_relation", not bad, bad or None)


def lemma_filters(d: SpecifyingData, lam: Cone2) -> list[Check]:
    return [
        pair_generation(d, lam),
        triple_generation(d, lam),
        coprime_exponent_check(d),
        nonprimitive_per_ray(d),
        non_semiample_relation(d, lam),
    ]
