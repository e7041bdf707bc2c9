"""Parametric families of specifying data.

Template entries are affine expressions such as ``4c-a-l`` or ``(a+3)/2``
written with implicit multiplication. Admissibility predicates are
comma-separated clauses: chained comparisons (``b > c >= 1``), parity
statements (``a odd``, ``a+3d odd``, ``a or c odd`` for exactly one
of them) and shared bounds (``a,c >= 1``). Everything is evaluated
exactly over the rationals.
"""
from __future__ import annotations

import ast
import operator
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

_IMPLICIT = re.compile(r"(\d)\s*([A-Za-z(])")
_NAME = re.compile(r"[A-Za-z_]\w*")

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_CMPOPS = {
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
}


class ExpressionError(ValueError):
    pass


class InadmissibleParams(ValueError):
    """Parameter values violate the admissibility predicate of a template."""

    def __init__(self, message: str, template_id: str = ""):
        super().__init__(message)
        self.template_id = template_id


def _pythonize(text: str) -> str:
    return _IMPLICIT.sub(r"\1*\2", text.strip())


_ALLOWED = (ast.Expression, ast.Constant, ast.Name, ast.Load, ast.UnaryOp, ast.USub, ast.UAdd,
            ast.BinOp, ast.Compare, *_BINOPS, *_CMPOPS)


class _Exact(ast.NodeTransformer):
    """Wrap integer literals so that division stays in the rationals."""

    def visit_Constant(self, node):
        return ast.copy_location(ast.Call(ast.Name("_F", ast.Load()), [node], []), node)


@lru_cache(maxsize=4096)
def _compile(text: str):
    try:
        tree = ast.parse(_pythonize(text), mode="eval")
    except SyntaxError as e:
        raise ExpressionError(f"cannot parse {text!r}") from e
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ExpressionError(f"unsupported syntax in {text!r}: {type(node).__name__}")
        if isinstance(node, ast.Constant) and not (isinstance(node.value, int) and not isinstance(node.value, bool)):
            raise ExpressionError(f"unsupported literal in {text!r}")
    exact = any(isinstance(n, ast.Div) for n in ast.walk(tree))
    if exact:
        tree = ast.fix_missing_locations(_Exact().visit(tree))
    names = frozenset(n.id for n in ast.walk(tree) if isinstance(n, ast.Name)) - {"_F"}
    return compile(tree, "<expr>", "eval"), names, exact


def _run(text: str, env: Mapping[str, int]):
    code, names, exact = _compile(text)
    missing = names - env.keys()
    if missing:
        raise ExpressionError(f"unknown parameter {sorted(missing)[0]!r}")
    if exact:
        scope = {n: Fraction(env[n]) for n in names}
        scope["_F"] = Fraction
    else:
        # without division the value stays an integer
        scope = {n: int(env[n]) for n in names}
    try:
        return eval(code, {"__builtins__": {}}, scope)
    except ZeroDivisionError as e:
        raise ExpressionError(f"division by zero in {text!r}") from e


def _parse(text: str) -> None:
    """Syntax check only; raises ExpressionError."""
    _compile(text)


def evaluate(text: str, env: Mapping[str, int] | None = None) -> Fraction:
    """Exact value of an affine expression."""
    v = _run(text, env or {})
    if isinstance(v, bool):
        raise ExpressionError(f"{text!r} is a comparison, not a value")
    return Fraction(v)


def evaluate_int(text: str, env: Mapping[str, int] | None = None) -> int:
    v = evaluate(text, env)
    if v.denominator != 1:
        raise ExpressionError(f"{text!r} evaluates to non-integer {v}")
    return int(v)


def names_in(text: str) -> set[str]:
    return {n for n in _NAME.findall(text) if n not in ("odd", "even", "or")}


@dataclass(frozen=True)
class Clause:
    kind: str  # "cmp" or "parity"
    exprs: tuple[str, ...]
    parity: int = 0  # 1 for odd, 0 for even

    def holds(self, env: Mapping[str, int]) -> bool:
        if self.kind == "cmp":
            return bool(_run(self.exprs[0], env))
        # "a or c odd" is exclusive: exactly one listed expression has the parity
        hits = 0
        for e in self.exprs:
            v = evaluate(e, env)
            if v.denominator == 1 and int(v) % 2 == self.parity:
                hits += 1
        return hits == 1

    def __str__(self) -> str:
        if self.kind == "cmp":
            return self.exprs[0]
        word = "odd" if self.parity else "even"
        return " or ".join(self.exprs) + f" {word}"


_PARITY = re.compile(r"^(.*?)\s+(odd|even)$")
_CMP_TAIL = re.compile(r"(<=|>=|<|>|==)")


def parse_constraint(text: str) -> list[Clause]:
    """Split an admissibility string into clauses."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    clauses: list[Clause] = []
    pending: list[str] = []
    for p in parts:
        if _NAME.fullmatch(p):
            # "a, c >= 1": a bare name borrows the comparison of the next clause
            pending.append(p)
            continue
        m = _PARITY.match(p)
        if m and not _CMP_TAIL.search(m.group(1)):
            exprs = tuple(x.strip() for x in m.group(1).split(" or "))
            for e in exprs:
                _parse(e)
            clauses.append(Clause("parity", exprs, 1 if m.group(2) == "odd" else 0))
        elif m:
            raise ExpressionError(f"parity attached to a comparison chain: {p!r}")
        else:
            _parse(p)
            clauses.append(Clause("cmp", (p,)))
            if pending:
                cm = _CMP_TAIL.search(p)
                if not cm:
                    raise ExpressionError(f"cannot share bound of {p!r}")
                tail = p[cm.start():]
                for name in pending:
                    clauses.append(Clause("cmp", (f"{name} {tail}",)))
                pending = []
    if pending:
        raise ExpressionError(f"dangling parameter names {pending} in {text!r}")
    return clauses


@dataclass(frozen=True)
class SeriesTemplate:
    """A family of specifying data with entries affine in the parameters."""

    id: str
    params: tuple[str, ...]
    Q: tuple[tuple[str, ...], tuple[str, ...]]
    monomials: tuple[tuple[str, ...], ...]
    mu: tuple[str, str]
    antik: tuple[str, str]
    constraint: str
    source: str = ""

    @cached_property
    def clauses(self) -> list[Clause]:
        return parse_constraint(self.constraint)

    def admissible(self, values: Mapping[str, int]) -> bool:
        return not self.violations(values)

    def violations(self, values: Mapping[str, int]) -> list[str]:
        missing = [p for p in self.params if p not in values]
        if missing:
            return [f"missing parameter {m}" for m in missing]
        return [str(c) for c in self.clauses if not c.holds(values)]

    def instantiate(self, values: Mapping[str, int]):
        from .validity import SpecifyingData

        bad = self.violations(values)
        if bad:
            raise InadmissibleParams(f"{'; '.join(bad)} required", self.id)
        Q = [[evaluate_int(e, values) for e in row] for row in self.Q]
        ls = [[evaluate_int(e, values) for e in l] for l in self.monomials]
        return SpecifyingData(Q, ls)

    def expected_antik(self, values: Mapping[str, int]) -> tuple[int, int]:
        return tuple(evaluate_int(e, values) for e in self.antik)

    def expected_mu(self, values: Mapping[str, int]) -> tuple[int, int]:
        return tuple(evaluate_int(e, values) for e in self.mu)


def instantiate_series(t: SeriesTemplate, values: Mapping[str, int]):
    return t.instantiate(values)


def parse_assignments(items: Sequence[str]) -> dict[str, int]:
    """``["a=5", "l=1"]`` or ``["a=5,l=1"]`` to a dict."""
    out: dict[str, int] = {}
    for item in items:
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            name, sep, value = part.partition("=")
            if not sep or not _NAME.fullmatch(name.strip()):
                raise ValueError(f"expected name=value, got {part!r}")
            out[name.strip()] = int(value)
    return out


def _vectors_with_sum(total: int, n: int) -> Iterator[tuple[int, ...]]:
    """Nonnegative integer n-vectors with the given sum, in lexicographic order."""
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _vectors_with_sum(total - first, n - 1):
            yield (first,) + rest


def admissible_samples(t: SeriesTemplate, count: int = 20, large: int = 10**6,
                       max_total: int = 64) -> list[dict[str, int]]:
    """Deterministic admissible parameter vectors, smallest first.

    Small vectors are found in order of increasing parameter sum (up to
    ``max_total``). For single-parameter families one vector at or above
    ``large`` takes the last slot.
    """
    names = t.params
    if not names:
        return [{}]
    want = count - 1 if len(names) == 1 else count
    found: list[dict[str, int]] = []
    for total in range(max_total + 1):
        for vals in _vectors_with_sum(total, len(names)):
            env = dict(zip(names, vals))
            if t.admissible(env):
                found.append(env)
                if len(found) >= want:
                    break
        if len(found) >= want:
            break
    if len(names) == 1:
        name = names[0]
        for v in range(large, large + 1000):
            if t.admissible({name: v}):
                found.append({name: v})
                break
    return found
