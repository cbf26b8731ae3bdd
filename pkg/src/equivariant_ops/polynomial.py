"""Sparse multivariate polynomials with exact rational coefficients, and their jets."""

from __future__ import annotations

import ast
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Mapping, Sequence

Exponent = tuple[int, ...]


def _exact(x: Fraction):
    """Collapse integral fractions to int; int arithmetic is much faster."""
    return x.numerator if x.denominator == 1 else x


class Polynomial:
    """Polynomial in ``x1..xd`` stored as ``{exponent tuple: Fraction}``."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms: Mapping[Exponent, object] | None = None):
        self.d = d
        clean = {}
        for exp, c in (terms or {}).items():
            if len(exp) != d:
                raise ValueError(f"exponent {exp} does not have {d} entries")
            c = Fraction(c)
            if c:
                clean[tuple(exp)] = clean.get(tuple(exp), 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def constant(cls, d: int, c) -> "Polynomial":
        return cls(d, {(0,) * d: c})

    @classmethod
    def variable(cls, d: int, i: int) -> "Polynomial":
        """``x_i`` with 1-based ``i``."""
        if not 1 <= i <= d:
            raise ValueError(f"x{i} is not a variable in dimension {d}")
        exp = [0] * d
        exp[i - 1] = 1
        return cls(d, {tuple(exp): 1})

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.d != self.d:
                raise ValueError("dimension mismatch")
            return other
        return Polynomial.constant(self.d, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.d, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.d, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.d, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Polynomial.constant(self.d, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.d == other.d and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.d, frozenset(self.terms.items())))

    def __call__(self, point: Sequence) -> Fraction:
        if len(point) != self.d:
            raise ValueError(f"point has {len(point)} coordinates, polynomial has {self.d}")
        pt = [Fraction(x) for x in point]
        return sum((c * prod(x**k for x, k in zip(pt, e)) for e, c in self.terms.items()), Fraction(0))

    def compose_affine(self, matrix: Sequence[Sequence], shift: Sequence | None = None) -> "Polynomial":
        """``f(Q x + b)``."""
        d = self.d
        shift = shift if shift is not None else [0] * d
        if len(matrix) != d or len(shift) != d:
            raise ValueError("affine map has the wrong dimension")
        linear = []
        for i in range(d):
            lin = {(0,) * d: Fraction(shift[i])}
            for j in range(d):
                e = [0] * d
                e[j] = 1
                lin[tuple(e)] = Fraction(matrix[i][j])
            linear.append(Polynomial(d, lin))
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = linear[i] ** k
            return powers[(i, k)]

        out = Polynomial(d)
        for e, c in self.terms.items():
            term = Polynomial.constant(d, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def shift(self, point: Sequence) -> "Polynomial":
        """``y -> f(point + y)``."""
        ident = [[int(i == j) for j in range(self.d)] for i in range(self.d)]
        return self.compose_affine(ident, point)

    def scale(self, c) -> "Polynomial":
        return self * Fraction(c)

    def __repr__(self):
        return f"Polynomial({self.d}, {self!s})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                coef = str(c) if c.denominator == 1 else f"({c})"
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class PolynomialSyntaxError(ValueError):
    pass


def parse_polynomial(text: str, d: int) -> Polynomial:
    """Parse ``+ - * / ^`` expressions over ``x1..xd`` with rational constants.

    ``^`` is exponentiation and ``·`` is accepted for multiplication.
    Division is only allowed by a constant.
    """
    source = text.replace("^", "**").replace("·", "*").replace("−", "-")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise PolynomialSyntaxError(f"cannot parse {text!r}: {exc.msg}") from None

    def walk(node) -> Polynomial:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Polynomial.constant(d, node.value)
        if isinstance(node, ast.Name):
            name = node.id
            if name.startswith("x") and name[1:].isdigit() and 1 <= int(name[1:]) <= d:
                return Polynomial.variable(d, int(name[1:]))
            raise PolynomialSyntaxError(f"unknown variable {name!r}; use x1..x{d}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            inner = walk(node.operand)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.degree() > 0 or not right.terms:
                    raise PolynomialSyntaxError("division only by a nonzero constant")
                return left * (1 / right.terms[(0,) * d])
            if isinstance(node.op, ast.Pow):
                if right.degree() > 0 or not _is_natural(right):
                    raise PolynomialSyntaxError("exponents must be non-negative integers")
                return left ** int(right.terms.get((0,) * d, 0))
        raise PolynomialSyntaxError(f"unsupported syntax in {text!r}")

    return walk(tree)


def _is_natural(p: Polynomial) -> bool:
    c = p.terms.get((0,) * p.d, Fraction(0))
    return c.denominator == 1 and c >= 0


def monomials(d: int, max_degree: int) -> list[Exponent]:
    out = []
    for deg in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(d), deg):
            e = [0] * d
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def random_polynomial(d: int, degree: int, rng: random.Random, low: int = -9, high: int = 9) -> Polynomial:
    """Dense polynomial of total degree ``<= degree`` with uniform integer coefficients."""
    return Polynomial(d, {e: rng.randint(low, high) for e in monomials(d, degree)})


def random_point(d: int, rng: random.Random, low: int = -3, high: int = 3) -> tuple[int, ...]:
    return tuple(rng.randint(low, high) for _ in range(d))


@dataclass(frozen=True)
class Jet:
    """Partial derivatives of a function at a point up to a fixed order.

    ``values`` is keyed by sorted tuples of 1-based coordinate indices; the
    empty tuple holds the function value.  Absent keys are zero.
    """

    d: int
    order: int
    point: tuple
    values: Mapping[tuple[int, ...], object]

    def __getitem__(self, key: tuple[int, ...]):
        if len(key) > self.order:
            raise ValueError(f"jet of order {self.order} has no derivative of order {len(key)}")
        return self.values.get(key, 0)

    @property
    def value(self):
        return self.values.get((), 0)


def jet(f: Polynomial, point: Sequence, k: int) -> Jet:
    """Exact derivatives of ``f`` at ``point`` up to total order ``k``."""
    if len(point) != f.d:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.d}")
    if k < 0:
        raise ValueError("jet order must be non-negative")
    g = f.shift(point)
    values = {}
    for e, c in g.terms.items():
        if sum(e) > k:
            continue
        key = tuple(i + 1 for i, m in enumerate(e) for _ in range(m))
        values[key] = _exact(c * prod(factorial(m) for m in e))
    return Jet(f.d, k, tuple(Fraction(x) for x in point), values)
