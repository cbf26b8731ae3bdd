"""Flat-space evaluation of multigraph operators.

On R^d with the Euclidean metric, the operator of a multigraph puts the
array of order-``deg(v)`` partial derivatives at each vertex and sums one
shared index per edge.  Evaluation here is the literal sum over all
``d**edges`` labelings, in exact arithmetic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterable, Sequence

from .multigraph import DegreeVector, Matching, Multigraph, canonical_form
from .polynomial import Jet, Polynomial, jet, random_point, random_polynomial
from .rational import determinant, format_fraction, identity_matrix, inverse, matmul, rank, to_fraction, transpose


class InsufficientJetOrder(ValueError):
    pass


@dataclass(frozen=True)
class Schedule:
    """Contraction plan: ``vertex_slots[v]`` lists the edge labels read by vertex ``v``.

    A loop contributes its label twice.  Built straight from the given
    labeled graph; no canonicalization.
    """

    num_edges: int
    vertex_slots: tuple[tuple[int, ...], ...]

    @classmethod
    def from_graph(cls, graph: Multigraph) -> "Schedule":
        slots: list[list[int]] = [[] for _ in range(graph.n)]
        for k, (i, j) in enumerate(graph.edges):
            slots[i].append(k)
            slots[j].append(k)
        return cls(graph.num_edges, tuple(tuple(s) for s in slots))

    @property
    def max_degree(self) -> int:
        return max((len(s) for s in self.vertex_slots), default=0)

    def evaluate(self, j: Jet):
        if j.order < self.max_degree:
            raise InsufficientJetOrder(f"operator needs order {self.max_degree}, jet has {j.order}")
        values = j.values
        if self.num_edges == 0:
            return prod((j.value for _ in self.vertex_slots), start=1)
        # isolated vertices contribute a constant factor
        isolated = sum(1 for s in self.vertex_slots if not s)
        active = [s for s in self.vertex_slots if s]
        total = 0
        for labels in itertools.product(range(1, j.d + 1), repeat=self.num_edges):
            term = 1
            for slots in active:
                term *= values.get(tuple(sorted(labels[e] for e in slots)), 0)
                if not term:
                    break
            total += term
        return total * j.value**isolated if isolated else total


def evaluate_graph(graph: Multigraph, j: Jet) -> Fraction:
    return Fraction(Schedule.from_graph(graph).evaluate(j))


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    beta0: int
    graph: Multigraph  # canonical, without isolated vertices

    def full_graph(self) -> Multigraph:
        return self.graph.with_isolated(self.beta0)


@dataclass(frozen=True)
class OperatorExpr:
    """Rational combination of ``f**beta0 * N_graph`` terms."""

    terms: tuple[Term, ...] = ()
    _schedules: tuple[Schedule, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if len(self._schedules) != len(self.terms):
            object.__setattr__(self, "_schedules", tuple(Schedule.from_graph(t.graph) for t in self.terms))

    @classmethod
    def from_terms(cls, items: Iterable[tuple[object, int, Multigraph]]) -> "OperatorExpr":
        merged: dict[tuple[int, Multigraph], Fraction] = {}
        order: list[tuple[int, Multigraph]] = []
        for coeff, beta0, graph in items:
            extra, core = graph.core()
            key = (beta0 + extra, canonical_form(core))
            if key not in merged:
                merged[key] = Fraction(0)
                order.append(key)
            merged[key] += Fraction(coeff)
        terms = tuple(Term(merged[k], k[0], k[1]) for k in order if merged[k])
        return cls(terms, tuple(Schedule.from_graph(t.graph) for t in terms))

    @property
    def max_degree(self) -> int:
        return max((t.graph.max_degree() for t in self.terms), default=0)

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr.from_terms([(t.coeff, t.beta0, t.graph) for t in self.terms + other.terms])

    def scaled(self, c) -> "OperatorExpr":
        return OperatorExpr.from_terms([(t.coeff * Fraction(c), t.beta0, t.graph) for t in self.terms])

    def times_f_power(self, k: int) -> "OperatorExpr":
        return OperatorExpr.from_terms([(t.coeff, t.beta0 + k, t.graph) for t in self.terms])

    def to_json(self) -> dict:
        return {"terms": [{"coeff": format_fraction(t.coeff), "beta0": t.beta0, "graph": t.graph.to_json()}
                          for t in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> "OperatorExpr":
        return cls.from_terms((to_fraction(t["coeff"]), int(t.get("beta0", 0)), Multigraph.from_json(t["graph"]))
                              for t in data["terms"])


def compile(graph: Multigraph, beta0: int = 0, coeff=1) -> OperatorExpr:
    return OperatorExpr.from_terms([(coeff, beta0, graph)])


def evaluate(expr: OperatorExpr, j: Jet) -> Fraction:
    total = Fraction(0)
    f0 = j.value
    for term, schedule in zip(expr.terms, expr._schedules):
        total += term.coeff * schedule.evaluate(j) * f0**term.beta0
    return total


def evaluate_matching(rho: Matching, beta: DegreeVector, j: Jet) -> Fraction:
    """Contract the vertex derivative arrays with the matching's delta tensor.

    Sums over all ``d**(2p)`` index tuples, keeping those on which every
    pair of ``rho`` agrees; independent of :class:`Schedule`.
    """
    fibers = beta.fibers()
    p = len(rho)
    if 2 * beta.num_edges != 2 * p:
        raise ValueError("matching and degree vector disagree on the edge count")
    if j.order < max((len(f) for f in fibers), default=0):
        raise InsufficientJetOrder("jet order too small")
    total = Fraction(0)
    for t in itertools.product(range(1, j.d + 1), repeat=2 * p):
        if any(t[a - 1] != t[b - 1] for a, b in rho):
            continue
        total += prod((j[tuple(sorted(t[i - 1] for i in fiber))] for fiber in fibers), start=1)
    return total


# -- isometries -------------------------------------------------------------

@dataclass(frozen=True)
class AffineIsometry:
    """``x -> Q x + b`` with ``Q`` exactly orthogonal."""

    matrix: tuple[tuple[Fraction, ...], ...]
    shift: tuple[Fraction, ...]

    def __post_init__(self):
        q = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        b = tuple(Fraction(x) for x in self.shift)
        d = len(q)
        if any(len(row) != d for row in q) or len(b) != d:
            raise ValueError("isometry matrix must be square and match the shift")
        if matmul(transpose(q), q) != identity_matrix(d):
            raise ValueError("matrix is not orthogonal")
        object.__setattr__(self, "matrix", q)
        object.__setattr__(self, "shift", b)

    @property
    def d(self) -> int:
        return len(self.shift)

    def __call__(self, x: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum((q * Fraction(xi) for q, xi in zip(row, x)), Fraction(0)) + bi
                     for row, bi in zip(self.matrix, self.shift))

    def determinant(self) -> Fraction:
        return determinant(self.matrix)

    @classmethod
    def translation(cls, b: Sequence) -> "AffineIsometry":
        return cls(tuple(map(tuple, identity_matrix(len(b)))), tuple(b))

    @classmethod
    def reflection(cls, d: int, axis: int = 0) -> "AffineIsometry":
        q = identity_matrix(d)
        q[axis][axis] = Fraction(-1)
        return cls(tuple(map(tuple, q)), (0,) * d)


def cayley_orthogonal(skew: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """``(I - S)(I + S)^-1`` for skew-symmetric ``S``: rational, orthogonal, det +1."""
    s = [[Fraction(x) for x in row] for row in skew]
    d = len(s)
    if any(s[i][j] != -s[j][i] for i in range(d) for j in range(d)):
        raise ValueError("matrix is not skew-symmetric")
    eye = identity_matrix(d)
    minus = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(eye, s)]
    plus = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(eye, s)]
    return tuple(tuple(row) for row in matmul(minus, inverse(plus)))


def random_skew(d: int, rng: random.Random, low: int = -3, high: int = 3) -> list[list[Fraction]]:
    s = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            x = Fraction(rng.randint(low, high), rng.randint(1, 3))
            s[i][j], s[j][i] = x, -x
    return s


def compose_with_isometry(f: Polynomial, phi: AffineIsometry) -> Polynomial:
    if f.d != phi.d:
        raise ValueError("dimension mismatch")
    return f.compose_affine(phi.matrix, phi.shift)


@dataclass(frozen=True)
class EquivarianceResult:
    ok: bool
    point: tuple | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None

    def __bool__(self):
        return self.ok


def check_equivariance(expr: OperatorExpr, f: Polynomial, phi: AffineIsometry,
                       points: Iterable[Sequence]) -> EquivarianceResult:
    """Compare ``P(f o phi)(x)`` with ``(P f)(phi(x))`` exactly at each point."""
    k = expr.max_degree
    pulled = compose_with_isometry(f, phi)
    for x in points:
        lhs = evaluate(expr, jet(pulled, x, k))
        rhs = evaluate(expr, jet(f, phi(x), k))
        if lhs != rhs:
            return EquivarianceResult(False, tuple(x), lhs, rhs)
    return EquivarianceResult(True)


def class_evaluation_matrix(classes: Sequence, d: int, trials: int, seed, degree: int | None = None) -> list[list[Fraction]]:
    """``trials`` rows of class values on seeded random polynomial jets."""
    exprs = [_as_expr(c) for c in classes]
    k = max((e.max_degree for e in exprs), default=0)
    degree = k + 1 if degree is None else degree
    rng = random.Random(seed)
    rows = []
    for _ in range(trials):
        f = random_polynomial(d, degree, rng)
        j = jet(f, random_point(d, rng), k)
        rows.append([evaluate(e, j) for e in exprs])
    return rows


def independence_rank(classes: Sequence, d: int, trials: int | None = None, seed=0) -> int:
    """Exact rank of sampled class evaluations; a lower bound on the span dimension.

    ``classes`` holds multigraphs or ``(beta0, multigraph)`` pairs.
    """
    trials = len(classes) + 10 if trials is None else trials
    if trials < len(classes):
        raise ValueError("need at least as many trials as classes")
    if not classes:
        return 0
    return rank(class_evaluation_matrix(classes, d, trials, seed))


def _as_expr(c) -> OperatorExpr:
    if isinstance(c, OperatorExpr):
        return c
    if isinstance(c, Multigraph):
        return compile(c)
    beta0, graph = c
    return compile(graph, beta0)
