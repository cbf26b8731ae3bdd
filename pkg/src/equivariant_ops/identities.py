"""Dimension-dependent linear relations among multigraph operators.

For ``p`` edges in dimension ``d < p`` the matching tensors satisfy linear
relations.  Summing a relation over the orbits belonging to a degree vector
turns it into a relation between the operators of the corresponding
multigraph classes.
"""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import VerificationFailure, WitnessNotFound
from .invariant_tensor import average_over_symmetry, kernel
from .multigraph import DegreeVector, Multigraph, degree_vectors, orbits
from .operator_eval import OperatorExpr, evaluate
from .polynomial import Polynomial, jet, monomials, random_point, random_polynomial
from .rational import format_fraction, integer_normalize, rank, to_fraction


@dataclass(frozen=True)
class Identity:
    """``sum coeff * f**beta0 * N_graph == 0`` in dimension ``dim``, for every ``beta0``.

    ``terms`` are stored at ``beta0 = 0``; graphs are canonical cores listed
    in orbit order of ``beta``.
    """

    dim: int
    beta: DegreeVector
    terms: tuple[tuple[Multigraph, Fraction], ...]
    kernel_row: int | None = None
    matching_vector: tuple[int, ...] = ()
    status: dict = field(default_factory=dict, compare=False)

    def expr(self, beta0: int = 0) -> OperatorExpr:
        return OperatorExpr.from_terms((c, beta0, g) for g, c in self.terms)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(c for _, c in self.terms)

    def coefficient_of(self, graph: Multigraph) -> Fraction:
        return dict(self.terms).get(graph, Fraction(0))

    def with_status(self, **updates) -> "Identity":
        return dataclasses.replace(self, status={**self.status, **updates})

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "beta": self.beta.to_json(),
            "beta0_range": "any",
            "terms": [{"coeff": format_fraction(c), "graph": g.to_json()} for g, c in self.terms],
            "status": self.status,
            "provenance": {"kernel_row": self.kernel_row, "matching_vector": [format_fraction(x) for x in self.matching_vector]},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Identity":
        prov = data.get("provenance", {})
        return cls(
            dim=int(data["dim"]),
            beta=DegreeVector.from_json(data["beta"]),
            terms=tuple((Multigraph.from_json(t["graph"]), to_fraction(t["coeff"])) for t in data["terms"]),
            kernel_row=prov.get("kernel_row"),
            matching_vector=tuple(int(to_fraction(x)) for x in prov.get("matching_vector", [])),
            status=dict(data.get("status", {})),
        )


def identities_for(beta: DegreeVector, d: int, max_cells: int | None = None,
                   basis: Sequence[Sequence[int]] | None = None) -> list[Identity]:
    """A maximal independent set of class relations for one degree vector."""
    beta = beta.without_isolated()
    if basis is None:
        basis = kernel(beta.num_edges, d, max_cells=max_cells).basis
    classes = [orb.graph for orb in orbits(beta)]
    chosen: list[list[Fraction]] = []
    out = []
    for row_index, row in enumerate(basis):
        sums = average_over_symmetry(row, beta)
        if not any(sums):
            continue
        if rank(chosen + [sums]) == len(chosen):
            continue
        chosen.append(sums)
        coeffs = integer_normalize(sums)
        out.append(Identity(
            dim=d,
            beta=beta,
            terms=tuple((g, Fraction(c)) for g, c in zip(classes, coeffs) if c),
            kernel_row=row_index,
            matching_vector=tuple(row),
        ))
    return out


def discover(d: int, p: int, max_cells: int | None = None) -> list[Identity]:
    """All independent relations among ``p``-edge classes in dimension ``d``."""
    if d < 1 or p < 1:
        raise ValueError("need d >= 1 and p >= 1")
    if p <= d:
        return []
    basis = kernel(p, d, max_cells=max_cells).basis
    out = []
    for beta in degree_vectors(p):
        out.extend(identities_for(beta, d, basis=basis))
    return out


def _sample_degree(identity: Identity) -> int:
    return identity.expr().max_degree + 1


def verify_identity(identity: Identity, trials: int = 20, seed=0, points: int = 3,
                    dim: int | None = None, degree: int | None = None,
                    beta0s: Sequence[int] = (0, 1, 2)) -> Identity:
    """Evaluate on seeded random polynomial jets; every value must be exactly zero.

    Raises :class:`VerificationFailure` with the offending polynomial and point.
    """
    d = identity.dim if dim is None else dim
    degree = _sample_degree(identity) if degree is None else degree
    exprs = {b: identity.expr(b) for b in beta0s}
    k = identity.expr().max_degree
    rng = random.Random(seed)
    for _ in range(trials):
        f = random_polynomial(d, degree, rng)
        for _ in range(points):
            x = random_point(d, rng)
            j = jet(f, x, k)
            for b, e in exprs.items():
                value = evaluate(e, j)
                if value != 0:
                    raise VerificationFailure(
                        f"identity evaluates to {value} in dimension {d} (beta0={b}) at {x} for f = {f}",
                        polynomial=f, point=x, value=value, beta0=b)
    return identity.with_status(verified_zero={"dim": d, "trials": trials, "points": points,
                                               "seed": seed, "beta0": list(beta0s)})


@dataclass(frozen=True)
class Witness:
    polynomial: Polynomial
    point: tuple
    value: Fraction
    dim: int

    def to_json(self) -> dict:
        return {"dim": self.dim, "f": str(self.polynomial), "x": [format_fraction(c) for c in self.point],
                "value": format_fraction(self.value)}


def witness_nonzero(identity: Identity, d_prime: int, budget: int = 10_000, seed=0,
                    candidates: Sequence[Polynomial] = ()) -> Witness:
    """Find ``f, x`` where the relation is nonzero in dimension ``d_prime``.

    Explicit ``candidates`` are tried first, then seeded random polynomials
    with coefficients in {-2..2}, lowest usable degree first; each one is
    evaluated at the origin and at (1,...,1).  ``budget`` caps evaluations.
    """
    if d_prime <= identity.dim:
        raise ValueError("witness dimension must exceed the identity's dimension")
    expr = identity.expr()
    k = expr.max_degree
    origin = (0,) * d_prime
    ones = (1,) * d_prime
    used = 0

    def attempt(f):
        nonlocal used
        for x in (origin, ones):
            if used >= budget:
                return None
            used += 1
            value = evaluate(expr, jet(f, x, k))
            if value != 0:
                return Witness(f, x, value, d_prime)
        return None

    for f in candidates:
        if (w := attempt(f)) is not None:
            return w
    rng = random.Random(seed)
    degrees = sorted({max(2, k), max(3, k + 1)})
    share = budget // len(degrees)
    for i, deg in enumerate(degrees):
        stop = share * (i + 1) if i < len(degrees) - 1 else budget
        basis = monomials(d_prime, deg)
        while used < stop:
            f = Polynomial(d_prime, {e: rng.randint(-2, 2) for e in basis})
            if (w := attempt(f)) is not None:
                return w
    raise WitnessNotFound(f"no nonzero evaluation in dimension {d_prime} after {used} evaluations")


def attach_witness(identity: Identity, witness: Witness) -> Identity:
    return identity.with_status(witnessed_nonzero=witness.to_json())


def power_sum_combination(a: Sequence[Sequence[Fraction]]) -> Fraction:
    """``tr(A)^3 - 3 tr(A^2) tr(A) + 2 tr(A^3)`` computed with plain matrix products."""
    n = len(a)
    a2 = [[sum(a[i][k] * a[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    t1 = sum(a[i][i] for i in range(n))
    t2 = sum(a2[i][i] for i in range(n))
    t3 = sum(a2[i][k] * a[k][i] for i in range(n) for k in range(n))
    return t1**3 - 3 * t2 * t1 + 2 * t3


def cayley_hamilton_check(d: int = 2, trials: int = 50, seed=0) -> bool:
    """Whether the cubic power-sum relation vanishes on random symmetric ``d x d`` matrices."""
    rng = random.Random(seed)
    for _ in range(trials):
        a = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                a[i][j] = a[j][i] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        if power_sum_combination(a) != 0:
            return False
    return True
