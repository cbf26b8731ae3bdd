"""O(d)-invariant tensors indexed by perfect matchings.

The tensor attached to a matching is the product of inner products over its
pairs.  On basis vectors this is a product of Kronecker deltas, so linear
relations among these tensors in dimension ``d`` reduce to the left
nullspace of a 0/1 matrix with one column per index tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import check_cells
from .multigraph import DegreeVector, Matching, enumerate_matchings, matching_index, orbits
from .rational import format_fraction, normalized_basis, nullspace, to_fraction


def tau_eval(rho: Matching, t: Sequence[int]) -> int:
    if len(t) != 2 * len(rho):
        raise ValueError(f"index tuple of length {len(t)} for a matching on {2 * len(rho)} indices")
    return int(all(t[a - 1] == t[b - 1] for a, b in rho))


def index_tuples(p: int, d: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(1, d + 1), repeat=2 * p)


def pair_columns(p: int) -> list[tuple[int, ...]]:
    """Tuples that are 1 everywhere except 2 at two positions, in order (1,2),(1,3),..."""
    out = []
    for i, j in itertools.combinations(range(2 * p), 2):
        t = [1] * (2 * p)
        t[i] = t[j] = 2
        out.append(tuple(t))
    return out


def reduced_columns(p: int, d: int) -> list[tuple[int, ...]]:
    """One tuple per class of columns that can be nonzero.

    A column where some value occurs an odd number of times vanishes (flip
    that basis vector), and permuting basis vectors leaves every column
    unchanged, so it suffices to take tuples whose values first appear in
    increasing order and occur an even number of times each.
    """
    out = []

    def grow(prefix: list[int], used: int):
        if len(prefix) == 2 * p:
            if all(prefix.count(v) % 2 == 0 for v in range(1, used + 1)):
                out.append(tuple(prefix))
            return
        for v in range(1, min(used + 1, d) + 1):
            grow(prefix + [v], max(used, v))

    grow([], 0)
    return out


def evaluation_matrix(p: int, d: int, columns: Sequence[Sequence[int]] | None = None,
                      max_cells: int | None = None) -> list[list[int]]:
    """Rows: matchings in enumeration order.  Columns: ``d**(2p)`` index tuples, lexicographic."""
    if p < 0 or d < 1:
        raise ValueError("need p >= 0 and d >= 1")
    rows = enumerate_matchings(p)
    if columns is None:
        check_cells(len(rows) * d ** (2 * p), max_cells, "evaluation matrix")
        columns = list(index_tuples(p, d))
    else:
        check_cells(len(rows) * len(columns), max_cells, "evaluation matrix")
    return [[tau_eval(rho, t) for t in columns] for rho in rows]


@dataclass(frozen=True)
class KernelBasis:
    """Integer basis (RREF rows) of the relations among the matching tensors."""

    p: int
    d: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def matchings(self) -> tuple[Matching, ...]:
        return enumerate_matchings(self.p)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "matching_order": [[list(pair) for pair in rho] for rho in self.matchings],
            "basis": [[format_fraction(x) for x in row] for row in self.basis],
        }

    @classmethod
    def from_json(cls, data: dict) -> "KernelBasis":
        rows = []
        for row in data["basis"]:
            fracs = [to_fraction(x) for x in row]
            rows.append(tuple(int(x) if x.denominator == 1 else x for x in fracs))
        return cls(int(data["p"]), int(data["d"]), tuple(rows))


def _column_vectors(p: int, d: int, reduced: bool, max_cells: int | None) -> list[tuple[int, ...]]:
    rows = enumerate_matchings(p)
    cols = reduced_columns(p, d) if reduced else None
    if cols is None:
        check_cells(len(rows) * d ** (2 * p), max_cells, "evaluation matrix")
        cols = index_tuples(p, d)
    distinct = {tuple(tau_eval(rho, t) for rho in rows) for t in cols}
    return sorted(distinct)


def kernel(p: int, d: int, reduced: bool = False, max_cells: int | None = None) -> KernelBasis:
    """All ``c`` with ``sum_rho c_rho tau_rho == 0`` in dimension ``d``.

    ``reduced=True`` restricts to :func:`reduced_columns`; the default scans
    every index tuple.
    """
    if p < 0 or d < 1:
        raise ValueError("need p >= 0 and d >= 1")
    n = len(enumerate_matchings(p))
    constraints = _column_vectors(p, d, reduced, max_cells)
    null = nullspace(constraints, n) if constraints else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    basis = normalized_basis(null) if null else []
    return KernelBasis(p, d, tuple(tuple(row) for row in basis))


def rank(p: int, d: int, max_cells: int | None = None) -> int:
    return len(enumerate_matchings(p)) - kernel(p, d, max_cells=max_cells).dimension


def verify_kernel_vector(c: Sequence, p: int, d: int, max_cells: int | None = None) -> bool:
    """Check ``sum c_rho tau_rho(t) == 0`` on every index tuple."""
    rows = enumerate_matchings(p)
    if len(c) != len(rows):
        raise ValueError("coefficient vector has the wrong length")
    check_cells(len(rows) * d ** (2 * p), max_cells, "kernel verification")
    support = [(coef, rho) for coef, rho in zip(c, rows) if coef]
    return all(sum(coef for coef, rho in support if tau_eval(rho, t)) == 0 for t in index_tuples(p, d))


def average_over_symmetry(c: Sequence, beta: DegreeVector) -> list[Fraction]:
    """Sum of ``c`` over each orbit of the symmetry group of ``beta``.

    These sums are the class coefficients of ``sum_rho c_rho [Gamma(rho, beta)]``.
    """
    p = beta.num_edges
    index = matching_index(p)
    if len(c) != len(index):
        raise ValueError(f"vector of length {len(c)} is not indexed by the {len(index)} matchings for p={p}")
    return [sum((Fraction(c[index[rho]]) for rho in orb.matchings), Fraction(0)) for orb in orbits(beta)]


def symmetrize(c: Sequence, beta: DegreeVector) -> list[Fraction]:
    """Group average of ``c``: constant on orbits, equal to the orbit mean."""
    index = matching_index(beta.num_edges)
    out = [Fraction(0)] * len(index)
    for total, orb in zip(average_over_symmetry(c, beta), orbits(beta)):
        for rho in orb.matchings:
            out[index[rho]] = total / len(orb)
    return out
