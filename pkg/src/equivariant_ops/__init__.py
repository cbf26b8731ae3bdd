"""Isometry-equivariant polynomial differential operators indexed by multigraphs."""

from .errors import ResourceGuardError, VerificationFailure, WitnessNotFound
from .identities import Identity, cayley_hamilton_check, discover, verify_identity, witness_nonzero
from .invariant_tensor import KernelBasis, average_over_symmetry, evaluation_matrix, kernel, rank, tau_eval
from .multigraph import (
    NULL_GRAPH,
    DegreeVector,
    Multigraph,
    build_graph,
    canonical_form,
    degree_vector,
    degree_vectors,
    disjoint_union,
    enumerate_classes,
    enumerate_matchings,
    orbits,
    parametrize,
    symmetry_generators,
)
from .operator_eval import (
    AffineIsometry,
    OperatorExpr,
    cayley_orthogonal,
    check_equivariance,
    compile,
    compose_with_isometry,
    evaluate,
    independence_rank,
)
from .polynomial import Jet, Polynomial, jet, parse_polynomial

__version__ = "0.1.0"
