"""Exception types shared across the package."""

from __future__ import annotations

import os

DEFAULT_MAX_CELLS = 10**7
MAX_CELLS_ENV = "EQUIVARIANT_OPS_MAX_CELLS"


class ResourceGuardError(RuntimeError):
    """A computation would exceed the configured matrix-cell ceiling."""

    def __init__(self, cells: int, ceiling: int, what: str = "matrix"):
        super().__init__(f"{what} needs {cells} cells, ceiling is {ceiling}")
        self.cells = cells
        self.ceiling = ceiling


class VerificationFailure(AssertionError):
    """An identity did not evaluate to zero on some test jet."""

    def __init__(self, message: str, polynomial=None, point=None, value=None, beta0: int | None = None):
        super().__init__(message)
        self.polynomial = polynomial
        self.point = point
        self.value = value
        self.beta0 = beta0


class WitnessNotFound(LookupError):
    """No nonzero evaluation turned up within the search budget."""


def resolve_max_cells(max_cells: int | None = None) -> int:
    if max_cells is not None:
        return int(max_cells)
    env = os.environ.get(MAX_CELLS_ENV)
    if env:
        return int(env)
    return DEFAULT_MAX_CELLS


def check_cells(cells: int, max_cells: int | None = None, what: str = "matrix") -> None:
    ceiling = resolve_max_cells(max_cells)
    if cells > ceiling:
        raise ResourceGuardError(cells, ceiling, what)
