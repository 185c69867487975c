"""The Fano variety of lines on X = {Q1 = Q2 = 0} in chart coordinates.

Lines in P^5 are parametrized by the 15 standard affine charts of Gr(2,6):
a chart fixes two pivot columns to the 2x2 identity and fills the remaining
eight matrix slots with parameters t_1..t_8.  Restricting both quadrics to the
parametrized line yields 6 equations in the 8 parameters whose common zeros
are exactly the lines contained in X.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .exactmath import ExactMatrix, MultiPoly, is_probable_prime, rank_mod_p
from .pencil import PencilOfQuadrics
from .quadric import NUM_VARIABLES, restrict_to_line

NUM_PARAMETERS = 8
FANO_CODIMENSION = 6


@dataclass(frozen=True)
class GrassmannChart:
    """One of the 15 standard charts of Gr(2,6), named by its pivot columns.

    pivots are 0-based ambient column indices (i, j) with i < j.  The two rows
    of the chart matrix carry the identity in the pivot columns; the non-pivot
    columns, taken in ascending order c_1 < c_2 < c_3 < c_4, carry t_1, t_3,
    t_5, t_7 in the first row and t_2, t_4, t_6, t_8 in the second, so the
    chart parametrizes the line [r:s] -> r*rowA + s*rowB.
    """

    pivots: tuple[int, int]

    def __post_init__(self) -> None:
        i, j = self.pivots
        if not (0 <= i < j < NUM_VARIABLES):
            raise ValueError(f"bad pivot pair {self.pivots}")
        object.__setattr__(self, "pivots", (int(i), int(j)))


def all_charts() -> tuple[GrassmannChart, ...]:
    """The 15 charts in lexicographic pivot order."""
    return tuple(
        GrassmannChart(pair) for pair in combinations(range(NUM_VARIABLES), 2)
    )


def chart_rows(chart: GrassmannChart) -> tuple[tuple, tuple]:
    """Symbolic rows (rowA, rowB) of the chart matrix, as MultiPoly 6-vectors."""
    i, j = chart.pivots
    non_pivots = [c for c in range(NUM_VARIABLES) if c not in (i, j)]
    one = MultiPoly.constant(1, NUM_PARAMETERS)
    zero = MultiPoly.zero(NUM_PARAMETERS)
    row_a = [zero] * NUM_VARIABLES
    row_b = [zero] * NUM_VARIABLES
    row_a[i] = one
    row_b[j] = one
    for k, col in enumerate(non_pivots):
        row_a[col] = MultiPoly.variable(2 * k, NUM_PARAMETERS)
        row_b[col] = MultiPoly.variable(2 * k + 1, NUM_PARAMETERS)
    return tuple(row_a), tuple(row_b)


def chart_point_rows(chart: GrassmannChart, point) -> tuple[list, list]:
    """The two integer basis vectors of the line at a concrete chart point."""
    if len(point) != NUM_PARAMETERS:
        raise ValueError("expected 8 chart coordinates")
    row_a_sym, row_b_sym = chart_rows(chart)
    point = [int(c) for c in point]
    row_a = [entry.evaluate(point) for entry in row_a_sym]
    row_b = [entry.evaluate(point) for entry in row_b_sym]
    return row_a, row_b


class FanoSystem:
    """The 6 chart equations (and their Jacobian) cutting out F1(X)."""

    __slots__ = ("chart", "equations", "jacobian")

    def __init__(self, chart: GrassmannChart, equations):
        equations = tuple(equations)
        if len(equations) != FANO_CODIMENSION:
            raise ValueError("expected 6 equations")
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "equations", equations)
        jac = tuple(
            tuple(eq.derivative(k) for k in range(NUM_PARAMETERS))
            for eq in equations
        )
        object.__setattr__(self, "jacobian", jac)

    def __setattr__(self, name, value):
        raise AttributeError("FanoSystem is immutable")

    def __repr__(self) -> str:
        return f"FanoSystem(chart={self.chart.pivots})"


def fano_system(pencil: PencilOfQuadrics, chart: GrassmannChart) -> FanoSystem:
    """Equations of F1(X) on the chart: (c_rr, c_rs, c_ss) for Q1, then Q2."""
    row_a, row_b = chart_rows(chart)
    equations = restrict_to_line(pencil.q1, row_a, row_b) + restrict_to_line(
        pencil.q2, row_a, row_b
    )
    return FanoSystem(chart, equations)


def fano_jacobian(system: FanoSystem) -> ExactMatrix:
    """The 6x8 matrix of partial derivatives d(equation_i)/d(t_j)."""
    entries = [entry for row in system.jacobian for entry in row]
    return ExactMatrix(FANO_CODIMENSION, NUM_PARAMETERS, entries)


@dataclass(frozen=True)
class FanoPointReport:
    """Verification result for one chart point over F_p."""

    on_fano: bool
    jacobian_rank: int
    smooth: bool


def verify_fano_point(system: FanoSystem, point, p: int) -> FanoPointReport:
    """Check a chart point over F_p: equation vanishing and Jacobian rank.

    The point is smooth on F1(X) iff it is on the system and the Jacobian has
    full rank 6 (the codimension of the Fano surface in A^8); that is exactly
    the hypothesis of the smooth-point form of Hensel's lemma.
    """
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    if len(point) != NUM_PARAMETERS:
        raise ValueError("expected 8 chart coordinates")
    residues = [int(c) % p for c in point]
    on_fano = all(eq.evaluate_mod(residues, p) == 0 for eq in system.equations)
    jac_rows = [
        [entry.evaluate_mod(residues, p) for entry in row]
        for row in system.jacobian
    ]
    rank = rank_mod_p(jac_rows, p)
    return FanoPointReport(
        on_fano=on_fano,
        jacobian_rank=rank,
        smooth=bool(on_fano and rank == FANO_CODIMENSION),
    )
