"""Shared fixtures: the worked-example pencil and its frozen expected values."""

from __future__ import annotations

import os
from fractions import Fraction

import pytest

from quadpencil import PencilOfQuadrics, QuadraticForm

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
EXAMPLE_PATH = os.path.join(DATA_DIR, "example_pencil.txt")
NO_WITNESS_PATH = os.path.join(DATA_DIR, "no_witness_pencil.txt")

Q1_TEXT = "uv + uw - 4vw + 2vz + 2wz + x^2 - 2xz + y^2 - z^2"
Q2_TEXT = "uv - uw + uy - 2v^2 + 2vx - 2wy + 2wz + 2xz"

Q1_COEFFS = {
    (0, 1): 1,
    (0, 2): 1,
    (1, 2): -4,
    (1, 5): 2,
    (2, 5): 2,
    (3, 3): 1,
    (3, 5): -2,
    (4, 4): 1,
    (5, 5): -1,
}
Q2_COEFFS = {
    (0, 1): 1,
    (0, 2): -1,
    (0, 4): 1,
    (1, 1): -2,
    (1, 3): 2,
    (2, 4): -2,
    (2, 5): 2,
    (3, 5): 2,
}

# f(t) = -t^6 - 3t^5 + 2t^4 + 3t^3 - 3t^2 - 3t - 2, lowest degree first.
CHAR_FORM_COEFFS = (-2, -3, -3, 3, 2, -3, -1)

POLY_DISC = 149743897  # disc of f; prime
CURVE_DISC = 613351002112  # 2^12 * disc(f), the genus-2 normalization
BAD_PRIMES = (2, 149743897)
BIG_PRIME = 149743897

# The worked example's chart has pivot columns 2 and 3 (1-based); internal
# pivots are 0-based.
CHART_PIVOTS = (1, 2)
CHART_UI = (2, 3)

F2_WITNESS = (1, 1, 0, 0, 1, 1, 0, 0)
BIG_WITNESS = (
    10276,
    859210,
    113976451,
    113430900,
    122036333,
    94785567,
    35411179,
    25838500,
)

SINGULAR_POINT_VERBATIM = (10925789, 85737939, 85378598, 93099029, 51694582, 1)
SINGULAR_POINT_CANONICAL = (1, 126743053, 27119006, 94322915, 93333782, 2380571)
REPEATED_ROOT_MOD_BIG = 57903756

# Printed 5-decimal approximations of the two real roots of f.
REAL_ROOTS_PRINTED = (Fraction(-326599, 100000), Fraction(-113643, 100000))

# Exhaustive F_2 census: on-system point count per chart (1-based columns);
# no chart has a smooth point and the Jacobian ranks that occur are 0, 2, 4.
F2_ON_FANO_COUNTS = {
    (1, 2): 8,
    (1, 3): 8,
    (1, 4): 8,
    (1, 5): 0,
    (1, 6): 8,
    (2, 3): 20,
    (2, 4): 22,
    (2, 5): 20,
    (2, 6): 22,
    (3, 4): 22,
    (3, 5): 20,
    (3, 6): 22,
    (4, 5): 20,
    (4, 6): 16,
    (5, 6): 20,
}

# A smooth F_3-point of the example's chart and its Newton lift mod 27.
P3_SMOOTH_POINT = (1, 2, 0, 1, 1, 2, 1, 2)
P3_LIFT_MOD_27 = (22, 26, 3, 16, 1, 5, 1, 2)


@pytest.fixture(scope="session")
def example_q1() -> QuadraticForm:
    return QuadraticForm(Q1_COEFFS)


@pytest.fixture(scope="session")
def example_q2() -> QuadraticForm:
    return QuadraticForm(Q2_COEFFS)


@pytest.fixture(scope="session")
def example_pencil(example_q1, example_q2) -> PencilOfQuadrics:
    return PencilOfQuadrics(example_q1, example_q2)


@pytest.fixture(scope="session")
def example_path() -> str:
    return EXAMPLE_PATH


@pytest.fixture(scope="session")
def no_witness_path() -> str:
    return NO_WITNESS_PATH
