"""Pencils of quadrics: characteristic form, smoothness, bad primes, curve data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import (
    ExactMatrix,
    UniPoly,
    det_poly_matrix,
    factor_with_hints,
    poly_discriminant,
    squarefree_degree6,
    sturm_count,
)
from .quadric import NUM_VARIABLES, QuadraticForm, gram_matrix

# Discriminant normalization exponent for a genus-2 hyperelliptic model
# z^2 = f(t): the model discriminant is 2^(4g+4) * disc(f) with g = 2.
CURVE_DISC_POWER_OF_TWO = 12


class NonIntegralCharacteristicFormError(ArithmeticError):
    """Raised when -det(M1 - t*M2) fails to have integer coefficients.

    Half-integer Gram entries can contribute 2^-6 denominators (example:
    Q1 = Q2 = uv + wx + yz), so this is a genuine input condition, not only an
    internal guard.
    """


class PencilOfQuadrics:
    """The pencil spanned by two integral quadratic forms.

    The characteristic form f(t) = -det(M1 - t*M2) is computed exactly at
    construction time and cached; instances are immutable.
    """

    __slots__ = ("q1", "q2", "m1", "m2", "char_form")

    def __init__(self, q1: QuadraticForm, q2: QuadraticForm):
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "q2", q2)
        object.__setattr__(self, "m1", gram_matrix(q1))
        object.__setattr__(self, "m2", gram_matrix(q2))
        object.__setattr__(self, "char_form", _characteristic_form(self.m1, self.m2))

    def __setattr__(self, name, value):
        raise AttributeError("PencilOfQuadrics is immutable")

    def __repr__(self) -> str:
        return f"PencilOfQuadrics({self.q1!r}, {self.q2!r})"


def _characteristic_form(m1: ExactMatrix, m2: ExactMatrix) -> UniPoly:
    entries = []
    for i in range(NUM_VARIABLES):
        for j in range(NUM_VARIABLES):
            a = m1.entry(i, j)
            b = m2.entry(i, j)
            entries.append(UniPoly((Fraction(a), -Fraction(b))))
    matrix = ExactMatrix(NUM_VARIABLES, NUM_VARIABLES, entries)
    det = det_poly_matrix(matrix)
    if not isinstance(det, UniPoly):
        det = UniPoly.constant(det)
    f = -det
    if not f.is_integral():
        raise NonIntegralCharacteristicFormError("non-integral characteristic form")
    return f.to_integer_coeffs()


def characteristic_form(pencil: PencilOfQuadrics) -> UniPoly:
    """f(t) = -det(M1 - t*M2), an integer polynomial of degree at most 6."""
    return pencil.char_form


def smoothness_check(pencil: PencilOfQuadrics) -> str:
    """Verdict on X = {Q1 = Q2 = 0}: "smooth", "singular", or "degenerate".

    X is a smooth threefold iff f has degree 6 and is squarefree; f identically
    zero means the pencil itself is degenerate.
    """
    f = pencil.char_form
    if f.is_zero():
        return "degenerate"
    if squarefree_degree6(f):
        return "smooth"
    return "singular"


@dataclass(frozen=True)
class CurveData:
    """Data of the genus-2 curve z^2 = f(t) attached to a smooth pencil.

    disc is the discriminant of the hyperelliptic model, i.e. 2^12 * disc(f)
    (the conventional genus-2 normalization); bad_primes is the full prime
    support of disc * lc(f).
    """

    f: UniPoly
    disc: int
    bad_primes: tuple[int, ...]
    real_weierstrass_count: int


def curve_data(pencil: PencilOfQuadrics, factor_hints=()) -> CurveData:
    """Populate CurveData for a smooth pencil.

    Raises ValueError unless smoothness_check(pencil) == "smooth"; propagates
    FactorizationError ("unfactored composite cofactor") when the discriminant
    support cannot be certified.
    """
    if smoothness_check(pencil) != "smooth":
        raise ValueError("curve data requires a smooth pencil")
    f = pencil.char_form
    disc = (2**CURVE_DISC_POWER_OF_TWO) * poly_discriminant(f)
    lc = int(f.leading())
    support = disc * lc
    factors = factor_with_hints(support, tuple(factor_hints))
    bad_primes = tuple(sorted(factors))
    count = sturm_count(f)
    return CurveData(
        f=f, disc=disc, bad_primes=bad_primes, real_weierstrass_count=count
    )
