"""Exact arithmetic kernel: primes, mod-p linear algebra, polynomials."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from quadpencil.exactmath import (
    ExactMatrix,
    FactorizationError,
    PrimeFieldElement,
    UniPoly,
    det_cofactor,
    det_poly_matrix,
    factor_with_hints,
    is_probable_prime,
    isolate_real_roots,
    kernel_mod_p,
    poly_discriminant,
    rank_mod_p,
    repeated_roots_mod_p,
    solve_mod_p,
    sqrt_mod_p,
    sturm_count,
)
from quadpencil.exactmath.unipoly import poly_gcd, resultant, squarefree_degree6

from conftest import (
    BIG_PRIME,
    CHAR_FORM_COEFFS,
    POLY_DISC,
    REPEATED_ROOT_MOD_BIG,
)

_T = sympy.Symbol("t")


def _to_sympy(f: UniPoly):
    return sum(int(c) * _T**k for k, c in enumerate(f.coeffs))


def random_unipoly(rng: random.Random, degree: int, monic: bool = False) -> UniPoly:
    coeffs = [rng.randint(-9, 9) for _ in range(degree)]
    coeffs.append(1 if monic else rng.choice([c for c in range(-9, 10) if c]))
    return UniPoly(coeffs)


# ---------------------------------------------------------------------------
# Integers
# ---------------------------------------------------------------------------

def test_is_probable_prime():
    for p in (2, 3, 5, 7, 97, 65537, BIG_PRIME, 2**61 - 1):
        assert is_probable_prime(p), p
    for n in (-7, 0, 1, 4, 9, 91, 561, 1105, 6601, 2**61 + 1):
        assert not is_probable_prime(n), n


def test_sqrt_mod_p_properties():
    for p in (3, 5, 7, 11, 13, 97, 10007):
        residues = 0
        for a in range(p):
            r = sqrt_mod_p(a, p)
            if r is None:
                assert pow(a, (p - 1) // 2, p) == p - 1
            else:
                residues += 1
                assert r * r % p == a
                assert r <= p - r  # the smaller of the two roots
        assert residues == (p + 1) // 2  # squares including 0
    with pytest.raises(ValueError):
        sqrt_mod_p(1, 2)
    with pytest.raises(ValueError):
        sqrt_mod_p(1, 15)


def test_factor_with_hints():
    assert factor_with_hints(600) == {2: 3, 3: 1, 5: 2}
    assert factor_with_hints(-600) == {2: 3, 3: 1, 5: 2}
    assert factor_with_hints(2**12 * BIG_PRIME) == {2: 12, BIG_PRIME: 1}
    big_semiprime = (10**9 + 7) * (10**9 + 9)
    assert factor_with_hints(big_semiprime, hints=(10**9 + 7,)) == {
        10**9 + 7: 1,
        10**9 + 9: 1,
    }
    with pytest.raises(FactorizationError):
        factor_with_hints(big_semiprime)
    with pytest.raises(ValueError):
        factor_with_hints(0)
    # Perfect powers of large primes unwrap without hints.
    assert factor_with_hints((10**9 + 7) ** 2) == {10**9 + 7: 2}


# ---------------------------------------------------------------------------
# Linear algebra mod p
# ---------------------------------------------------------------------------

def test_kernel_vectors_annihilate_the_matrix():
    rng = random.Random(20260401)
    for _ in range(100):
        n = rng.randint(3, 6)
        m = rng.randint(3, 6)
        p = rng.choice((3, 5, 7, 11, 13, 97))
        matrix = [[rng.randint(-20, 20) for _ in range(m)] for _ in range(n)]
        basis = kernel_mod_p(matrix, p)
        assert len(basis) == m - rank_mod_p(matrix, p)
        for v in basis:
            assert all(
                sum(row[j] * v[j] for j in range(m)) % p == 0 for row in matrix
            )
        if basis:
            assert rank_mod_p(basis, p) == len(basis)  # independent
    with pytest.raises(ValueError):
        kernel_mod_p([[1, 0], [0, 1]], 2)


def test_rank_mod_p():
    identity = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    assert rank_mod_p(identity, 7) == 4
    assert rank_mod_p([[0, 0], [0, 0]], 7) == 0
    assert rank_mod_p([[1, 0], [0, 7]], 7) == 1  # rank drops mod 7


def test_solve_mod_p():
    rng = random.Random(99)
    for _ in range(50):
        n = rng.randint(2, 5)
        m = rng.randint(2, 5)
        p = rng.choice((3, 5, 7, 13))
        matrix = [[rng.randint(0, p - 1) for _ in range(m)] for _ in range(n)]
        x0 = [rng.randint(0, p - 1) for _ in range(m)]
        rhs = [sum(row[j] * x0[j] for j in range(m)) % p for row in matrix]
        x = solve_mod_p(matrix, rhs, p)
        assert x is not None
        assert all(
            sum(row[j] * x[j] for j in range(m)) % p == b
            for row, b in zip(matrix, rhs)
        )
    assert solve_mod_p([[1, 0], [1, 0]], [0, 1], 5) is None


# ---------------------------------------------------------------------------
# Determinants
# ---------------------------------------------------------------------------

def test_fraction_free_det_matches_cofactor_on_integers():
    rng = random.Random(20260402)
    for _ in range(60):
        n = rng.randint(2, 5)
        m = ExactMatrix.from_rows(
            [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        )
        assert det_poly_matrix(m) == det_cofactor(m)


def test_fraction_free_det_matches_cofactor_on_fractions():
    rng = random.Random(20260403)
    for _ in range(40):
        n = rng.randint(2, 4)
        m = ExactMatrix.from_rows(
            [
                [
                    Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                    for _ in range(n)
                ]
                for _ in range(n)
            ]
        )
        assert det_poly_matrix(m) == det_cofactor(m)


def test_det_with_polynomial_entries():
    x = UniPoly.x()
    one = UniPoly.constant(1)
    m = ExactMatrix.from_rows([[x, one], [one, x]])
    assert det_poly_matrix(m) == UniPoly((-1, 0, 1))  # x^2 - 1
    assert det_cofactor(m) == UniPoly((-1, 0, 1))
    rng = random.Random(20260404)
    for _ in range(20):
        n = rng.randint(2, 4)
        rows = [
            [
                UniPoly((rng.randint(-4, 4), rng.randint(-4, 4)))
                for _ in range(n)
            ]
            for _ in range(n)
        ]
        m = ExactMatrix.from_rows(rows)
        assert det_poly_matrix(m) == det_cofactor(m)


def test_det_validations():
    with pytest.raises(ValueError, match="non-square"):
        det_poly_matrix(ExactMatrix.from_rows([[1, 2]]))
    big = ExactMatrix.from_rows(
        [[1 if i == j else 0 for j in range(17)] for i in range(17)]
    )
    with pytest.raises(ValueError, match="exceeds cap"):
        det_poly_matrix(big)


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------

def test_unipoly_ring_operations():
    x = UniPoly.x()
    f = (x + UniPoly.constant(1)) * (x - UniPoly.constant(1))
    assert f == UniPoly((-1, 0, 1))
    q, r = f.divmod(x - UniPoly.constant(1))
    assert q == x + UniPoly.constant(1)
    assert r.is_zero()
    assert UniPoly((0, 0, 0, 0, 3)).derivative() == UniPoly((0, 0, 0, 12))
    assert UniPoly((1, 2, 1)).evaluate(Fraction(1, 2)) == Fraction(9, 4)
    assert UniPoly(()).degree() == -1
    assert UniPoly((0, 0)).is_zero()
    with pytest.raises(AttributeError):
        UniPoly((1,)).coeffs = (2,)
    with pytest.raises(ValueError):
        UniPoly((Fraction(1, 2),)).to_integer_coeffs()


def test_poly_gcd_and_squarefree_check():
    x = UniPoly.x()

    def linear(a):
        return x - UniPoly.constant(a)

    f = linear(1) * linear(2)
    g = linear(1) * linear(3)
    assert poly_gcd(f, g) == linear(1)
    char_form = UniPoly(CHAR_FORM_COEFFS)
    assert squarefree_degree6(char_form)
    squared = linear(1) * linear(1) * UniPoly((1, 0, 0, 0, 1))  # (x-1)^2 (x^4+1)
    assert squared.degree() == 6
    assert not squarefree_degree6(squared)
    assert not squarefree_degree6(UniPoly((1, 0, 0, 0, 0, 1)))  # degree 5


def test_sturm_count():
    x2_minus_2 = UniPoly((-2, 0, 1))
    assert sturm_count(x2_minus_2) == 2
    assert sturm_count(x2_minus_2, lo=0) == 1
    assert sturm_count(x2_minus_2, hi=0) == 1
    assert sturm_count(UniPoly((1, 0, 0, 0, 0, 0, 1))) == 0  # t^6 + 1
    assert sturm_count(UniPoly(CHAR_FORM_COEFFS)) == 2
    with pytest.raises(ValueError, match="non-squarefree"):
        sturm_count(UniPoly((1, 2, 1)))  # (x+1)^2


def test_isolation_intervals_bracket_every_real_root():
    rng = random.Random(20260405)
    checked = 0
    while checked < 40:
        f = random_unipoly(rng, 6)
        if poly_gcd(f, f.derivative()).degree() != 0:
            continue
        checked += 1
        intervals = isolate_real_roots(f)
        assert len(intervals) == sturm_count(f)
        previous_hi = None
        for lo, hi in intervals:
            assert hi - lo < Fraction(1, 10**6)
            assert f.evaluate(lo) * f.evaluate(hi) < 0
            if previous_hi is not None:
                assert previous_hi <= lo
            previous_hi = hi


def test_isolation_handles_rational_roots():
    f = UniPoly((0, -1, 0, 1))  # x^3 - x = x(x-1)(x+1)
    intervals = isolate_real_roots(f)
    assert len(intervals) == 3
    for root, (lo, hi) in zip((-1, 0, 1), intervals):
        assert lo < root < hi


def test_poly_discriminant_known_values_and_sympy():
    rng = random.Random(20260406)
    for _ in range(30):
        b, c = rng.randint(-9, 9), rng.randint(-9, 9)
        assert poly_discriminant(UniPoly((c, b, 1))) == b * b - 4 * c
        p_, q_ = rng.randint(-9, 9), rng.randint(-9, 9)
        assert (
            poly_discriminant(UniPoly((q_, p_, 0, 1)))
            == -4 * p_**3 - 27 * q_**2
        )
    assert poly_discriminant(UniPoly(CHAR_FORM_COEFFS)) == POLY_DISC
    for _ in range(30):
        f = random_unipoly(rng, 6)
        expected = sympy.discriminant(_to_sympy(f), _T)
        assert poly_discriminant(f) == int(expected)
    with pytest.raises(ValueError):
        poly_discriminant(UniPoly((1, 1)))


def _sylvester_det_oracle(f: UniPoly, g: UniPoly) -> int:
    """Textbook Sylvester determinant: deg(g) rows of f, deg(f) rows of g."""
    m, n = f.degree(), g.degree()
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(f.coeffs)) + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(g.coeffs)) + [0] * (m - 1 - i))
    assert all(len(r) == size for r in rows)
    return int(sympy.Matrix(rows).det())


def test_resultant_properties():
    x = UniPoly.x()
    # Res(x - 2, g) = g(2) by the product formula.
    assert resultant(x - UniPoly.constant(2), UniPoly((1, 0, 1))) == 5
    rng = random.Random(20260407)
    for _ in range(30):
        f = random_unipoly(rng, rng.randint(1, 4))
        g = random_unipoly(rng, rng.randint(1, 4))
        rfg = resultant(f, g)
        sign = -1 if (f.degree() * g.degree()) % 2 else 1
        assert rfg == sign * resultant(g, f)
        assert rfg == _sylvester_det_oracle(f, g)


# ---------------------------------------------------------------------------
# Repeated roots mod p
# ---------------------------------------------------------------------------

def test_repeated_roots_of_the_example_form_at_the_big_prime():
    f = UniPoly(CHAR_FORM_COEFFS)
    roots = repeated_roots_mod_p(f, BIG_PRIME)
    assert [r.residue for r in roots] == [REPEATED_ROOT_MOD_BIG]
    assert all(r.modulus == BIG_PRIME for r in roots)


def test_repeated_roots_match_brute_force():
    rng = random.Random(20260408)
    for _ in range(50):
        f = random_unipoly(rng, 6, monic=True)
        p = rng.choice((3, 5, 7, 11, 13, 31, 97))
        coeffs = [int(c) % p for c in f.coeffs]

        def value(poly_coeffs, r):
            acc = 0
            for c in reversed(poly_coeffs):
                acc = (acc * r + c) % p
            return acc

        deriv = [k * c % p for k, c in enumerate(coeffs)][1:]
        expected = {
            r
            for r in range(p)
            if value(coeffs, r) == 0 and value(deriv, r) == 0
        }
        got = {e.residue for e in repeated_roots_mod_p(f, p)}
        assert got == expected
        # An F_p-rational repeated root forces p | disc(f) (the converse can
        # fail: the repeated root may live in an extension field).
        if expected:
            assert poly_discriminant(f) % p == 0


def test_repeated_roots_large_prime_ladder():
    # (x - 12345)^2 (x^2 + 1)(x^2 + 2) has exactly one repeated root.
    x = UniPoly.x()
    a = UniPoly.constant(12345)
    f = (x - a) * (x - a) * UniPoly((1, 0, 1)) * UniPoly((2, 0, 1))
    q = 2**31 - 1
    roots = repeated_roots_mod_p(f, q)
    assert [r.residue for r in roots] == [12345]


def test_repeated_roots_inseparable_branch():
    # f' vanishes mod 3 for x^3 + 1 = (x + 1)^3; every root is repeated.
    roots = repeated_roots_mod_p(UniPoly((1, 0, 0, 1)), 3)
    assert [r.residue for r in roots] == [2]


def test_repeated_roots_guards():
    f = UniPoly(CHAR_FORM_COEFFS)
    with pytest.raises(ValueError, match="not prime"):
        repeated_roots_mod_p(f, 6)
    with pytest.raises(ValueError, match="identically zero"):
        repeated_roots_mod_p(UniPoly((3, 3, 3)), 3)


def test_prime_field_element_validation():
    element = PrimeFieldElement(4, 7)
    assert element.residue == 4
    assert element.modulus == 7
    with pytest.raises(ValueError):
        PrimeFieldElement(1, 6)
    with pytest.raises(ValueError):
        PrimeFieldElement(7, 7)
