"""Dense univariate polynomials over Z, Q, or F_p, with Sturm machinery."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from .integers import is_probable_prime

ISOLATION_WIDTH = Fraction(1, 10**6)

BRUTE_FORCE_ROOT_LIMIT = 1 << 16

# Deterministic shift sweep bound for big-prime root splitting.
_SPLIT_SHIFT_CAP = 64


@dataclass(frozen=True)
class PrimeFieldElement:
    """A residue in [0, p) for a certified prime modulus p."""

    residue: int
    modulus: int

    def __post_init__(self) -> None:
        if not is_probable_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue out of range")


class UniPoly:
    """Immutable dense polynomial; coefficients lowest degree first.

    Coefficients may be ints or Fractions (they interoperate exactly).
    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # immutability guard
        raise AttributeError("UniPoly is immutable")

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    # -- structure ------------------------------------------------------
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def coefficient(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def is_integral(self) -> bool:
        return all(
            (isinstance(c, int)) or (isinstance(c, Fraction) and c.denominator == 1)
            for c in self.coeffs
        )

    def to_integer_coeffs(self) -> "UniPoly":
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return UniPoly(tuple(int(c) for c in self.coeffs))

    # -- ring operations -------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash(tuple(Fraction(c) for c in self.coeffs))

    def __add__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if self.is_zero() or other.is_zero():
                return UniPoly.zero()
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return UniPoly(out)
        return UniPoly(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"

    def evaluate(self, point):
        """Horner evaluation; exact for int/Fraction points."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def divmod(self, divisor: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Division with remainder over Q (coefficients promoted to Fraction)."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        div = [Fraction(c) for c in divisor.coeffs]
        dd = len(div) - 1
        lead = div[-1]
        quo = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - dd - 1, -1, -1):
            q = rem[k + dd] / lead
            if q:
                quo[k] = q
                for i, c in enumerate(div):
                    rem[k + i] -= q * c
        return UniPoly(quo), UniPoly(rem[:dd])

    def exact_div(self, divisor: "UniPoly") -> "UniPoly":
        """Exact polynomial division; raises if the remainder is nonzero."""
        quo, rem = self.divmod(divisor)
        if not rem.is_zero():
            raise ValueError("inexact polynomial division")
        if self.is_integral() and divisor.is_integral() and quo.is_integral():
            return quo.to_integer_coeffs()
        return quo

    def content(self) -> Fraction:
        """Positive rational content (0 for the zero polynomial)."""
        if self.is_zero():
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            f = Fraction(c)
            num = int_gcd(num, abs(f.numerator))
            den = den * f.denominator // int_gcd(den, f.denominator)
        return Fraction(num, den)

    def primitive_part(self) -> "UniPoly":
        """self divided by its positive content (sign preserved)."""
        c = self.content()
        if c == 0:
            return self
        return UniPoly(tuple(Fraction(x) / c for x in self.coeffs))


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q (content-normalized Euclid)."""
    a = a.primitive_part()
    b = b.primitive_part()
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r.primitive_part()
    if a.is_zero():
        return a
    lead = Fraction(a.leading())
    return UniPoly(tuple(Fraction(c) / lead for c in a.coeffs))


def squarefree_degree6(f: UniPoly) -> bool:
    """True iff deg f = 6 and gcd(f, f') is a nonzero constant."""
    if f.degree() != 6:
        return False
    return poly_gcd(f, f.derivative()).degree() == 0


# ---------------------------------------------------------------------------
# Sturm sequences and real root isolation
# ---------------------------------------------------------------------------


def _sturm_chain(f: UniPoly) -> list[UniPoly]:
    chain = [f.primitive_part(), f.derivative().primitive_part()]
    while not chain[-1].is_zero() and chain[-1].degree() > 0:
        _, r = chain[-2].divmod(chain[-1])
        if r.is_zero():
            break
        chain.append((-r).primitive_part())
    return [p for p in chain if not p.is_zero()]


def _sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def _sign_at(p: UniPoly, point) -> int:
    """Sign of p at a rational point or at +/- infinity (point is +-None)."""
    if point is _NEG_INF:
        lead = p.leading()
        return _sign(lead) * (1 if p.degree() % 2 == 0 else -1)
    if point is _POS_INF:
        return _sign(p.leading())
    return _sign(p.evaluate(point))


class _Infinity:
    pass


_NEG_INF = _Infinity()
_POS_INF = _Infinity()


def _as_endpoint(x, default):
    if x is None:
        return default
    if isinstance(x, float):
        if x == float("-inf"):
            return _NEG_INF
        if x == float("inf"):
            return _POS_INF
        raise TypeError("endpoints must be exact rationals or +/-infinity")
    return Fraction(x)


def _variations(chain: list[UniPoly], point) -> int:
    signs = [s for s in (_sign_at(p, point) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(f: UniPoly, lo=None, hi=None) -> int:
    """Exact number of real roots of squarefree f in (lo, hi].

    None endpoints mean -infinity / +infinity respectively.
    """
    if f.is_zero() or f.degree() < 1:
        return 0
    if poly_gcd(f, f.derivative()).degree() != 0:
        raise ValueError("non-squarefree input")
    chain = _sturm_chain(f)
    a = _as_endpoint(lo, _NEG_INF)
    b = _as_endpoint(hi, _POS_INF)
    return _variations(chain, a) - _variations(chain, b)


def _root_bound(f: UniPoly) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    lead = abs(Fraction(f.leading()))
    m = max((abs(Fraction(c)) for c in f.coeffs[:-1]), default=Fraction(0))
    return Fraction(1) + m / lead


def isolate_real_roots(f: UniPoly, width: Fraction = ISOLATION_WIDTH) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (lo, hi], one real root each, width < 10^-6."""
    if f.is_zero() or f.degree() < 1:
        return []
    if poly_gcd(f, f.derivative()).degree() != 0:
        raise ValueError("non-squarefree input")
    chain = _sturm_chain(f)

    def count(lo: Fraction, hi: Fraction) -> int:
        return _variations(chain, lo) - _variations(chain, hi)

    bound = _root_bound(f)
    result: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, count(-bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and hi - lo < width:
            result.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if f.evaluate(mid) == 0:
            # mid is itself a root: emit a tight interval around it and
            # recurse on the two outer pieces.
            eps = min(width / 4, (hi - lo) / 4)
            while count(mid - eps, mid + eps) != 1:
                eps /= 2
            result.append((mid - eps, mid + eps))
            left_n = count(lo, mid - eps)
            right_n = count(mid + eps, hi)
            if left_n:
                stack.append((lo, mid - eps, left_n))
            if right_n:
                stack.append((mid + eps, hi, right_n))
            continue
        left_n = count(lo, mid)
        if left_n:
            stack.append((lo, mid, left_n))
        if n - left_n:
            stack.append((mid, hi, n - left_n))
    return sorted(result)


# ---------------------------------------------------------------------------
# Discriminants via the Sylvester resultant
# ---------------------------------------------------------------------------


def _sylvester_rows(f: UniPoly, g: UniPoly) -> list[list]:
    m, n = f.degree(), g.degree()
    size = m + n
    fl = list(reversed(f.coeffs))  # highest degree first
    gl = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fl + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gl + [0] * (size - n - 1 - i))
    return rows


def _bareiss_int_det(rows: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(f: UniPoly, g: UniPoly) -> int:
    """Resultant of two integer polynomials (Sylvester + Bareiss)."""
    f = f.to_integer_coeffs()
    g = g.to_integer_coeffs()
    if f.is_zero() or g.is_zero():
        return 0
    if f.degree() == 0:
        return int(f.leading()) ** g.degree()
    if g.degree() == 0:
        return int(g.leading()) ** f.degree()
    return _bareiss_int_det(_sylvester_rows(f, g))


def poly_discriminant(f: UniPoly) -> int:
    """disc(f) = (-1)^(d(d-1)/2) * Res(f, f') / lc(f), for integer f, deg >= 2."""
    d = f.degree()
    if d < 2:
        raise ValueError("degree < 2")
    f = f.to_integer_coeffs()
    res = resultant(f, f.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    lead = int(f.leading())
    value = sign * res
    q, r = divmod(value, lead)
    if r:
        raise ArithmeticError("resultant not divisible by leading coefficient")
    return q


# ---------------------------------------------------------------------------
# Roots mod p
# ---------------------------------------------------------------------------


def _pm_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pm_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    rem = [x % p for x in a]
    _pm_trim(rem)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    quo = [0] * max(len(rem) - db, 0)
    for k in range(len(rem) - db - 1, -1, -1):
        q = rem[k + db] * inv % p
        if q:
            quo[k] = q
            for i, c in enumerate(b):
                rem[k + i] = (rem[k + i] - q * c) % p
    return _pm_trim(quo), _pm_trim(rem[:db])


def _pm_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _pm_trim([x % p for x in a])
    b = _pm_trim([x % p for x in b])
    while b:
        _, r = _pm_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _pm_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    _, r = _pm_divmod(out, mod, p)
    return r


def _pm_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _pm_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pm_mulmod(result, base, mod, p)
        base = _pm_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _pm_roots_of_split(h: list[int], p: int) -> list[int]:
    """All roots of h, given that h splits into distinct linear factors mod p.

    Deterministic shift sweep: split with gcd(h, (t+c)^((p-1)/2) - 1) for
    c = 0, 1, 2, ...; every squarefree split product separates within a few
    shifts in practice.  Loud failure beyond the cap.
    """
    deg = len(h) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [(-h[0] * pow(h[1], -1, p)) % p]
    half = (p - 1) // 2
    for c in range(_SPLIT_SHIFT_CAP):
        power = _pm_powmod([c % p, 1], half, h, p)
        power = _pm_trim([(x - (1 if i == 0 else 0)) % p for i, x in enumerate(power)] or [0])
        g = _pm_gcd(h, power, p)
        if 0 < len(g) - 1 < deg:
            other, rem = _pm_divmod(h, g, p)
            if rem:
                raise ArithmeticError("split factor does not divide")
            return sorted(_pm_roots_of_split(g, p) + _pm_roots_of_split(other, p))
    raise RuntimeError(f"root splitting failed after {_SPLIT_SHIFT_CAP} deterministic shifts")


def repeated_roots_mod_p(f: UniPoly, p: int) -> list[PrimeFieldElement]:
    """All roots in F_p of gcd(f mod p, f' mod p).

    Brute-force evaluation for p < 2^16, gcd ladder with t^p - t above.
    """
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    f = f.to_integer_coeffs()
    fp = _pm_trim([int(c) % p for c in f.coeffs])
    if not fp:
        raise ValueError("f is identically zero mod p")
    dfp = _pm_trim([k * c % p for k, c in enumerate(fp) if k > 0])
    if not dfp:
        # f' vanishes mod p (e.g. an inseparable power pattern): every root of
        # f mod p is repeated; fall through with g = f itself.
        g = fp
    else:
        g = _pm_gcd(fp, dfp, p)
    if len(g) - 1 <= 0:
        return []
    if p < BRUTE_FORCE_ROOT_LIMIT:
        roots = []
        for r in range(p):
            acc = 0
            for c in reversed(g):
                acc = (acc * r + c) % p
            if acc == 0:
                roots.append(r)
        return [PrimeFieldElement(r, p) for r in roots]
    # distinct-root part: gcd(g, t^p - t)
    tp = _pm_powmod([0, 1], p, g, p)
    tp_minus_t = _pm_trim([(c - (1 if i == 1 else 0)) % p for i, c in enumerate(tp + [0, 0][: max(0, 2 - len(tp))])])
    h = _pm_gcd(g, tp_minus_t, p)
    return [PrimeFieldElement(r, p) for r in _pm_roots_of_split(h, p)]
