"""Sparse multivariate polynomials with integer coefficients."""

from __future__ import annotations


class MultiPoly:
    """Immutable sparse polynomial: exponent tuples (fixed arity) -> int coeff."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms=None):
        clean = {}
        for exps, c in (terms or {}).items():
            if c == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != arity:
                raise ValueError("exponent vector arity mismatch")
            clean[exps] = clean.get(exps, 0) + c
        clean = {e: c for e, c in clean.items() if c != 0}
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, arity: int) -> "MultiPoly":
        return cls(arity, {})

    @classmethod
    def constant(cls, c: int, arity: int) -> "MultiPoly":
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def variable(cls, index: int, arity: int) -> "MultiPoly":
        exps = [0] * arity
        exps[index] = 1
        return cls(arity, {tuple(exps): 1})

    # -- structure ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        items = sorted(self.terms.items())
        return f"MultiPoly({self.arity}, {dict(items)!r})"

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other
        if isinstance(other, int):
            return MultiPoly.constant(other, self.arity)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.arity, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return MultiPoly(self.arity, out)

    __rmul__ = __mul__

    # -- calculus and evaluation -----------------------------------------
    def derivative(self, index: int) -> "MultiPoly":
        out: dict[tuple[int, ...], int] = {}
        for e, c in self.terms.items():
            k = e[index]
            if k == 0:
                continue
            ne = list(e)
            ne[index] = k - 1
            key = tuple(ne)
            out[key] = out.get(key, 0) + k * c
        return MultiPoly(self.arity, out)

    def evaluate(self, point) -> int:
        """Exact evaluation at an integer (or Fraction) point."""
        if len(point) != self.arity:
            raise ValueError("point arity mismatch")
        total = 0
        for e, c in self.terms.items():
            term = c
            for value, exp in zip(point, e):
                if exp == 0:
                    continue
                if exp == 1:
                    term = term * value
                else:
                    term = term * value**exp
            total = total + term
        return total

    def evaluate_mod(self, point, p: int) -> int:
        return int(self.evaluate([int(v) % p for v in point])) % p
