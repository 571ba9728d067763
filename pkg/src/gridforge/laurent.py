"""Exact Laurent polynomials with integer coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

__all__ = ["LaurentPoly", "det_polynomial"]


class LaurentPoly:
    """Immutable sparse Laurent polynomial ``sum c_k * var^k``."""

    __slots__ = ("_terms", "var")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "t"):
        self._terms = {int(k): int(c) for k, c in (terms or {}).items() if c}
        self.var = var

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, var: str = "t") -> "LaurentPoly":
        return cls({exp: coeff}, var)

    @classmethod
    def const(cls, c: int, var: str = "t") -> "LaurentPoly":
        return cls({0: c}, var)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        return max(self._terms)

    def leading(self) -> int:
        return self._terms[self.max_exp]

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other, self.var)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self._terms.items()}, self.var)

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self + (-_coerce(other, self.var))

    def __rsub__(self, other: int) -> "LaurentPoly":
        return _coerce(other, self.var) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other, self.var)
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (k, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly({k * e: c ** abs(e)}, self.var)
        out = LaurentPoly.const(1, self.var)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self._terms.items()}, self.var)

    def invert(self) -> "LaurentPoly":
        """Substitute var -> 1/var."""
        return LaurentPoly({-k: c for k, c in self._terms.items()}, self.var)

    def substitute_power(self, p: int, var: str) -> "LaurentPoly":
        """Divide every exponent by ``p``, renaming the variable to ``var``."""
        out = {}
        for k, c in self._terms.items():
            if k % p:
                raise ValueError(f"exponent {k} not divisible by {p}")
            out[k // p] = c
        return LaurentPoly(out, var)

    def evaluate(self, x: int | Fraction) -> Fraction:
        return sum((Fraction(x) ** k * c for k, c in self._terms.items()), Fraction(0))

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises if ``other`` does not divide ``self``."""
        if other.is_zero():
            raise ZeroDivisionError
        rem = dict(self._terms)
        q: dict[int, int] = {}
        lead_k, lead_c = other.max_exp, other.leading()
        floor = self.min_exp - other.min_exp if rem else 0
        while rem:
            k = max(rem)
            c = rem[k]
            if c % lead_c or k - lead_k < floor:
                raise ValueError("inexact division")
            qk, qc = k - lead_k, c // lead_c
            q[qk] = qc
            for ok, oc in other._terms.items():
                v = rem.get(ok + qk, 0) - qc * oc
                if v:
                    rem[ok + qk] = v
                else:
                    rem.pop(ok + qk, None)
        return LaurentPoly(q, self.var)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            term = f"{abs(c)}*{self.var}^{k}"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self._terms!r}, var={self.var!r})"

    @classmethod
    def parse(cls, text: str, var: str = "t") -> "LaurentPoly":
        """Inverse of ``str`` for the ``c*t^k`` text form."""
        text = text.strip()
        if text == "0":
            return cls({}, var)
        tokens = text.replace("- ", "-").replace("+ ", "+").split()
        out = {}
        for tok in tokens:
            coeff, exp = tok.split(f"*{var}^")
            out[int(exp)] = out.get(int(exp), 0) + int(coeff)
        return cls(out, var)


def _coerce(x: "LaurentPoly | int", var: str) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x, var)


def _det_int(rows: list[list[int]]) -> int:
    """Fraction-free (Bareiss) integer determinant."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det_polynomial(matrix: Iterable[Iterable[Mapping[int, int]]], degree: int) -> LaurentPoly:
    """Determinant of a matrix of polynomials with exponents in ``0..1``.

    The determinant has degree at most ``degree``; it is evaluated at
    ``degree + 1`` integer points and recovered by exact interpolation.
    """
    mat = [list(r) for r in matrix]
    xs = list(range(degree + 1))
    ys = []
    for x in xs:
        ys.append(_det_int([[sum(c * x ** k for k, c in e.items()) for e in r] for r in mat]))
    # Newton divided differences over the rationals
    coef = [Fraction(y) for y in ys]
    for level in range(1, len(xs)):
        for i in range(len(xs) - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    poly = [Fraction(0)] * len(xs)
    # expand Newton form into monomial coefficients
    for i in range(len(xs) - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * len(xs)
        for k, c in enumerate(poly):
            if c:
                if k + 1 < len(new):
                    new[k + 1] += c
                new[k] -= c * xs[i]
        new[0] += coef[i]
        poly = new
    out = {}
    for k, c in enumerate(poly):
        if c.denominator != 1:
            raise ArithmeticError("interpolated determinant is not integral")
        if c:
            out[k] = int(c)
    return LaurentPoly(out)
