"""
Exact Laurent polynomials in one variable with integer coefficients.

Coefficients are Python ints, so arithmetic never overflows.  Values are
immutable and hashable, which lets them serve as dictionary keys in the
knot table.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = ["LaurentPolynomial"]


class LaurentPolynomial:
    __slots__ = ("_coeffs", "var", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = (), var: str = "t"):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[int, int] = {}
        for e, c in items:
            if int(e) != e or int(c) != c:
                raise ValueError(f"non-integer term {c}*{var}^{e}")
            clean[int(e)] = clean.get(int(e), 0) + int(c)
        self._coeffs = {e: c for e, c in sorted(clean.items()) if c}
        self.var = var
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c: int, var: str = "t") -> "LaurentPolynomial":
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, var: str = "t") -> "LaurentPolynomial":
        return cls({exp: coeff}, var)

    # -- accessors --------------------------------------------------------
    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._coeffs)

    def terms(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_exp(self) -> int:
        return next(iter(self._coeffs)) if self._coeffs else 0

    def max_exp(self) -> int:
        return next(reversed(self._coeffs)) if self._coeffs else 0

    def span(self) -> int:
        return self.max_exp() - self.min_exp()

    def __getitem__(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def __len__(self):
        return len(self._coeffs)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._coeffs.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._coeffs.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPolynomial({e * n: c ** (-n)}, self.var)
        result = LaurentPolynomial.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod_exact(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact division; raises ValueError if ``divisor`` does not divide ``self``."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPolynomial({}, self.var)
        rem = dict(self._coeffs)
        dtop = divisor.max_exp()
        dlead = divisor[dtop]
        quot: dict[int, int] = {}
        for qe in range(self.max_exp() - dtop, self.min_exp() - divisor.min_exp() - 1, -1):
            c = rem.get(qe + dtop, 0)
            if not c:
                continue
            if c % dlead:
                raise ValueError("inexact division")
            q = c // dlead
            quot[qe] = q
            for e, dc in divisor._coeffs.items():
                k = e + qe
                v = rem.get(k, 0) - q * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        if rem:
            raise ValueError("inexact division")
        return LaurentPolynomial(quot, self.var)

    # -- transformations --------------------------------------------------
    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by var**k."""
        return LaurentPolynomial({e + k: c for e, c in self._coeffs.items()}, self.var)

    def reflect(self) -> "LaurentPolynomial":
        """Substitute var -> 1/var."""
        return LaurentPolynomial({-e: c for e, c in self._coeffs.items()}, self.var)

    def rescale(self, num: int, den: int = 1, var: str | None = None) -> "LaurentPolynomial":
        """Substitute var -> new_var**(num/den); every resulting exponent must be integral."""
        out = {}
        for e, c in self._coeffs.items():
            q, r = divmod(e * num, den)
            if r:
                raise ValueError(f"exponent {e} does not map to an integer")
            out[q] = c
        return LaurentPolynomial(out, var or self.var)

    def __call__(self, x):
        """Evaluate at ``x`` (int, Fraction, float or complex)."""
        if isinstance(x, int) and any(e < 0 for e in self._coeffs):
            x = Fraction(x)
        total = 0
        for e, c in self._coeffs.items():
            total += c * x ** e
        return total

    def is_palindromic(self) -> bool:
        return self == self.reflect()

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def sort_key(self):
        return tuple(self._coeffs.items())

    # -- serialization ----------------------------------------------------
    def to_text(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"{c}*{self.var}^{e}" for e, c in self._coeffs.items())

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self._coeffs.items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, int], var: str = "t") -> "LaurentPolynomial":
        return cls({int(e): int(c) for e, c in obj.items()}, var)

    _TERM = re.compile(r"^\s*(-?\d+)\s*\*\s*([A-Za-z]\w*)\s*\^\s*(-?\d+)\s*$")

    @classmethod
    def from_text(cls, text: str) -> "LaurentPolynomial":
        text = text.strip()
        if text == "0":
            return cls()
        var = "t"
        out = []
        for term in text.split(" + "):
            m = cls._TERM.match(term)
            if not m:
                raise ValueError(f"cannot parse term {term!r}")
            out.append((int(m.group(3)), int(m.group(1))))
            var = m.group(2)
        return cls(out, var)

    def __repr__(self):
        return f"LaurentPolynomial({self.to_text()!r})"

    def __str__(self):
        return self.to_text()
