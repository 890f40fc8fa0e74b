"""Exact complex numbers with rational real and imaginary parts.

The solver never touches floating point: every candidate value is a
GaussianRational, arithmetic is exact, and square roots are taken only
when they exist exactly in this domain.  Components are stored as plain
ints whenever they are integral, which keeps the common all-integer
arithmetic on the fast path.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from math import isqrt
from typing import Optional, Tuple, Union

Rational = Union[int, Fraction]


def _norm(q: Rational) -> Rational:
    """Collapse integral Fractions to ints; ints pass through untouched."""
    if type(q) is int:
        return q
    if q.denominator == 1:
        return q.numerator
    return q


def fraction_sqrt(q: Rational) -> Optional[Rational]:
    """Exact non-negative square root of q >= 0, or None if irrational."""
    if q < 0:
        raise ValueError("fraction_sqrt requires a non-negative argument")
    if type(q) is int:
        r = isqrt(q)
        return r if r * r == q else None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return _norm(Fraction(rn, rd))
    return None


class GaussianRational:
    """Immutable exact value re + im*i, with re and im rational."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        object.__setattr__(self, "re", _norm(re))
        object.__setattr__(self, "im", _norm(im))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        a, b, c, d = self.re, self.im, other.re, other.im
        if b == 0 and d == 0:
            return GaussianRational(a * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        c, d = other.re, other.im
        n = c * c + d * d
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        a, b = self.re, self.im
        return GaussianRational(
            Fraction(a * c + b * d) / n, Fraction(b * c - a * d) / n
        )

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, exponent: int) -> "GaussianRational":
        if exponent < 0:
            raise ValueError("negative powers are not used here")
        if self.im == 0:
            return GaussianRational(self.re**exponent)
        result = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GaussianRational)
            and self.re == other.re
            and self.im == other.im
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.re, self.im))
            object.__setattr__(self, "_hash", h)
        return h

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and type(self.re) is int

    def sort_key(self) -> Tuple[Fraction, Fraction]:
        """Total order on values, used for deterministic serialization."""
        return (self.re, self.im)

    def square(self) -> "GaussianRational":
        return self * self

    def exact_sqrts(self) -> Optional[Tuple["GaussianRational", ...]]:
        """All square roots that are themselves Gaussian rationals.

        Returns (0,) for zero, a (+w, -w) pair when the roots are exactly
        representable, and None when they are irrational.  None never means
        "no complex root exists", only "not representable here".
        """
        if self.is_zero():
            return (ZERO,)
        if self.im == 0:
            if self.re > 0:
                r = fraction_sqrt(self.re)
                if r is None:
                    return None
                w = GaussianRational(r)
            else:
                r = fraction_sqrt(-self.re)
                if r is None:
                    return None
                w = GaussianRational(0, r)
            return (w, -w)
        norm = self.re * self.re + self.im * self.im
        r = fraction_sqrt(norm)
        if r is None:
            return None
        # roots are +-(x + y*i) with x^2 = (re + |v|)/2 and y = im/(2x)
        x = fraction_sqrt(Fraction(self.re + r) / 2)
        if x is None:
            return None
        w = GaussianRational(x, Fraction(self.im) / 2 / x)
        return (w, -w)

    # -- formatting -------------------------------------------------------

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"


_TERM = _re.compile(r"([+-]?)(\d+(?:/\d+)?)?(i?)")


def parse_value(text: str) -> GaussianRational:
    """Parse a value string like "3", "-5/2", "2i", or "1+2i"."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty value string")
    re_part = Fraction(0)
    im_part = Fraction(0)
    pos = 0
    seen = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse value {text!r}")
        sign, digits, imag = m.groups()
        if digits is None and not imag:
            raise ValueError(f"cannot parse value {text!r}")
        q = Fraction(digits) if digits else Fraction(1)
        if sign == "-":
            q = -q
        if imag:
            im_part += q
        else:
            re_part += q
        seen = True
        pos = m.end()
    if not seen:
        raise ValueError(f"cannot parse value {text!r}")
    return GaussianRational(re_part, im_part)


def gauss(re: Rational = 0, im: Rational = 0) -> GaussianRational:
    """Shorthand constructor."""
    return GaussianRational(re, im)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
