"""Exact Gaussian-rational scalars.

Every number in the package is an element of Q(i): a rational real part plus a
rational imaginary part.  `fractions.Fraction` keeps both parts in lowest terms
with positive denominators, so equality is structural and arithmetic is exact.

Text grammar (used by every file format): ``"p/q"`` for rationals (``/q``
omitted when the denominator is 1) and ``"p/q+r/s i"`` for complex values.
Whitespace is insignificant and signs are allowed on both parts.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError

_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(rf"^({_RAT})?(({_RAT})i)?$")
_F0 = Fraction(0)


class Scalar:
    """An immutable Gaussian rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def _make(re: Fraction, im: Fraction) -> Scalar:
        s = object.__new__(Scalar)
        object.__setattr__(s, "re", re)
        object.__setattr__(s, "im", im)
        return s

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Scalar) -> Scalar:
        return Scalar._make(self.re + other.re, self.im + other.im)

    def __sub__(self, other: Scalar) -> Scalar:
        return Scalar._make(self.re - other.re, self.im - other.im)

    def __neg__(self) -> Scalar:
        return Scalar._make(-self.re, -self.im)

    def __mul__(self, other: Scalar) -> Scalar:
        if self.im == 0 and other.im == 0:
            return Scalar._make(self.re * other.re, _F0)
        return Scalar._make(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: Scalar) -> Scalar:
        if self.im == 0 and other.im == 0:
            if other.re == 0:
                raise ZeroDivisionError("division by zero Scalar")
            return Scalar._make(self.re / other.re, _F0)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar._make(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def conjugate(self) -> Scalar:
        if self.im == 0:
            return self
        return Scalar._make(self.re, -self.im)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def sort_key(self) -> tuple[Fraction, Fraction]:
        """Total order on scalars used only for deterministic tie-breaking."""
        return (self.re, self.im)

    # -- text grammar -------------------------------------------------------

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        im_txt = str(self.im) if self.im < 0 else "+" + str(self.im)
        return f"{self.re}{im_txt} i"

    def __repr__(self) -> str:
        return f"Scalar({self!s})"

    @staticmethod
    def parse(text: str) -> Scalar:
        compact = re.sub(r"\s+", "", text)
        if not compact:
            raise InputError(f"empty scalar literal {text!r}")
        m = _SCALAR_RE.match(compact)
        if m is None or (m.group(1) is None and m.group(2) is None):
            raise InputError(f"malformed scalar literal {text!r}")
        try:
            re_part = Fraction(m.group(1)) if m.group(1) else Fraction(0)
            im_part = Fraction(m.group(3)) if m.group(2) else Fraction(0)
        except ZeroDivisionError:
            raise InputError(f"zero denominator in scalar literal {text!r}") from None
        return Scalar(re_part, im_part)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
