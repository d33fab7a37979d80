"""Exact complex-rational scalars.

Values are pairs of :class:`fractions.Fraction`. Only the operations the
function layer needs are provided; there is no division by non-real values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Number = Union[int, Fraction, "Scalar"]


class Scalar:
    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction | str = 0, im: int | Fraction = 0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value: Number | str) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, complex):
            raise TypeError("complex floats are not exact; pass a string instead")
        if isinstance(value, float):
            return cls(Fraction(value))
        return cls(Fraction(value))

    @classmethod
    def parse(cls, text: str) -> Scalar:
        """Parse ``"3/4"``, ``"-1/2+1/3i"``, ``"0.25"``, ``"2i"`` and friends."""
        s = text.replace(" ", "")
        try:
            if not s or s[-1] not in "ij":
                return cls(Fraction(s))
            body = s[:-1]
            cut = 0
            for pos in range(len(body) - 1, 0, -1):
                if body[pos] in "+-" and body[pos - 1] not in "eE":
                    cut = pos
                    break
            real_txt, imag_txt = body[:cut], body[cut:]
            if imag_txt in ("", "+", "-"):
                imag_txt += "1"
            return cls(Fraction(real_txt) if real_txt else 0, Fraction(imag_txt))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not an exact scalar: {text!r}") from None

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        im = f"{abs(self.im)}i" if abs(self.im) != 1 else "i"
        if self.re == 0:
            return ("-" if self.im < 0 else "") + im
        return f"{self.re}{'-' if self.im < 0 else '+'}{im}"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __neg__(self) -> Scalar:
        return Scalar(-self.re, -self.im)

    def __add__(self, other: Number) -> Scalar:
        o = Scalar.coerce(other)
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Number) -> Scalar:
        o = Scalar.coerce(other)
        if not (o.re or o.im):
            return self
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Number) -> Scalar:
        return Scalar.coerce(other) - self

    def __mul__(self, other: Number) -> Scalar:
        o = Scalar.coerce(other)
        if not (self.re or self.im) or not (o.re or o.im):
            return ZERO
        if not self.im and not o.im:
            return Scalar(self.re * o.re)
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> Scalar:
        return Scalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> Fraction | float:
        return exact_sqrt(self.abs2())

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


def _isqrt_exact(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


def exact_sqrt(q: Fraction) -> Fraction | float:
    """Square root of a non-negative rational, exact when it is rational."""
    if q < 0:
        raise ValueError("negative argument")
    num = _isqrt_exact(q.numerator)
    den = _isqrt_exact(q.denominator)
    if num is not None and den is not None:
        return Fraction(num, den)
    return math.sqrt(q)


ZERO = Scalar(0)
ONE = Scalar(1)
