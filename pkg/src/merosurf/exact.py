"""Exact rational complex numbers.

All incidence decisions in the construction and census code are made on
these, so degenerate configurations (collinear corners, grazing segments)
are decided exactly.  Floating point enters only for angles and rendering.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rat = Fraction
RatLike = Union[int, str, Fraction]


def rat(x: RatLike) -> Fraction:
    """Coerce ints, Fractions and strings like '3/7' or '-2' to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def rat_str(x: Fraction) -> Union[int, str]:
    """JSON-friendly form: plain int when integral, else 'p/q'."""
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


class QQi:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RatLike = 0, im: RatLike = 0):
        object.__setattr__(self, "re", rat(re))
        object.__setattr__(self, "im", rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("QQi is immutable")

    def __add__(self, other: "QQi") -> "QQi":
        return QQi(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QQi") -> "QQi":
        return QQi(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QQi":
        return QQi(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, QQi):
            return QQi(self.re * other.re - self.im * other.im,
                       self.re * other.im + self.im * other.re)
        return QQi(self.re * rat(other), self.im * rat(other))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, QQi) and self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __repr__(self) -> str:
        return f"QQi({self.re}, {self.im})"

    def cross(self, other: "QQi") -> Fraction:
        """z x w = Re(z) Im(w) - Im(z) Re(w); sign decides left/right turns."""
        return self.re * other.im - self.im * other.re

    def dot(self, other: "QQi") -> Fraction:
        return self.re * other.re + self.im * other.im

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def perp(self) -> "QQi":
        """Rotation by +90 degrees (i*z)."""
        return QQi(-self.im, self.re)

    def angle(self) -> float:
        return math.atan2(float(self.im), float(self.re))

    def as_floats(self) -> tuple:
        return (float(self.re), float(self.im))


ZERO = QQi(0, 0)
ONE = QQi(1, 0)


def ccw_angle(a: QQi, b: QQi) -> float:
    """Angle swept rotating a counterclockwise onto b, in [0, 2*pi).

    Exact for the collinear cases (0 and pi) so that flat corners never
    suffer rounding; a or b must be nonzero.
    """
    c = a.cross(b)
    d = a.dot(b)
    if c == 0:
        if d > 0:
            return 0.0
        if d < 0:
            return math.pi
        raise ZeroDivisionError("ccw_angle of a zero vector")
    ang = math.atan2(float(c), float(d))
    if ang < 0:
        ang += 2 * math.pi
    return ang


class Eps:
    """Dual number a + b*eps over the rationals, eps infinitesimal > 0.

    Comparisons are lexicographic in (a, b), i.e. evaluated at eps -> 0+.
    Used for exact symbolic perturbation in the cylinder trace.
    """

    __slots__ = ("a", "b")

    def __init__(self, a: RatLike = 0, b: RatLike = 0):
        self.a = rat(a)
        self.b = rat(b)

    def __add__(self, other: "Eps") -> "Eps":
        return Eps(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Eps") -> "Eps":
        return Eps(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "Eps":
        return Eps(-self.a, -self.b)

    def scale(self, k: Fraction) -> "Eps":
        return Eps(self.a * k, self.b * k)

    def key(self):
        return (self.a, self.b)

    def __lt__(self, other):
        return self.key() < other.key()

    def __le__(self, other):
        return self.key() <= other.key()

    def __eq__(self, other):
        return isinstance(other, Eps) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Eps({self.a}, {self.b})"
