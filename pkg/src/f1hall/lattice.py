"""Integer geometry of Z^2: determinants, gcds, empty triangles, SL(2,Z)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple


class ZeroVector(ValueError):
    pass


class DegenerateTriangle(ValueError):
    pass


class LatticeVec(NamedTuple):
    r: int
    d: int

    def __add__(self, other) -> "LatticeVec":  # type: ignore[override]
        return LatticeVec(self.r + other[0], self.d + other[1])

    def __neg__(self) -> "LatticeVec":
        return LatticeVec(-self.r, -self.d)

    def __sub__(self, other) -> "LatticeVec":
        return LatticeVec(self.r - other[0], self.d - other[1])

    def scale(self, k: int) -> "LatticeVec":
        return LatticeVec(k * self.r, k * self.d)

    def is_zero(self) -> bool:
        return self.r == 0 and self.d == 0

    def __str__(self) -> str:
        return f"({self.r},{self.d})"


def vec(x) -> LatticeVec:
    if isinstance(x, LatticeVec):
        return x
    r, d = x
    return LatticeVec(int(r), int(d))


def nonzero(x) -> LatticeVec:
    x = vec(x)
    if x.r == 0 and x.d == 0:
        raise ZeroVector("the zero vector is not allowed here")
    return x


def det2(x, y) -> int:
    return x[0] * y[1] - x[1] * y[0]


def gcd_vec(x) -> int:
    x = nonzero(x)
    return math.gcd(x.r, x.d)


def primitive(x) -> LatticeVec:
    x = nonzero(x)
    g = math.gcd(x.r, x.d)
    return LatticeVec(x.r // g, x.d // g)


def is_parallel(x, y) -> bool:
    nonzero(x)
    nonzero(y)
    return det2(x, y) == 0


def _triangle(x, y):
    x, y = nonzero(x), nonzero(y)
    if det2(x, y) == 0:
        raise DegenerateTriangle(f"{x} and {y} are parallel")
    return x, y


def interior_points(x, y) -> int:
    """Lattice points strictly inside the triangle (0, x, x+y), by Pick's theorem."""
    x, y = _triangle(x, y)
    area = Fraction(abs(det2(x, y)), 2)
    boundary = gcd_vec(x) + gcd_vec(y) + gcd_vec(x + y)
    count = area - Fraction(boundary, 2) + 1
    assert count.denominator == 1 and count >= 0
    return int(count)


def interior_points_scan(x, y) -> int:
    """Brute-force count of lattice points strictly inside (0, x, x+y)."""
    x, y = _triangle(x, y)
    a, b, c = LatticeVec(0, 0), x, x + y
    orient = det2(b - a, c - a)
    sign = 1 if orient > 0 else -1
    xs = (a.r, b.r, c.r)
    ds = (a.d, b.d, c.d)
    count = 0
    for pr in range(min(xs), max(xs) + 1):
        for pd in range(min(ds), max(ds) + 1):
            p = LatticeVec(pr, pd)
            if (
                sign * det2(b - a, p - a) > 0
                and sign * det2(c - b, p - b) > 0
                and sign * det2(a - c, p - c) > 0
            ):
                count += 1
    return count


def epsilon(x, y) -> int:
    x, y = _triangle(x, y)
    return 1 if det2(x, y) > 0 else -1


# -- PBW total order ------------------------------------------------------


def _quadrant(x: LatticeVec) -> int:
    r, d = x
    if r > 0 and d >= 0:
        return 0
    if r <= 0 and d > 0:
        return 1
    if r < 0 and d <= 0:
        return 2
    return 3


def order_key(x):
    """Sort key for the PBW order: ray angle in [0, 2pi), then gcd ascending.

    Within a quadrant the angle is monotone in an exact rational slope, so no
    floating point enters the comparison.
    """
    x = nonzero(x)
    r, d = x
    q = _quadrant(x)
    if q == 0:
        slope = Fraction(d, r)
    elif q == 1:
        slope = Fraction(-r, d)
    elif q == 2:
        slope = Fraction(d, r)
    else:
        slope = Fraction(r, -d)
    return (q, slope, math.gcd(r, d))


# -- SL(2, Z) ---------------------------------------------------------------


class SL2Matrix(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def checked(cls, a: int, b: int, c: int, d: int) -> "SL2Matrix":
        if a * d - b * c != 1:
            raise ValueError(f"determinant of [[{a},{b}],[{c},{d}]] is not 1")
        return cls(a, b, c, d)

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        a, b, c, d = self
        e, f, g, h = other
        return SL2Matrix(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "SL2Matrix":
        a, b, c, d = self
        return SL2Matrix(d, -b, -c, a)

    def transpose(self) -> "SL2Matrix":
        a, b, c, d = self
        return SL2Matrix(a, c, b, d)

    def __pow__(self, k: int) -> "SL2Matrix":
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out @ base
        return out

    def det(self) -> int:
        return self.a * self.d - self.b * self.c


def sl2_apply(g: SL2Matrix, x) -> LatticeVec:
    r, d = x
    return LatticeVec(g.a * r + g.b * d, g.c * r + g.d * d)


IDENTITY = SL2Matrix(1, 0, 0, 1)
# (r, d) -> (d, -r)
S_MATRIX = SL2Matrix(0, 1, -1, 0)
# (r, d) -> (r, d + r)
T_MATRIX = SL2Matrix(1, 0, 1, 1)
# generator of the Z-action on the fan of the Tate curve; the transpose of T_MATRIX
Z_SHIFT = SL2Matrix(1, 1, 0, 1)


def sl2_word(word: str) -> SL2Matrix:
    """Multiply out a word in the letters S, T, s (= S^-1), t (= T^-1)."""
    table = {"S": S_MATRIX, "T": T_MATRIX, "s": S_MATRIX.inverse(), "t": T_MATRIX.inverse()}
    out = IDENTITY
    for ch in word:
        out = out @ table[ch]
    return out
