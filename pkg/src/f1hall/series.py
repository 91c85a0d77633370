"""Truncated formal power series with Laurent-polynomial coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .laurent import LaurentPoly


class BadConstantTerm(ValueError):
    """exp needs constant term 0, log needs constant term 1."""


@dataclass(frozen=True)
class FormalSeries:
    var: str
    order: int
    coeffs: Tuple[LaurentPoly, ...]

    def __init__(self, var: str, order: int, coeffs: Sequence = ()):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = [c if isinstance(c, LaurentPoly) else LaurentPoly.const(c) for c in coeffs]
        cs = cs[: order + 1] + [LaurentPoly.zero()] * (order + 1 - len(cs))
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __getitem__(self, n: int) -> LaurentPoly:
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def _same(self, other: "FormalSeries") -> int:
        if self.var != other.var:
            raise ValueError(f"series in {self.var} and {other.var} cannot be combined")
        return min(self.order, other.order)

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        n = self._same(other)
        return FormalSeries(self.var, n, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        n = self._same(other)
        return FormalSeries(self.var, n, [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)])

    def __neg__(self) -> "FormalSeries":
        return FormalSeries(self.var, self.order, [-c for c in self.coeffs])

    def __mul__(self, other) -> "FormalSeries":
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return FormalSeries(self.var, self.order, [c * other for c in self.coeffs])
        n = self._same(other)
        out = []
        for k in range(n + 1):
            acc = LaurentPoly.zero()
            for i in range(k + 1):
                a, b = self.coeffs[i], other.coeffs[k - i]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return FormalSeries(self.var, n, out)

    __rmul__ = __mul__

    def inverse(self) -> "FormalSeries":
        """Multiplicative inverse; the constant term must be a unit monomial."""
        c0 = self.coeffs[0]
        if not c0.is_monomial():
            raise BadConstantTerm(f"constant term {c0} is not invertible")
        inv0 = c0.inverse_monomial()
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = LaurentPoly.zero()
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-(acc * inv0))
        return FormalSeries(self.var, self.order, out)

    def truncate(self, order: int) -> "FormalSeries":
        return FormalSeries(self.var, min(order, self.order), self.coeffs)

    def __str__(self) -> str:
        parts = [f"({c})*{self.var}^{n}" for n, c in enumerate(self.coeffs) if c]
        return (" + ".join(parts) or "0") + f" + O({self.var}^{self.order + 1})"


def polynomial_series(var: str, order: int, coeffs) -> FormalSeries:
    return FormalSeries(var, order, coeffs)


def geometric(var: str, order: int, ratio: LaurentPoly) -> FormalSeries:
    """1/(1 - ratio*var) truncated."""
    return FormalSeries(var, order, [ratio**n for n in range(order + 1)])


def series_exp(f: FormalSeries) -> FormalSeries:
    # n e_n = sum_{k=1}^n k f_k e_{n-k}
    if f.coeffs[0]:
        raise BadConstantTerm(f"exp needs constant term 0, got {f.coeffs[0]}")
    e = [LaurentPoly.one()]
    for n in range(1, f.order + 1):
        acc = LaurentPoly.zero()
        for k in range(1, n + 1):
            if f.coeffs[k]:
                acc = acc + f.coeffs[k] * e[n - k] * k
        e.append(acc.scale(Fraction(1, n)))
    return FormalSeries(f.var, f.order, e)


def series_log(f: FormalSeries) -> FormalSeries:
    # g_n = f_n - (1/n) sum_{k=1}^{n-1} k g_k f_{n-k}
    if f.coeffs[0] != LaurentPoly.one():
        raise BadConstantTerm(f"log needs constant term 1, got {f.coeffs[0]}")
    g = [LaurentPoly.zero()]
    for n in range(1, f.order + 1):
        acc = LaurentPoly.zero()
        for k in range(1, n):
            if g[k] and f.coeffs[n - k]:
                acc = acc + g[k] * f.coeffs[n - k] * k
        g.append(f.coeffs[n] - acc.scale(Fraction(1, n)))
    return FormalSeries(f.var, f.order, g)


def rational_series(var: str, order: int, numerator: Sequence, denominator: Sequence) -> FormalSeries:
    """Expansion of numerator(var)/denominator(var) given as coefficient lists."""
    num = FormalSeries(var, order, numerator)
    den = FormalSeries(var, order, denominator)
    return num * den.inverse()


__all__ = [
    "BadConstantTerm",
    "FormalSeries",
    "geometric",
    "polynomial_series",
    "rational_series",
    "series_exp",
    "series_log",
]
