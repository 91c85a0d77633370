"""alpha_n, theta polynomials, the t -> q limit, and Weil/zeta identities.

Generic coefficients live in Z[sigma^{+-1}, tau^{+-1}] with q = sigma^2 and
t = tau^2; after the t = q specialization everything is a Laurent polynomial
in s = q^{1/2}.  The symbols u_{nz} are handled as formal variables ``u<n>``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from .laurent import LaurentPoly, exact_divide, specialize
from .series import FormalSeries, rational_series, series_exp, series_log

SIGMA = LaurentPoly.var("sigma")
TAU = LaurentPoly.var("tau")
S = LaurentPoly.var("s")
ONE = LaurentPoly.one()

Q = SIGMA**2
T = TAU**2
P = Q * T**-1  # p = q/t

# t -> q, then q^{1/2} -> s
TO_T_EQUALS_Q = {"tau": SIGMA}
TO_S = {"sigma": S, "tau": S}


def q_pow(n: int) -> LaurentPoly:
    return SIGMA ** (2 * n)


def t_pow(n: int) -> LaurentPoly:
    return TAU ** (2 * n)


def at_t_equals_q(a: LaurentPoly) -> LaurentPoly:
    return specialize(specialize(a, TO_T_EQUALS_Q), {"sigma": S})


@lru_cache(maxsize=None)
def alpha(n: int) -> LaurentPoly:
    if n < 1:
        raise ValueError("alpha_n needs n >= 1")
    return ((ONE - q_pow(n)) * (ONE - t_pow(-n)) * (ONE - q_pow(n) * t_pow(-n))).scale(Fraction(1, n))


def quantum_int(k: int) -> LaurentPoly:
    """Balanced quantum integer [k]_s = (s^k - s^-k)/(s - s^-1)."""
    return exact_divide(S**k - S**-k, S - S**-1)


# -- theta polynomials -------------------------------------------------------

# monomial in the u-symbols: sorted tuple of (n, multiplicity)
UMonomial = Tuple[Tuple[int, int], ...]


class ThetaPoly:
    """Polynomial in the symbols u_{nz} with (sigma, tau)-Laurent coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[UMonomial, LaurentPoly]):
        self.terms = {m: c for m, c in terms.items() if c}

    def weight(self, mono: UMonomial) -> int:
        return sum(n * k for n, k in mono)

    def __eq__(self, other) -> bool:
        return isinstance(other, ThetaPoly) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"ThetaPoly({self})"

    def __str__(self) -> str:
        parts = []
        for mono in sorted(self.terms):
            u = "*".join(f"u{n}" if k == 1 else f"u{n}^{k}" for n, k in mono)
            parts.append(f"({self.terms[mono]})*{u}")
        return " + ".join(parts) or "0"

    def to_json(self) -> list:
        return [
            {"monomial": [[n, k] for n, k in mono], "coeff": self.terms[mono].to_json()}
            for mono in sorted(self.terms)
        ]


def _u(n: int) -> str:
    return f"u{n}"


def theta_generating_series(order: int) -> FormalSeries:
    """exp(sum_{n<=order} alpha_n u_n w^n), with u_n formal variables."""
    arg = [LaurentPoly.zero()] + [alpha(n) * LaurentPoly.var(_u(n)) for n in range(1, order + 1)]
    return series_exp(FormalSeries("w", order, arg))


def _split_u(poly: LaurentPoly) -> Dict[UMonomial, LaurentPoly]:
    out: Dict[UMonomial, LaurentPoly] = {}
    upos = [(i, int(v[1:])) for i, v in enumerate(poly.vars) if v.startswith("u")]
    rest = [(i, v) for i, v in enumerate(poly.vars) if not v.startswith("u")]
    for e, c in poly.terms.items():
        mono = tuple(sorted((n, e[i]) for i, n in upos if e[i]))
        coeff = LaurentPoly.monomial({v: e[i] for i, v in rest}, c) if rest else LaurentPoly.const(c)
        out[mono] = out.get(mono, LaurentPoly.zero()) + coeff
    return out


@lru_cache(maxsize=None)
def theta_poly(k: int) -> ThetaPoly:
    """Coefficient of w^k in exp(sum_n alpha_n u_{nz} w^n)."""
    if k < 1:
        raise ValueError("theta_{kz} needs k >= 1")
    return ThetaPoly(_split_u(theta_generating_series(k)[k]))


def alpha_ratio_limit(k: int) -> LaurentPoly:
    """lim_{t->q} alpha_k/alpha_1, as a Laurent polynomial in s.

    Each of the three factors of alpha_k is divided exactly by the matching
    factor of alpha_1 before setting t = q, resolving the removable 0/0.
    """
    if k < 1:
        raise ValueError("k >= 1 required")
    f1 = exact_divide(ONE - q_pow(k), ONE - Q)
    f2 = exact_divide(ONE - t_pow(-k), ONE - t_pow(-1))
    f3 = exact_divide(ONE - P**k, ONE - P)
    return at_t_equals_q((f1 * f2 * f3).scale(Fraction(1, k)))


def theta_limit_report(k: int) -> Dict[str, object]:
    """Check the t -> q behaviour of theta_{kz}/alpha_1 monomial by monomial.

    Multi-factor monomials must carry coefficients divisible by (1 - q/t)^2,
    so they vanish after dividing by alpha_1 and setting t = q; the single
    factor monomial u_k carries alpha_k, whose ratio limit is [k]_s^2.
    """
    th = theta_poly(k)
    vanishing = (ONE - P) ** 2
    multi_ok = True
    for mono, c in th.terms.items():
        if sum(m for _, m in mono) >= 2:
            try:
                exact_divide(c, vanishing)
            except ArithmeticError:
                multi_ok = False
    single = th.terms.get(((k, 1),))
    single_ok = single == alpha(k)
    limit = alpha_ratio_limit(k)
    return {
        "k": k,
        "multi_factor_divisible": multi_ok,
        "single_factor_is_alpha": single_ok,
        "limit": limit,
        "limit_is_qint_squared": limit == quantum_int(k) ** 2,
    }


# -- Weil numbers and zeta ---------------------------------------------------


def weil_count(n: int) -> LaurentPoly:
    """N_n = 1 + p^n - q^n - t^-n."""
    if n < 1:
        raise ValueError("n >= 1 required")
    return ONE + P**n - q_pow(n) - t_pow(-n)


def weil_count_from_zeta(order: int):
    """n * [z^n] log of (1-qz)(1-z/t)/((1-z)(1-pz)), for n = 1..order."""
    num = FormalSeries("z", order, [ONE, -Q]) * FormalSeries("z", order, [ONE, -t_pow(-1)])
    den = FormalSeries("z", order, [ONE, -ONE]) * FormalSeries("z", order, [ONE, -P])
    logz = series_log(num * den.inverse())
    return [logz[n] * n for n in range(1, order + 1)]


def tate_zeta_series(order: int) -> FormalSeries:
    """(1 - qz)(1 - z/q)/(1 - z)^2 expanded in z, with q = s^2."""
    q = S**2
    num = [ONE, -(q + q**-1), ONE]
    den = [ONE, LaurentPoly.const(-2), ONE]
    return rational_series("z", order, num, den)


def tate_point_exp(order: int) -> FormalSeries:
    """exp(sum_{n<=order} (2 - q^n - q^-n) z^n / n), with q = s^2."""
    arg = [LaurentPoly.zero()] + [
        (2 - S ** (2 * n) - S ** (-2 * n)).scale(Fraction(1, n)) for n in range(1, order + 1)
    ]
    return series_exp(FormalSeries("z", order, arg))


def zeta_check(order: int) -> bool:
    if order < 1:
        raise ValueError("order >= 1 required")
    return tate_zeta_series(order) == tate_point_exp(order)
