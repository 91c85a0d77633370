"""The elliptic Hall algebra at t = q in its PBW normal form.

Elements are finite combinations of ordered monomials w_{x_1}^{m_1} ... w_{x_k}^{m_k}
with x_1 > ... > x_k in the PBW order of :func:`f1hall.lattice.order_key`, and
coefficients in Z[s^{+-1}] (q = s^2).  Products are normalized by rewriting
out-of-order adjacent pairs with

    w_x w_y = w_y w_x + [w_x, w_y],   [w_x, w_y] = (s^D - s^-D) w_{x+y},  D = det(x, y),

and [w_x, w_y] = 0 for parallel x, y.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .lattice import (
    LatticeVec,
    SL2Matrix,
    det2,
    epsilon,
    gcd_vec,
    interior_points,
    is_parallel,
    nonzero,
    order_key,
    sl2_apply,
    vec,
)
from .laurent import LaurentPoly, NotDivisible, exact_divide

S = LaurentPoly.var("s")
ONE = LaurentPoly.one()
ZERO = LaurentPoly.zero()

Word = Tuple[LatticeVec, ...]
PBWMonomial = Tuple[Tuple[LatticeVec, int], ...]


class PreconditionViolated(ValueError):
    pass


class RewriteError(AssertionError):
    """A rewrite step failed to decrease the termination measure."""


def sbracket(n: int) -> LaurentPoly:
    """s^n - s^-n."""
    if n == 0:
        return ZERO
    return LaurentPoly._raw(("s",), {(n,): Fraction(1), (-n,): Fraction(-1)})


def u_to_w(x) -> LaurentPoly:
    """Scalar c with w_x = c * u_x, namely s^d - s^-d for d = gcd(x)."""
    return sbracket(gcd_vec(x))


# -- words and monomials -----------------------------------------------------


def word_of(mono: PBWMonomial) -> Word:
    out: List[LatticeVec] = []
    for x, m in mono:
        out.extend([x] * m)
    return tuple(out)


def monomial_of(word: Sequence[LatticeVec]) -> PBWMonomial:
    """Collapse a word that is already in descending order."""
    out: List[Tuple[LatticeVec, int]] = []
    for x in word:
        if out and out[-1][0] == x:
            out[-1] = (x, out[-1][1] + 1)
        else:
            out.append((x, 1))
    return tuple(out)


def _keys(word: Word):
    return [order_key(x) for x in word]


def inversions(word: Word) -> int:
    ks = _keys(word)
    return sum(1 for i in range(len(ks)) for j in range(i + 1, len(ks)) if ks[i] < ks[j])


def is_ordered(word: Word) -> bool:
    ks = _keys(word)
    return all(ks[i] >= ks[i + 1] for i in range(len(ks) - 1))


def mono_grade(mono: PBWMonomial) -> LatticeVec:
    r = d = 0
    for x, m in mono:
        r += m * x.r
        d += m * x.d
    return LatticeVec(r, d)


def mono_str(mono: PBWMonomial) -> str:
    if not mono:
        return "1"
    return "·".join(f"w{x}" if m == 1 else f"w{x}^{m}" for x, m in mono)


# -- elements --------------------------------------------------------------


class EHAElement:
    """Immutable combination of PBW monomials with coefficients in Z[s^{+-1}]."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PBWMonomial, LaurentPoly] | None = None):
        self.terms: Dict[PBWMonomial, LaurentPoly] = {
            m: c for m, c in (terms or {}).items() if c
        }

    @classmethod
    def scalar(cls, c) -> "EHAElement":
        c = c if isinstance(c, LaurentPoly) else LaurentPoly.const(c)
        return cls({(): c})

    @classmethod
    def generator(cls, x) -> "EHAElement":
        x = nonzero(x)
        return cls({((x, 1),): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = EHAElement.scalar(other)
        if not isinstance(other, EHAElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "EHAElement":
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return EHAElement(out)

    __radd__ = __add__

    def __neg__(self) -> "EHAElement":
        return EHAElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "EHAElement":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "EHAElement":
        return _coerce(other) - self

    def __mul__(self, other) -> "EHAElement":
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        return multiply(self, _coerce(other))

    def __rmul__(self, other) -> "EHAElement":
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "EHAElement":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = EHAElement.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "EHAElement":
        c = c if isinstance(c, LaurentPoly) else LaurentPoly.const(c)
        return EHAElement({m: v * c for m, v in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_sort_key(t[0]))

    def __repr__(self) -> str:
        return f"EHAElement({self})"

    def __str__(self) -> str:
        return format_element(self)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"mono": [[[x.r, x.d], m] for x, m in mono], "coeff": c.to_json()}
                for mono, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EHAElement":
        out: Dict[PBWMonomial, LaurentPoly] = {}
        for t in data["terms"]:
            word: List[LatticeVec] = []
            for (r, d), m in t["mono"]:
                word.extend([nonzero((r, d))] * m)
            elt = pbw_normal_form(word, LaurentPoly.from_json(t["coeff"]))
            for m, c in elt.terms.items():
                out[m] = out.get(m, ZERO) + c
        return cls(out)


def _coerce(x) -> EHAElement:
    if isinstance(x, EHAElement):
        return x
    if isinstance(x, (int, Fraction, LaurentPoly)):
        return EHAElement.scalar(x)
    raise TypeError(f"cannot use {x!r} as an algebra element")


def _mono_sort_key(mono: PBWMonomial):
    # longest monomials first, then larger factors first in the PBW order
    factors = []
    for x, m in mono:
        q, slope, g = order_key(x)
        factors.append((-q, -slope, -g, -m))
    return (-sum(m for _, m in mono), factors)


def _coeff_str(c: LaurentPoly) -> str:
    text = str(c)
    if len(c.terms) > 1:
        return f"({text})"
    return text


def format_element(a: EHAElement) -> str:
    """Canonical text form, readable back by :mod:`f1hall.parser`."""
    if not a.terms:
        return "0"
    pieces = []
    for mono, c in a.sorted_terms():
        if not mono:
            body = _coeff_str(c)
            neg = False
            if len(c.terms) == 1:
                ((_, v),) = c.terms.items()
                if v < 0:
                    neg, body = True, _coeff_str(-c)
        else:
            neg = False
            if len(c.terms) == 1:
                ((_, v),) = c.terms.items()
                if v < 0:
                    neg, c = True, -c
            body = mono_str(mono) if c == ONE else f"{_coeff_str(c)}·{mono_str(mono)}"
        pieces.append((neg, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


# -- bracket and normal form -----------------------------------------------


_bracket_lock = threading.Lock()
_bracket_cache: Dict[Tuple[LatticeVec, LatticeVec], Tuple[LaurentPoly, LatticeVec] | None] = {}


def _bracket_data(x: LatticeVec, y: LatticeVec):
    key = (x, y)
    hit = _bracket_cache.get(key, False)
    if hit is not False:
        return hit
    D = det2(x, y)
    val = None if D == 0 else (sbracket(D), x + y)
    with _bracket_lock:
        _bracket_cache[key] = val
    return val


def bracket_w(x, y) -> EHAElement:
    x, y = nonzero(x), nonzero(y)
    data = _bracket_data(x, y)
    if data is None:
        return EHAElement()
    c, z = data
    return EHAElement({((z, 1),): c})


class _NormalForm:
    """Memoized word -> normal form map for one rewriting strategy."""

    def __init__(self, strategy: str, check_measure: bool = False):
        if strategy not in ("left", "right"):
            raise ValueError(f"unknown strategy {strategy!r}")
        self.strategy = strategy
        self.check_measure = check_measure
        self.cache: Dict[Word, Dict[PBWMonomial, LaurentPoly]] = {}
        self.lock = threading.Lock()

    def _find(self, keys) -> int:
        n = len(keys)
        idx = range(n - 1) if self.strategy == "left" else range(n - 2, -1, -1)
        for i in idx:
            if keys[i] < keys[i + 1]:
                return i
        return -1

    def __call__(self, word: Word) -> Dict[PBWMonomial, LaurentPoly]:
        hit = self.cache.get(word)
        if hit is not None:
            return hit
        keys = _keys(word)
        i = self._find(keys)
        if i < 0:
            result = {monomial_of(word): ONE}
        else:
            x, y = word[i], word[i + 1]
            swapped = word[:i] + (y, x) + word[i + 2 :]
            pieces = [(swapped, ONE)]
            data = _bracket_data(x, y)
            if data is not None:
                c, z = data
                pieces.append((word[:i] + (z,) + word[i + 2 :], c))
            if self.check_measure:
                before = (len(word), inversions(word))
                for w, _ in pieces:
                    after = (len(w), inversions(w))
                    if not after < before:
                        raise RewriteError(f"measure did not decrease: {before} -> {after}")
            result = {}
            for w, c in pieces:
                for m, v in self(w).items():
                    acc = result.get(m)
                    nv = v if c is ONE else v * c
                    result[m] = nv if acc is None else acc + nv
            result = {m: v for m, v in result.items() if v}
        with self.lock:
            self.cache[word] = result
        return result


_STRATEGIES = {"left": _NormalForm("left"), "right": _NormalForm("right")}


def normal_form_engine(strategy: str = "left", check_measure: bool = False) -> _NormalForm:
    if check_measure:
        return _NormalForm(strategy, check_measure=True)
    return _STRATEGIES[strategy]


def pbw_normal_form(word: Iterable, scalar=1, strategy: str = "left", check_measure: bool = False) -> EHAElement:
    """Normal form of scalar * w_{x_1} ... w_{x_n}."""
    word = tuple(nonzero(x) for x in word)
    scalar = scalar if isinstance(scalar, LaurentPoly) else LaurentPoly.const(scalar)
    nf = normal_form_engine(strategy, check_measure)
    return EHAElement({m: c * scalar for m, c in nf(word).items()})


def multiply(a: EHAElement, b: EHAElement, strategy: str = "left") -> EHAElement:
    nf = normal_form_engine(strategy)
    out: Dict[PBWMonomial, LaurentPoly] = {}
    for ma, ca in a.terms.items():
        wa = word_of(ma)
        for mb, cb in b.terms.items():
            cab = ca * cb
            for m, v in nf(wa + word_of(mb)).items():
                acc = out.get(m)
                out[m] = v * cab if acc is None else acc + v * cab
    return EHAElement(out)


def commutator(a: EHAElement, b: EHAElement) -> EHAElement:
    return multiply(a, b) - multiply(b, a)


def w(r: int, d: int) -> EHAElement:
    return EHAElement.generator((r, d))


def grade(a: EHAElement) -> Dict[LatticeVec, EHAElement]:
    parts: Dict[LatticeVec, Dict[PBWMonomial, LaurentPoly]] = {}
    for m, c in a.terms.items():
        parts.setdefault(mono_grade(m), {})[m] = c
    return {g: EHAElement(t) for g, t in parts.items()}


def sl2_act(g: SL2Matrix, a: EHAElement) -> EHAElement:
    """Relabel w_x -> w_{g x} generator-wise and renormalize."""
    nf = normal_form_engine("left")
    out: Dict[PBWMonomial, LaurentPoly] = {}
    for m, c in a.terms.items():
        image = tuple(sl2_apply(g, x) for x in word_of(m))
        for mm, v in nf(image).items():
            out[mm] = out.get(mm, ZERO) + v * c
    return EHAElement(out)


def jacobiator(x, y, z) -> EHAElement:
    wx, wy, wz = (EHAElement.generator(v) for v in (x, y, z))
    return (
        commutator(wx, commutator(wy, wz))
        + commutator(wy, commutator(wz, wx))
        + commutator(wz, commutator(wx, wy))
    )


# -- u-basis elements ---------------------------------------------------------


class Scaled:
    """A fraction ``num / den`` with ``num`` an element and ``den`` in Z[s^{+-1}].

    u-basis elements u_x = w_x / (s^d - s^-d) are carried this way so that
    all stored coefficients stay Laurent; :meth:`to_element` divides exactly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: EHAElement, den: LaurentPoly = ONE):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def lift(cls, x) -> "Scaled":
        if isinstance(x, Scaled):
            return x
        return cls(_coerce(x), ONE)

    def __add__(self, other) -> "Scaled":
        o = Scaled.lift(other)
        if self.den == o.den:
            return Scaled(self.num + o.num, self.den)
        return Scaled(self.num.scale(o.den) + o.num.scale(self.den), self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "Scaled":
        return Scaled(-self.num, self.den)

    def __sub__(self, other) -> "Scaled":
        return self + (-Scaled.lift(other))

    def __rsub__(self, other) -> "Scaled":
        return Scaled.lift(other) - self

    def __mul__(self, other) -> "Scaled":
        o = Scaled.lift(other)
        return Scaled(self.num * o.num, self.den * o.den)

    def __rmul__(self, other) -> "Scaled":
        return Scaled.lift(other) * self

    def __pow__(self, k: int) -> "Scaled":
        out = Scaled.lift(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        o = Scaled.lift(other)
        return self.num.scale(o.den) == o.num.scale(self.den)

    def to_element(self) -> EHAElement:
        if self.den == ONE:
            return self.num
        try:
            return EHAElement({m: exact_divide(c, self.den) for m, c in self.num.terms.items()})
        except NotDivisible as exc:
            raise NotDivisible(
                f"({self.num}) / ({self.den}) has no Laurent coefficients in the w-basis"
            ) from exc


def u(x) -> Scaled:
    return Scaled(EHAElement.generator(x), u_to_w(x))


def w_to_u(x) -> Scaled:
    """The reciprocal conversion marker 1/(s^d - s^-d): u_x = w_to_u(x) * w_x."""
    return Scaled(EHAElement.scalar(1), u_to_w(x))


def u_commutator(x, y) -> Scaled:
    a, b = u(x), u(y)
    return Scaled(commutator(a.num, b.num), a.den * b.den)


def relation2_rhs(x, y) -> Scaled:
    from .theta import alpha_ratio_limit

    z = nonzero(x) + nonzero(y)
    return u(z) * Scaled.lift(alpha_ratio_limit(gcd_vec(z)).scale(epsilon(x, y)))


def check_relation2(x, y) -> bool:
    """[u_x, u_y] == eps(x,y) * lim_{t->q}(alpha_g/alpha_1) * u_{x+y}, g = gcd(x+y)."""
    x, y = nonzero(x), nonzero(y)
    if is_parallel(x, y):
        raise PreconditionViolated(f"{x} and {y} are parallel")
    if interior_points(x, y):
        raise PreconditionViolated(f"triangle (0, {x}, {x + y}) has interior lattice points")
    return u_commutator(x, y) == relation2_rhs(x, y)


# -- skyscraper subalgebra ---------------------------------------------------


def sky_embed(d: int) -> EHAElement:
    if d < 1:
        raise ValueError("d >= 1 required")
    return w(0, d)


def sky_delta(d: int) -> Scaled:
    """delta_{S(0,d)} = w_{(0,d)} / (s^d - s^-d)."""
    return Scaled(sky_embed(d), sbracket(d))


# -- exports ------------------------------------------------------------------


def box_vectors(n: int) -> Iterator[LatticeVec]:
    for r in range(-n, n + 1):
        for d in range(-n, n + 1):
            if r or d:
                yield LatticeVec(r, d)


def structure_table(max_norm: int) -> List[dict]:
    rows = []
    for x in box_vectors(max_norm):
        for y in box_vectors(max_norm):
            b = bracket_w(x, y)
            rows.append(
                {
                    "x": [x.r, x.d],
                    "y": [y.r, y.d],
                    "terms": [
                        {"mono": [[[v.r, v.d], m] for v, m in mono], "coeff": c.to_json()}
                        for mono, c in b.sorted_terms()
                    ],
                }
            )
    return rows


__all__ = [
    "EHAElement",
    "PreconditionViolated",
    "RewriteError",
    "Scaled",
    "bracket_w",
    "check_relation2",
    "commutator",
    "format_element",
    "grade",
    "jacobiator",
    "multiply",
    "pbw_normal_form",
    "sbracket",
    "sky_delta",
    "sky_embed",
    "sl2_act",
    "structure_table",
    "u",
    "u_commutator",
    "u_to_w",
    "vec",
    "w",
    "w_to_u",
]
