"""Sparse multivariate Laurent polynomials with exact rational coefficients.

Every value is immutable and kept in a canonical form: variables are sorted by
name, variables that occur with exponent zero in every term are dropped, and
no stored coefficient is zero.  Two polynomials are therefore equal exactly
when their ``(vars, terms)`` pairs are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

Exponent = Tuple[int, ...]

EXP_BOUND = 2**63


class NotDivisible(ArithmeticError):
    """Raised when no exact Laurent quotient exists."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _check_exp(e: Exponent) -> Exponent:
    for k in e:
        if not -EXP_BOUND <= k < EXP_BOUND:
            raise OverflowError(f"exponent {k} exceeds signed 64-bit range")
    return e


class LaurentPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str] = (), terms: Mapping[Exponent, object] | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"repeated variable in {vars}")
        raw: Dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != len(vars):
                raise ValueError(f"exponent {e} does not match variables {vars}")
            c = _as_fraction(c)
            if c:
                raw[e] = raw.get(e, 0) + c
        raw = {e: c for e, c in raw.items() if c}
        # canonicalize: sorted variable names, drop unused variables
        used = [i for i in range(len(vars)) if any(e[i] for e in raw)]
        order = sorted(used, key=lambda i: vars[i])
        self.vars: Tuple[str, ...] = tuple(vars[i] for i in order)
        self.terms: Dict[Exponent, Fraction] = {
            _check_exp(tuple(e[i] for i in order)): c for e, c in raw.items()
        }
        self._hash = None

    @classmethod
    def _raw(cls, vars: Tuple[str, ...], terms: Dict[Exponent, Fraction]) -> "LaurentPoly":
        # trusted constructor: vars sorted, terms nonzero; only unused vars may need dropping
        if terms and vars:
            used = [i for i in range(len(vars)) if any(e[i] for e in terms)]
            if len(used) != len(vars):
                vars = tuple(vars[i] for i in used)
                terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
        elif not terms:
            vars = ()
        obj = object.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = _as_fraction(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        return cls.monomial({name: power})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff=1) -> "LaurentPoly":
        names = tuple(exps)
        return cls(names, {tuple(exps[n] for n in names): coeff})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw((), {})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.const(1)

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (not self.vars)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def coeff(self, exps: Mapping[str, int]) -> Fraction:
        if any(v not in self.vars for v, k in exps.items() if k):
            return Fraction(0)
        e = tuple(exps.get(v, 0) for v in self.vars)
        return self.terms.get(e, Fraction(0))

    def degree_in(self, name: str) -> Tuple[int, int]:
        """(min, max) exponent of ``name`` over all terms."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        if name not in self.vars:
            return (0, 0)
        i = self.vars.index(name)
        ks = [e[i] for e in self.terms]
        return (min(ks), max(ks))

    def _maxabs(self) -> int:
        return max((abs(k) for e in self.terms for k in e), default=0)

    # -- alignment --------------------------------------------------------

    def _lift(self, vars: Tuple[str, ...]) -> Dict[Exponent, Fraction]:
        if vars == self.vars:
            return self.terms
        pos = [self.vars.index(v) if v in self.vars else -1 for v in vars]
        return {tuple(e[p] if p >= 0 else 0 for p in pos): c for e, c in self.terms.items()}

    @staticmethod
    def _union(a: "LaurentPoly", b: "LaurentPoly") -> Tuple[str, ...]:
        if a.vars == b.vars:
            return a.vars
        return tuple(sorted(set(a.vars) | set(b.vars)))

    # -- ring operations --------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        vars = self._union(self, other)
        out = dict(self._lift(vars))
        for e, c in other._lift(vars).items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly._raw(vars, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return LaurentPoly.zero()
        # constants scale termwise
        if not other.vars:
            c = other.terms[()]
            return self if c == 1 else LaurentPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        if not self.vars:
            c = self.terms[()]
            return other if c == 1 else LaurentPoly._raw(other.vars, {e: v * c for e, v in other.terms.items()})
        if self._maxabs() + other._maxabs() >= EXP_BOUND:
            raise OverflowError("exponent overflow in product")
        vars = self._union(self, other)
        a = self._lift(vars)
        b = other._lift(vars)
        out: Dict[Exponent, Fraction] = {}
        n = len(vars)
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(ea[i] + eb[i] for i in range(n)) if n else ()
                v = out.get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return LaurentPoly._raw(vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only for monomials")
            ((e, c),) = self.terms.items()
            return LaurentPoly._raw(self.vars, {tuple(x * k for x in e): c**k})
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "LaurentPoly":
        c = _as_fraction(c)
        if not c:
            return LaurentPoly.zero()
        return LaurentPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    def inverse_monomial(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise NotDivisible(f"{self} is not a unit")
        ((e, c),) = self.terms.items()
        return LaurentPoly._raw(self.vars, {tuple(-x for x in e): 1 / c})

    # -- equality / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- display order & printing --------------------------------------

    def sorted_terms(self):
        """Terms in graded lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = _fmt_rat(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_rat(a)}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    # -- JSON -----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        vars = data["vars"]
        terms = {}
        for t in data["terms"]:
            e = tuple(t["exp"])
            terms[e] = terms.get(e, 0) + Fraction(int(t["num"]), int(t["den"]))
        return cls(vars, terms)


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return NotImplemented


def laurent_arith(op: str, a: LaurentPoly, b: LaurentPoly | None = None) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


# -- exact division ----------------------------------------------------


def _shift_to_poly(p: LaurentPoly, vars: Tuple[str, ...]):
    terms = p._lift(vars)
    n = len(vars)
    low = tuple(min(e[i] for e in terms) for i in range(n))
    return {tuple(e[i] - low[i] for i in range(n)): c for e, c in terms.items()}, low


def _grlex(e: Exponent):
    return (sum(e), e)


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``c`` with ``b * c == a``, or raise :class:`NotDivisible`.

    Both operands are shifted by monomials so that they become ordinary
    polynomials with no monomial factor in ``b``; any Laurent quotient is then
    a polynomial, found by leading-term long division in graded-lex order.
    A leading term of the running remainder that is not divisible by the
    leading term of ``b`` proves that no quotient exists.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return LaurentPoly.zero()
    vars = LaurentPoly._union(a, b)
    A, low_a = _shift_to_poly(a, vars)
    B, low_b = _shift_to_poly(b, vars)
    n = len(vars)
    lead_b = max(B, key=_grlex)
    lead_cb = B[lead_b]
    rem = dict(A)
    quot: Dict[Exponent, Fraction] = {}
    while rem:
        lead = max(rem, key=_grlex)
        diff = tuple(lead[i] - lead_b[i] for i in range(n))
        if any(k < 0 for k in diff):
            raise NotDivisible(f"({a}) / ({b}) is not a Laurent polynomial")
        c = rem[lead] / lead_cb
        quot[diff] = c
        for e, cb in B.items():
            k = tuple(diff[i] + e[i] for i in range(n))
            v = rem.get(k, 0) - c * cb
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    shift = tuple(low_a[i] - low_b[i] for i in range(n))
    return LaurentPoly(vars, {tuple(e[i] + shift[i] for i in range(n)): c for e, c in quot.items()})


def divides(b: LaurentPoly, a: LaurentPoly) -> bool:
    try:
        exact_divide(a, b)
    except NotDivisible:
        return False
    return True


def specialize(a: LaurentPoly, assignment: Mapping[str, LaurentPoly]) -> LaurentPoly:
    """Substitute monomials for variables (a ring homomorphism)."""
    for name, img in assignment.items():
        if not (isinstance(img, LaurentPoly) and img.is_monomial()):
            raise ValueError(f"image of {name} must be a single monomial, got {img}")
    result = LaurentPoly.zero()
    images = [assignment.get(v) for v in a.vars]
    for e, c in a.terms.items():
        term = LaurentPoly.const(c)
        rest = {}
        for v, k, img in zip(a.vars, e, images):
            if img is None:
                rest[v] = k
            elif k:
                term = term * img**k
        if rest:
            term = term * LaurentPoly.monomial(rest)
        result = result + term
    return result


# common variables: s = q^{1/2} at t = q; (sigma, tau) = (q^{1/2}, t^{1/2}) for generic (q, t)
S = LaurentPoly.var("s")
SIGMA = LaurentPoly.var("sigma")
TAU = LaurentPoly.var("tau")
