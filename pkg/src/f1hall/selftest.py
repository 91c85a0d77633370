"""A quick invariant suite across all engines, used by ``f1hall selftest``."""

from __future__ import annotations

import itertools
import math
import random
from typing import Callable, List, Tuple

from . import eha, hall, lattice, monoid, tate, theta

Check = Tuple[str, Callable[[], Tuple[bool, str]]]


def _skein() -> Tuple[bool, str]:
    lhs = eha.commutator(eha.w(1, 1), eha.w(0, 1))
    rhs = eha.w(1, 2).scale(eha.sbracket(1))
    return lhs == rhs, str(lhs)


def _parallel() -> Tuple[bool, str]:
    bad = 0
    for x in eha.box_vectors(3):
        if math.gcd(*x) != 1:
            continue
        for n in range(1, 4):
            for m in range(1, 4):
                if eha.commutator(eha.w(n * x.r, n * x.d), eha.w(m * x.r, m * x.d)):
                    bad += 1
    return bad == 0, f"{bad} nonzero commutators"


def _relation2(primitive_only: bool) -> Callable[[], Tuple[bool, str]]:
    def run():
        failing = []
        for x in eha.box_vectors(3):
            for y in eha.box_vectors(3):
                if lattice.det2(x, y) == 0 or lattice.interior_points(x, y):
                    continue
                if primitive_only and lattice.gcd_vec(x) > 1 and lattice.gcd_vec(y) > 1:
                    continue
                if not eha.check_relation2(x, y):
                    failing.append(f"{x},{y}")
        return not failing, f"{len(failing)} failing pairs" + (f", e.g. {failing[0]}" if failing else "")

    return run


def _limit() -> Tuple[bool, str]:
    ok = all(theta.alpha_ratio_limit(k) == theta.quantum_int(k) ** 2 for k in range(1, 7))
    ok = ok and all(theta.theta_limit_report(k)["multi_factor_divisible"] for k in range(2, 5))
    return ok, "k <= 6"


def _jacobi() -> Tuple[bool, str]:
    vs = list(eha.box_vectors(2))
    bad = sum(1 for x, y, z in itertools.combinations(vs, 3) if eha.jacobiator(x, y, z))
    return bad == 0, f"{bad} nonzero Jacobiators"


def _confluence() -> Tuple[bool, str]:
    rng = random.Random(7)
    vs = list(eha.box_vectors(2))
    for _ in range(100):
        word = [rng.choice(vs) for _ in range(rng.randint(1, 4))]
        if eha.pbw_normal_form(word, strategy="left") != eha.pbw_normal_form(word, strategy="right"):
            return False, f"strategies differ on {word}"
    return True, "100 random words"


def _sl2() -> Tuple[bool, str]:
    rng = random.Random(11)
    vs = list(eha.box_vectors(2))
    for g in (lattice.S_MATRIX, lattice.T_MATRIX, lattice.sl2_word("STs")):
        for _ in range(20):
            a, b = eha.w(*rng.choice(vs)), eha.w(*rng.choice(vs))
            if eha.sl2_act(g, a * b) != eha.sl2_act(g, a) * eha.sl2_act(g, b):
                return False, f"fails for {g}"
    return True, "60 products"


def _sky() -> Tuple[bool, str]:
    ps = [p for n in range(1, 4) for p in hall.partitions_of(n)]
    ok = hall.sky_polynomial_check(4) and all(hall.sky_intertwines(a, b) for a in ps for b in ps if sum(a) + sum(b) <= 4)
    return ok, "degree <= 4"


def _hall_f1() -> Tuple[bool, str]:
    H = hall.HallAlgebra(monoid.field_with_one_element())
    k = [H.classes(n)[0] for n in range(7)]
    ok = all(H.extensions(k[a], k[b]) == {k[a + b]: math.comb(a + b, a)} for a in range(7) for b in range(7 - a))
    ok = ok and all(H.check_associative(k[a], k[b], k[c]) for a in range(3) for b in range(3) for c in range(3))
    ok = ok and all(H.check_bialgebra(k[a], k[b]) for a in range(4) for b in range(4 - a))
    return ok, "binomials, associativity, bialgebra"


def _hall_t3() -> Tuple[bool, str]:
    H = hall.HallAlgebra(monoid.truncated_polynomial_monoid(3))
    cls = [c for n in range(4) for c in H.classes(n)]
    ok = all(
        H.check_associative(a, b, c)
        for a in cls
        for b in cls
        for c in cls
        if monoid.key_size(a) + monoid.key_size(b) + monoid.key_size(c) <= 4
    )
    return ok, "associativity, total size <= 4"


def _third_iso() -> Tuple[bool, str]:
    A = monoid.truncated_polynomial_monoid(3)
    count = 0
    for n in range(4):
        for M in monoid.enumerate_modules(A, n):
            subs = monoid.submodule_sets(M)
            for L in subs:
                for Mid in subs:
                    if L <= Mid:
                        count += 1
                        if not all(hall.third_iso_check(M, Mid, L).values()):
                            return False, f"fails on {M}"
    return True, f"{count} chains"


def _double() -> Tuple[bool, str]:
    H = hall.HallAlgebra(monoid.field_with_one_element())
    k = [H.classes(n)[0] for n in range(4)]
    ok = all(H.check_cross_relation(k[a], k[b]) for a in range(4) for b in range(4))
    return ok, "degree <= 3"


def _zeta() -> Tuple[bool, str]:
    ok = theta.zeta_check(8)
    ok = ok and theta.weil_count_from_zeta(6) == [theta.weil_count(n) for n in range(1, 7)]
    return ok, "order 8"


def _tate() -> Tuple[bool, str]:
    res = tate.atlas_checks(-2, 2)
    bad = [k for k, v in res.items() if not v]
    return not bad, ", ".join(bad) or "charts -2..2"


def _pick() -> Tuple[bool, str]:
    vs = [(a, b) for a in range(-3, 4) for b in range(-3, 4) if (a, b) != (0, 0)]
    for x in vs:
        for y in vs:
            if lattice.det2(x, y) and lattice.interior_points(x, y) != lattice.interior_points_scan(x, y):
                return False, f"{x},{y}"
    return True, "box [-3,3]"


CHECKS: List[Check] = [
    ("skein", _skein),
    ("parallel_commute", _parallel),
    ("relation2_primitive", _relation2(True)),
    ("relation2_all", _relation2(False)),
    ("limit", _limit),
    ("jacobi", _jacobi),
    ("confluence", _confluence),
    ("sl2", _sl2),
    ("sky", _sky),
    ("hall_f1", _hall_f1),
    ("hall_t3", _hall_t3),
    ("third_iso", _third_iso),
    ("double", _double),
    ("zeta", _zeta),
    ("tate", _tate),
    ("pick", _pick),
]


def run(skip=()) -> List[Tuple[str, bool, str]]:
    out = []
    for name, fn in CHECKS:
        if name in skip:
            continue
        ok, detail = fn()
        out.append((name, ok, detail))
    return out
