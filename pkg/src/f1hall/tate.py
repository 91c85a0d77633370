"""Toric charts of the monoidal Tate curve.

Chart i is the monoid of lattice points of the dual cone
    { v : <v, rho_i> >= 0, <v, rho_{i+1}> >= 0 },   rho_i = (i, 1),
generated by x = (1, -i), y = (-1, i+1) and q = (0, 1) with x + y = q.
Charts are glued along the shared ray rho_{i+1}: chart i inverted at y is
chart i+1 inverted at x, with x_{i+1} = -y_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

from .lattice import SL2Matrix, Z_SHIFT, det2, sl2_apply
from .monoid import FiniteMonoid, TooLarge, max_size_bound

Vec = Tuple[int, int]

BOX = 8
GENERATOR_NAMES = ("x", "y", "q")

# exponent-lattice transport of z_action(1): the inverse transpose of Z_SHIFT
LATTICE_SHIFT = SL2Matrix(1, 0, -1, 1)


class Unsupported(ValueError):
    pass


def _dot(u: Vec, v: Vec) -> int:
    return u[0] * v[0] + u[1] * v[1]


def ray(i: int) -> Vec:
    return (i, 1)


@dataclass(frozen=True)
class ConeMonoid:
    index: int

    @property
    def inequalities(self) -> Tuple[Vec, Vec]:
        """Normals rho_i, rho_{i+1}; the cone is {v : <v, n> >= 0 for both}."""
        return ray(self.index), ray(self.index + 1)

    @property
    def generators(self) -> Dict[str, Vec]:
        i = self.index
        return {"x": (1, -i), "y": (-1, i + 1), "q": (0, 1)}

    @property
    def relations(self) -> List[Tuple[Dict[str, int], Dict[str, int]]]:
        return [({"x": 1, "y": 1}, {"q": 1})]

    def contains(self, v: Vec) -> bool:
        return all(_dot(v, n) >= 0 for n in self.inequalities)

    def coordinates(self, v: Vec) -> Tuple[int, int]:
        """(a, b) with v = a x + b y; x, y form a lattice basis."""
        x, y = self.generators["x"], self.generators["y"]
        d = det2(x, y)
        a = det2(v, y) // d
        b = det2(x, v) // d
        assert a * x[0] + b * y[0] == v[0] and a * x[1] + b * y[1] == v[1]
        return a, b

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "inequalities": [list(n) for n in self.inequalities],
            "generators": {k: list(v) for k, v in self.generators.items()},
            "relations": ["x*y = q"],
        }


def cone_dual_monoid(i: int) -> ConeMonoid:
    return ConeMonoid(i)


# -- brute-force lattice oracles -------------------------------------------


def cone_points(C: ConeMonoid, box: int = BOX) -> List[Vec]:
    return [(a, b) for a in range(-box, box + 1) for b in range(-box, box + 1) if C.contains((a, b))]


def generated_points(C: ConeMonoid, box: int = BOX) -> FrozenSet[Vec]:
    """Nonnegative combinations of the generators that land in the box.

    The functional l = rho_i + rho_{i+1} is 1 on x and y and 2 on q, so
    l(v) bounds the total number of generators in any expression of v.
    """
    ell = (2 * C.index + 1, 2)
    bound = max(_dot(v, ell) for v in cone_points(C, box))
    gens = list(C.generators.values())
    out = set()
    for a in range(bound + 1):
        for b in range(bound + 1 - a):
            for c in range((bound - a - b) // 2 + 1):
                v = tuple(a * g0 + b * g1 + c * g2 for g0, g1, g2 in zip(*gens))
                if max(abs(v[0]), abs(v[1])) <= box:
                    out.add(v)
    return frozenset(out)


def check_generators_in_cone(C: ConeMonoid) -> bool:
    """Each generator lies in the cone; x and y each sit on exactly one facet, q on none."""
    ok = all(C.contains(g) for g in C.generators.values())
    zeros = {k: sum(_dot(g, n) == 0 for n in C.inequalities) for k, g in C.generators.items()}
    return ok and zeros == {"x": 1, "y": 1, "q": 0}


def check_generation(C: ConeMonoid, box: int = BOX) -> bool:
    return generated_points(C, box) == frozenset(cone_points(C, box))


def check_relation_minimality(C: ConeMonoid, box: int = 5) -> bool:
    """Integer relations among (x, y, q) inside the box are the multiples of x + y - q."""
    gens = list(C.generators.values())
    for coeffs in itertools.product(range(-box, box + 1), repeat=3):
        v = tuple(sum(c * g[k] for c, g in zip(coeffs, gens)) for k in range(2))
        if v == (0, 0):
            a, b, c = coeffs
            if not (a == b == -c):
                return False
    # the generator matrix has rank 2, so its kernel has rank 1
    return any(det2(g, h) != 0 for g, h in itertools.combinations(gens, 2))


# -- gluing --------------------------------------------------------------------


def basis_matrix(C: ConeMonoid) -> SL2Matrix:
    """Columns x_i, y_i."""
    x, y = C.generators["x"], C.generators["y"]
    return SL2Matrix(x[0], y[0], x[1], y[1])


def glue_map(i: int) -> SL2Matrix:
    """Chart i+1 generator coordinates -> chart i generator coordinates.

    Columns are x_{i+1} and y_{i+1} written in the basis (x_i, y_i), so that
    x_{i+1} = y_i^-1 and y_{i+1} = x_i y_i^2 multiplicatively.
    """
    return basis_matrix(ConeMonoid(i)).inverse() @ basis_matrix(ConeMonoid(i + 1))


def transition_between(i: int, j: int) -> SL2Matrix:
    """Directly solved transition from chart j coordinates to chart i coordinates."""
    return basis_matrix(ConeMonoid(i)).inverse() @ basis_matrix(ConeMonoid(j))


def localized_overlap(C: ConeMonoid, at: str, box: int = BOX) -> FrozenSet[Vec]:
    """Lattice points of C with the generator `at` inverted, inside the box."""
    g = C.generators[at]
    normal = next(n for n in C.inequalities if _dot(g, n) == 0)
    return frozenset(
        (a, b) for a in range(-box, box + 1) for b in range(-box, box + 1) if _dot((a, b), normal) >= 0
    )


def check_overlap(i: int, box: int = BOX) -> bool:
    """Chart i inverted at y equals chart i+1 inverted at x, and x_{i+1} = -y_i."""
    C, D = ConeMonoid(i), ConeMonoid(i + 1)
    same = localized_overlap(C, "y", box) == localized_overlap(D, "x", box)
    xi1, yi = D.generators["x"], C.generators["y"]
    return same and xi1 == (-yi[0], -yi[1])


def check_glue_iso(i: int, box: int = BOX) -> bool:
    """The glue map carries the localized chart i+1 monoid onto the localized chart i monoid."""
    C, D = ConeMonoid(i), ConeMonoid(i + 1)
    G = glue_map(i)
    ok = G.det() == 1 and (G @ G.inverse()) == SL2Matrix(1, 0, 0, 1)
    for v in localized_overlap(D, "x", box):
        a2, b2 = D.coordinates(v)
        a1, b1 = sl2_apply(G, (a2, b2))
        if C.coordinates(v) != (a1, b1):
            return False
        # chart i+1 overlap: b2 >= 0, a2 free; chart i overlap: a1 >= 0, b1 free
        if (b2 >= 0) != (a1 >= 0):
            return False
    return ok


def check_cocycle(i: int) -> bool:
    """glue(i) glue(i+1) equals the direct transition from chart i+2 to chart i."""
    return glue_map(i) @ glue_map(i + 1) == transition_between(i, i + 2)


# -- the Z-action --------------------------------------------------------------


@dataclass(frozen=True)
class ZAction:
    shift: int
    fan_matrix: SL2Matrix
    lattice_matrix: SL2Matrix

    def apply_chart(self, C: ConeMonoid) -> ConeMonoid:
        return ConeMonoid(C.index + self.shift)

    def transport_inequalities(self, C: ConeMonoid) -> Tuple[Vec, Vec]:
        return tuple(tuple(sl2_apply(self.fan_matrix, n)) for n in C.inequalities)  # type: ignore[return-value]

    def transport_generators(self, C: ConeMonoid) -> Dict[str, Vec]:
        return {k: tuple(sl2_apply(self.lattice_matrix, g)) for k, g in C.generators.items()}

    def compose(self, other: "ZAction") -> "ZAction":
        return ZAction(self.shift + other.shift, self.fan_matrix @ other.fan_matrix, self.lattice_matrix @ other.lattice_matrix)

    def is_identity(self) -> bool:
        return self.shift == 0 and self.fan_matrix == SL2Matrix(1, 0, 0, 1) == self.lattice_matrix


def z_action(k: int) -> ZAction:
    return ZAction(k, Z_SHIFT**k, LATTICE_SHIFT**k)


def check_z_action(i: int, k: int = 1) -> bool:
    """z_action(k) sends chart i to chart i+k: inequalities, generators, and glue maps."""
    g = z_action(k)
    C = ConeMonoid(i)
    D = g.apply_chart(C)
    ineq = g.transport_inequalities(C) == D.inequalities
    gens = g.transport_generators(C) == D.generators
    pairing = all(
        _dot(sl2_apply(g.lattice_matrix, v), sl2_apply(g.fan_matrix, n)) == _dot(v, n)
        for v in C.generators.values()
        for n in C.inequalities
    )
    glue = glue_map(i) == glue_map(i + k)
    return ineq and gens and pairing and glue


# -- prime spectra ---------------------------------------------------------------


@dataclass(frozen=True)
class ChartPrime:
    """A prime ideal of a chart monoid, given by the generators it contains."""

    generators: FrozenSet[str]

    def contains(self, C: ConeMonoid, v: Vec) -> bool:
        a, b = C.coordinates(v)
        # v = a x + b y with a, b >= 0 on the cone; q contributes to both
        return (a > 0 and "x" in self.generators) or (b > 0 and "y" in self.generators)

    @property
    def name(self) -> str:
        return "(" + ",".join(sorted(self.generators)) + ")" if self.generators else "()"


def _chart_primes(C: ConeMonoid) -> List[ChartPrime]:
    out = []
    for r in range(4):
        for G in itertools.combinations(GENERATOR_NAMES, r):
            G = frozenset(G)
            # q = x y lies in a prime iff x or y does
            if ("q" in G) == bool(G & {"x", "y"}):
                out.append(ChartPrime(G))
    return out


def finite_primes(A: FiniteMonoid) -> List[FrozenSet[str]]:
    """Proper prime ideals of a finite monoid with zero, by brute force over subsets."""
    n = len(A)
    if n > max_size_bound():
        raise TooLarge(f"monoid with {n} elements exceeds bound {max_size_bound()}")
    out = []
    for r in range(1, n):
        for P in itertools.combinations(range(n), r):
            P = frozenset(P)
            if A.zero not in P:
                continue
            if any(A.mul[p][a] not in P for p in P for a in range(n)):
                continue
            if any(A.mul[a][b] in P and a not in P and b not in P for a in range(n) for b in range(n)):
                continue
            out.append(frozenset(A.elements[p] for p in P))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def spec_mon(A):
    if isinstance(A, ConeMonoid):
        return _chart_primes(A)
    if isinstance(A, FiniteMonoid):
        return finite_primes(A)
    raise Unsupported(f"spec_mon is defined for chart monoids and finite monoids, not {type(A).__name__}")


def faces(C: ConeMonoid, box: int = BOX) -> List[FrozenSet[Vec]]:
    """Lattice points of each face of the cone inside the box: origin, two rays, the whole cone."""
    pts = cone_points(C, box)
    n1, n2 = C.inequalities
    return [
        frozenset(v for v in pts if _dot(v, n1) == 0 and _dot(v, n2) == 0),
        frozenset(v for v in pts if _dot(v, n1) == 0),
        frozenset(v for v in pts if _dot(v, n2) == 0),
        frozenset(pts),
    ]


def check_prime_faces(C: ConeMonoid, box: int = BOX) -> bool:
    """Primes are exactly complements of faces, with inclusion reversed."""
    pts = cone_points(C, box)
    pset = frozenset(pts)
    primes = spec_mon(C)
    if len(primes) != 4:
        return False
    members = []
    for P in primes:
        S = frozenset(v for v in pts if P.contains(C, v))
        for u in pts:
            for v in pts:
                w = (u[0] + v[0], u[1] + v[1])
                if w not in pset:
                    continue
                if u in S and w not in S:
                    return False
                if w in S and u not in S and v not in S:
                    return False
        members.append((P, S))
    complements = {pset - S for _, S in members}
    if complements != set(faces(C, box)):
        return False
    for (P1, S1), (P2, S2) in itertools.product(members, repeat=2):
        if (P1.generators <= P2.generators) != (S1 <= S2):
            return False
        if (S1 <= S2) != ((pset - S2) <= (pset - S1)):
            return False
    return True


# -- atlas -----------------------------------------------------------------------


def _mat(m: SL2Matrix) -> List[List[int]]:
    return [[m.a, m.b], [m.c, m.d]]


def atlas(i0: int = -3, i1: int = 3) -> dict:
    if i1 < i0:
        raise ValueError("chart range must satisfy i0 <= i1")
    charts = [ConeMonoid(i) for i in range(i0, i1 + 1)]
    return {
        "range": [i0, i1],
        "charts": [C.to_json() for C in charts],
        "transitions": [
            {"from": i + 1, "to": i, "localize": {"from": "x", "to": "y"}, "matrix": _mat(glue_map(i))}
            for i in range(i0, i1)
        ],
        "z_action": {"fan_matrix": _mat(Z_SHIFT), "lattice_matrix": _mat(LATTICE_SHIFT)},
    }


def atlas_checks(i0: int = -3, i1: int = 3) -> Dict[str, bool]:
    idx = range(i0, i1 + 1)
    return {
        "generators_in_cone": all(check_generators_in_cone(ConeMonoid(i)) for i in idx),
        "generation": all(check_generation(ConeMonoid(i)) for i in idx),
        "relation_minimality": all(check_relation_minimality(ConeMonoid(i)) for i in idx),
        "overlaps": all(check_overlap(i) for i in range(i0, i1)),
        "glue_iso": all(check_glue_iso(i) for i in range(i0, i1)),
        "cocycle": all(check_cocycle(i) for i in range(i0, i1 - 1)),
        "z_action": all(check_z_action(i) for i in range(i0, i1)),
        "prime_faces": all(check_prime_faces(ConeMonoid(i)) for i in idx),
    }
