"""Finite commutative monoids with zero and their pointed modules.

Points of a module are the integers ``0..n`` with ``0`` the base point ``*``;
the *size* of a module is the number ``n`` of non-base points.  Monoid
elements are the integers ``0..len(A)-1``.
"""

from __future__ import annotations

import itertools
import os
import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

Table = Tuple[int, ...]

DEFAULT_MAX_SIZE = 12


def max_size_bound() -> int:
    return int(os.environ.get("F1HALL_MAX_SIZE", DEFAULT_MAX_SIZE))


class MonoidError(ValueError):
    pass


class NotCommutative(MonoidError):
    pass


class NotAssociative(MonoidError):
    pass


class BadZero(MonoidError):
    pass


class BadUnit(MonoidError):
    pass


class BadAction(MonoidError):
    pass


class TooLarge(ValueError):
    pass


class NotSubmodule(ValueError):
    pass


class NotNested(ValueError):
    pass


# -- monoids -----------------------------------------------------------------


class FiniteMonoid:
    def __init__(self, elements: Sequence[str], mul: Sequence[Sequence], zero: str = "0", one: str = "1"):
        self.elements: Tuple[str, ...] = tuple(str(e) for e in elements)
        index = {e: i for i, e in enumerate(self.elements)}
        if len(index) != len(self.elements):
            raise MonoidError("repeated element label")
        n = len(self.elements)
        if len(mul) != n or any(len(row) != n for row in mul):
            raise MonoidError("multiplication table must be square and total")
        rows = []
        for row in mul:
            out = []
            for v in row:
                v = str(v)
                if v not in index:
                    raise MonoidError(f"table entry {v!r} is not an element")
                out.append(index[v])
            rows.append(tuple(out))
        self.mul: Tuple[Table, ...] = tuple(rows)
        if zero not in index:
            raise BadZero(f"no element labelled {zero!r}")
        if one not in index:
            raise BadUnit(f"no element labelled {one!r}")
        self.zero = index[zero]
        self.one = index[one]
        self.index = index
        self._gens: Optional[Tuple[int, ...]] = None
        self._words: Optional[Dict[int, Tuple[int, ...]]] = None

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteMonoid({list(self.elements)})"

    def validate(self) -> None:
        n = len(self)
        m = self.mul
        for a in range(n):
            if m[a][self.one] != a or m[self.one][a] != a:
                raise BadUnit(f"{self.elements[self.one]} is not a unit at {self.elements[a]}")
            if m[a][self.zero] != self.zero or m[self.zero][a] != self.zero:
                raise BadZero(f"{self.elements[self.zero]} does not absorb {self.elements[a]}")
        for a in range(n):
            for b in range(n):
                if m[a][b] != m[b][a]:
                    raise NotCommutative(f"{self.elements[a]}*{self.elements[b]} != {self.elements[b]}*{self.elements[a]}")
        for a in range(n):
            for b in range(n):
                ab = m[a][b]
                for c in range(n):
                    if m[ab][c] != m[a][m[b][c]]:
                        raise NotAssociative(
                            f"({self.elements[a]}{self.elements[b]}){self.elements[c]} != "
                            f"{self.elements[a]}({self.elements[b]}{self.elements[c]})"
                        )

    @property
    def generators(self) -> Tuple[int, ...]:
        """A generating set of A as a monoid with zero (0 and 1 are free)."""
        if self._gens is None:
            closure = {self.zero, self.one}
            gens: List[int] = []
            for a in range(len(self)):
                if a in closure:
                    continue
                gens.append(a)
                frontier = list(closure)
                while frontier:
                    new = []
                    for b in frontier:
                        for g in gens:
                            c = self.mul[g][b]
                            if c not in closure:
                                closure.add(c)
                                new.append(c)
                    frontier = new
            self._gens = tuple(gens)
        return self._gens

    @property
    def words(self) -> Dict[int, Tuple[int, ...]]:
        """For each nonzero element, a word in the generators (applied right to left)."""
        if self._words is None:
            words = {self.one: ()}
            frontier = [self.one]
            while frontier:
                new = []
                for b in frontier:
                    for g in self.generators:
                        c = self.mul[g][b]
                        if c not in words and c != self.zero:
                            words[c] = (g,) + words[b]
                            new.append(c)
                frontier = new
            self._words = words
        return self._words

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "mul": [[self.elements[v] for v in row] for row in self.mul],
            "zero": self.elements[self.zero],
            "one": self.elements[self.one],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FiniteMonoid":
        return cls(data["elements"], data["mul"], data.get("zero", "0"), data.get("one", "1"))


def field_with_one_element() -> FiniteMonoid:
    """F_1 = {0, 1}."""
    return FiniteMonoid(["0", "1"], [["0", "0"], ["0", "1"]])


def truncated_polynomial_monoid(k: int, var: str = "t") -> FiniteMonoid:
    """<t>/t^k = {0, 1, t, ..., t^{k-1}} with t^k = 0."""
    labels = ["0", "1"] + [var if i == 1 else f"{var}^{i}" for i in range(1, k)]

    def lab(i: Optional[int]) -> str:
        return "0" if i is None or i >= k else labels[i + 1]

    def power(e: str) -> Optional[int]:
        if e == "0":
            return None
        return labels.index(e) - 1

    table = []
    for a in labels:
        row = []
        for b in labels:
            pa, pb = power(a), power(b)
            row.append("0" if pa is None or pb is None else lab(pa + pb))
        table.append(row)
    return FiniteMonoid(labels, table)


# -- modules -------------------------------------------------------------------


class PointedModule:
    """A finite pointed set {*, 1..n} with an action table of the monoid."""

    __slots__ = ("monoid", "n", "act", "labels", "_key")

    def __init__(self, monoid: FiniteMonoid, n: int, act: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None):
        self.monoid = monoid
        self.n = n
        self.act: Tuple[Table, ...] = tuple(tuple(row) for row in act)
        self.labels = tuple(labels) if labels is not None else ("*",) + tuple(f"m{i}" for i in range(1, n + 1))
        self._key = None

    @property
    def size(self) -> int:
        return self.n

    @classmethod
    def from_generator_maps(cls, monoid: FiniteMonoid, n: int, gen_maps: Mapping[int, Sequence[int]], labels=None) -> "PointedModule":
        """Build the full action from the action of the generators."""
        ident = tuple(range(n + 1))
        base = (0,) * (n + 1)
        act: List[Optional[Table]] = [None] * len(monoid)
        for a, word in monoid.words.items():
            t = ident
            for g in reversed(word):
                gm = gen_maps[g]
                t = tuple(gm[x] for x in t)
            act[a] = t
        for a in range(len(monoid)):
            if act[a] is None:
                act[a] = base
        act[monoid.zero] = base
        return cls(monoid, n, act, labels)

    @classmethod
    def trivial(cls, monoid: FiniteMonoid, n: int) -> "PointedModule":
        """n points killed by every non-unit; [n] over F_1."""
        base = (0,) * (n + 1)
        return cls.from_generator_maps(monoid, n, {g: base for g in monoid.generators})

    @classmethod
    def zero_module(cls, monoid: FiniteMonoid) -> "PointedModule":
        return cls.trivial(monoid, 0)

    @classmethod
    def from_json(cls, monoid: FiniteMonoid, data: Mapping) -> "PointedModule":
        base = data.get("base", "*")
        pts = [p for p in data["points"] if p != base]
        labels = [base] + list(pts)
        idx = {p: i for i, p in enumerate(labels)}
        if len(idx) != len(labels):
            raise BadAction("repeated point label")
        n = len(pts)
        given: Dict[int, Table] = {}
        for a_label, mapping in data.get("action", {}).items():
            if a_label not in monoid.index:
                raise BadAction(f"unknown monoid element {a_label!r}")
            row = [0] * (n + 1)
            for p in pts:
                if p not in mapping:
                    raise BadAction(f"action of {a_label} on {p} missing")
                tgt = mapping[p]
                if tgt not in idx:
                    raise BadAction(f"{a_label}·{p} = {tgt!r} is not a point")
                row[idx[p]] = idx[tgt]
            given[monoid.index[a_label]] = tuple(row)
        gen_maps = {}
        for g in monoid.generators:
            if g not in given:
                raise BadAction(f"action of generator {monoid.elements[g]} missing")
            gen_maps[g] = given[g]
        M = cls.from_generator_maps(monoid, n, gen_maps, labels)
        act = list(M.act)
        for a, row in given.items():
            act[a] = row
        M = cls(monoid, n, act, labels)
        validate_module(M)
        return M

    def to_json(self) -> dict:
        L = self.labels
        return {
            "points": list(L),
            "base": L[0],
            "action": {
                self.monoid.elements[a]: {L[m]: L[self.act[a][m]] for m in range(1, self.n + 1)}
                for a in range(len(self.monoid))
            },
        }

    def __repr__(self) -> str:
        return f"PointedModule(n={self.n}, gens={[self.act[g] for g in self.monoid.generators]})"


def validate(A: FiniteMonoid) -> None:
    A.validate()


def validate_module(M: PointedModule) -> None:
    A = M.monoid
    n = M.n
    if len(M.act) != len(A) or any(len(row) != n + 1 for row in M.act):
        raise BadAction("action table has the wrong shape")
    for a in range(len(A)):
        row = M.act[a]
        if row[0] != 0:
            raise BadAction(f"{A.elements[a]} moves the base point")
        if any(not 0 <= v <= n for v in row):
            raise BadAction(f"{A.elements[a]} maps outside the module")
    if any(M.act[A.zero][m] != 0 for m in range(n + 1)):
        raise BadAction("0·m != * for some m")
    if M.act[A.one] != tuple(range(n + 1)):
        raise BadAction("1·m != m for some m")
    for a in range(len(A)):
        for b in range(len(A)):
            ab = M.act[A.mul[a][b]]
            ra, rb = M.act[a], M.act[b]
            for m in range(n + 1):
                if ra[rb[m]] != ab[m]:
                    raise BadAction(
                        f"{A.elements[a]}·({A.elements[b]}·{M.labels[m]}) != "
                        f"({A.elements[a]}{A.elements[b]})·{M.labels[m]}"
                    )


# -- submodules, quotients, sums ----------------------------------------------


def submodule_sets(M: PointedModule) -> List[FrozenSet[int]]:
    """All subsets containing * and closed under the action."""
    if M.n > max_size_bound():
        raise TooLarge(f"module of size {M.n} exceeds bound {max_size_bound()}")
    gens = [M.act[g] for g in M.monoid.generators]
    # closure of a single point
    cl = []
    for m in range(M.n + 1):
        seen = {0, m}
        stack = [m]
        while stack:
            x = stack.pop()
            for t in gens:
                y = t[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        cl.append(frozenset(seen))
    out = []
    pts = range(1, M.n + 1)
    for r in range(M.n + 1):
        for combo in itertools.combinations(pts, r):
            s = frozenset((0,) + combo)
            if all(cl[m] <= s for m in combo):
                out.append(s)
    return out


def is_submodule(M: PointedModule, N: Iterable[int]) -> bool:
    N = frozenset(N) | {0}
    return all(M.act[a][m] in N for a in range(len(M.monoid)) for m in N)


def restrict(M: PointedModule, N: FrozenSet[int]) -> Tuple[PointedModule, Tuple[int, ...]]:
    """The submodule on the point set N, with its inclusion map."""
    if not is_submodule(M, N):
        raise NotSubmodule(f"{sorted(N)} is not closed under the action")
    pts = [0] + sorted(p for p in N if p)
    pos = {p: i for i, p in enumerate(pts)}
    act = [tuple(pos[M.act[a][p]] for p in pts) for a in range(len(M.monoid))]
    return PointedModule(M.monoid, len(pts) - 1, act, [M.labels[p] for p in pts]), tuple(pts)


def submodules(M: PointedModule) -> List[PointedModule]:
    return [restrict(M, N)[0] for N in submodule_sets(M)]


def quotient(M: PointedModule, N: Iterable[int]) -> Tuple[PointedModule, Tuple[int, ...]]:
    """M/N on the pointed set (M \\ N) + {*}, with the projection map."""
    N = frozenset(N) | {0}
    if not is_submodule(M, N):
        raise NotSubmodule(f"{sorted(N)} is not a submodule")
    pts = [0] + [p for p in range(1, M.n + 1) if p not in N]
    pos = {p: i for i, p in enumerate(pts)}
    proj = tuple(pos.get(p, 0) for p in range(M.n + 1))
    act = [tuple(proj[M.act[a][p]] for p in pts) for a in range(len(M.monoid))]
    return PointedModule(M.monoid, len(pts) - 1, act, [M.labels[p] for p in pts]), proj


def direct_sum(M: PointedModule, N: PointedModule) -> PointedModule:
    """Wedge sum M + N with base points identified."""
    if M.monoid is not N.monoid:
        raise ValueError("modules over different monoids")
    n = M.n + N.n
    act = []
    for a in range(len(M.monoid)):
        row = list(M.act[a])
        row += [0 if v == 0 else v + M.n for v in N.act[a][1:]]
        act.append(tuple(row))
    labels = ("*",) + tuple(f"{l}'" for l in M.labels[1:]) + tuple(f"{l}''" for l in N.labels[1:])
    return PointedModule(M.monoid, n, act, labels)


def direct_sum_all(mods: Sequence[PointedModule], monoid: FiniteMonoid) -> PointedModule:
    out = PointedModule.zero_module(monoid)
    for X in mods:
        out = direct_sum(out, X)
    return out


# -- morphisms -----------------------------------------------------------------


@dataclass(frozen=True)
class ModuleMorphism:
    source: PointedModule
    target: PointedModule
    mapping: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))

    def validate(self) -> None:
        if len(self.mapping) != self.source.n + 1:
            raise BadAction("point map has the wrong length")
        if self.mapping[0] != 0:
            raise BadAction("base point must map to base point")
        A = self.source.monoid
        f = self.mapping
        for a in range(len(A)):
            for m in range(self.source.n + 1):
                if f[self.source.act[a][m]] != self.target.act[a][f[m]]:
                    raise BadAction(f"f(a·m) != a·f(m) at a={A.elements[a]}, m={self.source.labels[m]}")

    def kernel(self) -> FrozenSet[int]:
        return frozenset(m for m in range(self.source.n + 1) if self.mapping[m] == 0)

    def image(self) -> FrozenSet[int]:
        return frozenset(self.mapping)

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    def is_surjective(self) -> bool:
        return self.image() == frozenset(range(self.target.n + 1))

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """self after other."""
        return ModuleMorphism(other.source, self.target, tuple(self.mapping[x] for x in other.mapping))


def is_normal(f: ModuleMorphism) -> bool:
    """The induced map coim(f) = M/ker f -> im(f) is bijective."""
    f.validate()
    coim, proj = quotient(f.source, f.kernel())
    im = f.image()
    induced: Dict[int, int] = {}
    for m in range(f.source.n + 1):
        c = proj[m]
        v = f.mapping[m]
        if induced.setdefault(c, v) != v:
            return False
    return len(set(induced.values())) == coim.n + 1 and set(induced.values()) == set(im)


# -- canonical forms ------------------------------------------------------------


def _components(M: PointedModule, gens: Sequence[Table]) -> List[List[int]]:
    parent = list(range(M.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in gens:
        for m in range(1, M.n + 1):
            y = t[m]
            if y:
                a, b = find(m), find(y)
                if a != b:
                    parent[a] = b
    groups: Dict[int, List[int]] = {}
    for m in range(1, M.n + 1):
        groups.setdefault(find(m), []).append(m)
    return list(groups.values())


def _refine(pts: Sequence[int], gens: Sequence[Table], colors: Dict[int, int]) -> Dict[int, int]:
    pre = [{m: [] for m in pts} for _ in gens]
    for gi, t in enumerate(gens):
        for m in pts:
            y = t[m]
            if y:
                pre[gi][y].append(m)
    ncolors = len(set(colors.values()))
    while True:
        sig = {}
        for m in pts:
            out = tuple(colors[t[m]] if t[m] else -1 for t in gens)
            inn = tuple(tuple(sorted(colors[x] for x in pre[gi][m])) for gi in range(len(gens)))
            sig[m] = (colors[m], out, inn)
        order = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {m: order[sig[m]] for m in pts}
        k = len(order)
        colors = new
        if k == ncolors:
            return colors
        ncolors = k


def _canon_component(pts: Sequence[int], gens: Sequence[Table]) -> Tuple[tuple, int]:
    """(canonical encoding, automorphism count) of one connected component."""
    n = len(pts)
    if n == 1 and all(t[pts[0]] in (0, pts[0]) for t in gens):
        m = pts[0]
        return (1, tuple((1 if t[m] else 0,) for t in gens)), 1
    best = None
    count = 0

    def encode(colors):
        label = {m: colors[m] + 1 for m in pts}
        label[0] = 0
        inv = sorted(pts, key=lambda m: colors[m])
        return (n, tuple(tuple(label[t[m]] for m in inv) for t in gens))

    def search(colors):
        nonlocal best, count
        cells: Dict[int, List[int]] = {}
        for m in pts:
            cells.setdefault(colors[m], []).append(m)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = c
                break
        if target is None:
            enc = encode(colors)
            if best is None or enc < best:
                best, count = enc, 1
            elif enc == best:
                count += 1
            return
        for m in cells[target]:
            split = {x: 2 * colors[x] + (1 if colors[x] == target and x != m else 0) for x in pts}
            split[0] = -1
            search(_refine(pts, gens, _with_base(split)))

    search(_refine(pts, gens, _with_base({m: 0 for m in pts})))
    return best, count


def _with_base(colors: Dict[int, int]) -> Dict[int, int]:
    colors = dict(colors)
    colors[0] = -1
    return colors


ModuleKey = Tuple[tuple, ...]


def canonical_form(M: PointedModule) -> Tuple[ModuleKey, int]:
    """(iso-class key, #Aut) computed component by component."""
    if M._key is not None:
        return M._key
    if M.n > max_size_bound():
        raise TooLarge(f"module of size {M.n} exceeds bound {max_size_bound()}")
    gens = [M.act[g] for g in M.monoid.generators]
    comps = []
    aut = 1
    for pts in _components(M, gens):
        enc, a = _canon_component(pts, gens)
        comps.append(enc)
        aut *= a
    mult = Counter(comps)
    for c, k in mult.items():
        for i in range(2, k + 1):
            aut *= i
    key = tuple(sorted(comps))
    M._key = (key, aut)
    return M._key


def iso_classify(M: PointedModule) -> ModuleKey:
    return canonical_form(M)[0]


def aut_count(M: PointedModule) -> int:
    return canonical_form(M)[1]


def aut_count_bruteforce(M: PointedModule) -> int:
    """Count base-point-fixing bijections commuting with the action, directly."""
    count = 0
    for perm in itertools.permutations(range(1, M.n + 1)):
        f = (0,) + perm
        if all(f[M.act[a][m]] == M.act[a][f[m]] for a in range(len(M.monoid)) for m in range(M.n + 1)):
            count += 1
    return count


def is_isomorphic_bruteforce(M: PointedModule, N: PointedModule) -> bool:
    if M.n != N.n:
        return False
    for perm in itertools.permutations(range(1, N.n + 1)):
        f = (0,) + perm
        if all(f[M.act[a][m]] == N.act[a][f[m]] for a in range(len(M.monoid)) for m in range(M.n + 1)):
            return True
    return False


def key_components(key: ModuleKey) -> Tuple[tuple, ...]:
    return key


def key_size(key: ModuleKey) -> int:
    return sum(c[0] for c in key)


def module_from_key(monoid: FiniteMonoid, key: ModuleKey) -> PointedModule:
    """Rebuild a representative module from its canonical key."""
    gens = monoid.generators
    n = key_size(key)
    maps = {g: [0] * (n + 1) for g in gens}
    offset = 0
    for comp in key:
        size, rows = comp
        for gi, g in enumerate(gens):
            row = rows[gi]
            for j in range(size):
                v = row[j]
                maps[g][offset + j + 1] = 0 if v == 0 else offset + v
        offset += size
    M = PointedModule.from_generator_maps(monoid, n, {g: tuple(m) for g, m in maps.items()})
    validate_module(M)
    return M


def key_str(monoid: FiniteMonoid, key: ModuleKey) -> str:
    """Deterministic printable name of an iso-class."""
    if not key:
        return "0" if monoid.generators else "[0]"
    if not monoid.generators:
        return f"[{key_size(key)}]"
    parts = []
    for size, rows in key:
        body = ";".join(
            f"{monoid.elements[g]}:" + ",".join(str(v) for v in row) for g, row in zip(monoid.generators, rows)
        )
        parts.append(f"<{size}|{body}>")
    return "+".join(parts)


# -- enumeration ------------------------------------------------------------


_enum_lock = threading.Lock()
_enum_cache: Dict[Tuple[int, int], List[PointedModule]] = {}

ENUMERATION_BUDGET = 2_000_000


def enumerate_modules(monoid: FiniteMonoid, n: int) -> List[PointedModule]:
    """One representative per iso-class of modules of size n, sorted by key."""
    cache_key = (id(monoid), n)
    hit = _enum_cache.get(cache_key)
    if hit is not None:
        return hit
    if n > max_size_bound():
        raise TooLarge(f"size {n} exceeds bound {max_size_bound()}")
    gens = monoid.generators
    if (n + 1) ** (n * len(gens)) > ENUMERATION_BUDGET:
        raise TooLarge(f"enumerating modules of size {n} needs {(n + 1) ** (n * len(gens))} candidates")
    found: Dict[ModuleKey, PointedModule] = {}
    choices = [range(n + 1)] * n
    for maps in itertools.product(*(itertools.product(*choices) for _ in gens)):
        gm = {g: (0,) + tuple(m) for g, m in zip(gens, maps)}
        M = PointedModule.from_generator_maps(monoid, n, gm)
        try:
            validate_module(M)
        except BadAction:
            continue
        k = iso_classify(M)
        if k not in found:
            found[k] = module_from_key(monoid, k)
    out = [found[k] for k in sorted(found)]
    with _enum_lock:
        _enum_cache[cache_key] = out
    return out
