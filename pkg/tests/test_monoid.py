import itertools
import random

import pytest
from hypothesis import given, strategies as st

from f1hall.monoid import (
    BadAction,
    BadUnit,
    BadZero,
    FiniteMonoid,
    ModuleMorphism,
    NotAssociative,
    NotCommutative,
    NotSubmodule,
    PointedModule,
    TooLarge,
    aut_count,
    aut_count_bruteforce,
    direct_sum,
    enumerate_modules,
    field_with_one_element,
    is_isomorphic_bruteforce,
    is_normal,
    iso_classify,
    module_from_key,
    quotient,
    restrict,
    submodule_sets,
    submodules,
    truncated_polynomial_monoid,
    validate_module,
)

F1 = field_with_one_element()
T3 = truncated_polynomial_monoid(3)


def f1_module(n):
    return PointedModule.trivial(F1, n)


def cyclic_t3():
    """{*, m, tm} with t(tm) = * ."""
    return PointedModule.from_json(T3, {"points": ["*", "m", "tm"], "base": "*", "action": {"t": {"m": "tm", "tm": "*"}}})


def test_builtin_monoids_validate():
    F1.validate()
    T3.validate()
    assert T3.elements == ("0", "1", "t", "t^2")
    assert T3.mul[T3.index["t"]][T3.index["t^2"]] == T3.zero


def test_monoid_violations():
    with pytest.raises(NotCommutative):
        FiniteMonoid(["0", "1", "a", "b"], [["0"] * 4, ["0", "1", "a", "b"], ["0", "a", "a", "a"], ["0", "b", "b", "b"]]).validate()
    with pytest.raises(BadUnit):
        FiniteMonoid(["0", "1"], [["0", "0"], ["0", "0"]]).validate()
    with pytest.raises(BadZero):
        FiniteMonoid(["0", "1"], [["1", "0"], ["0", "1"]]).validate()
    # a*a = b, a*b = a, b*b = b is commutative with unit and zero, but not associative
    bad = FiniteMonoid(
        ["0", "1", "a", "b"],
        [["0", "0", "0", "0"], ["0", "1", "a", "b"], ["0", "a", "b", "0"], ["0", "b", "0", "a"]],
    )
    with pytest.raises(NotAssociative):
        bad.validate()


def test_module_action_violation():
    M = cyclic_t3()
    act = [list(r) for r in M.act]
    t2 = T3.index["t^2"]
    act[t2][1] = 2  # t^2 m should be *, but t(t m) = * is forced elsewhere
    with pytest.raises(BadAction):
        validate_module(PointedModule(T3, 2, act))
    with pytest.raises(BadAction):
        PointedModule.from_json(T3, {"points": ["*", "m"], "action": {"t": {"m": "m"}}})
    with pytest.raises(BadAction):
        PointedModule.from_json(T3, {"points": ["*", "m"], "action": {}})


def test_normal_examples():
    small, big = f1_module(1), f1_module(2)
    assert is_normal(ModuleMorphism(small, big, (0, 1)))
    M = f1_module(3)
    Q, proj = quotient(M, {0, 1})
    assert is_normal(ModuleMorphism(M, Q, proj))
    collapse = ModuleMorphism(f1_module(2), f1_module(1), (0, 1, 1))
    assert not is_normal(collapse)


def test_submodule_examples():
    assert len(submodule_sets(f1_module(2))) == 4
    M = cyclic_t3()
    subs = submodule_sets(M)
    labels = sorted(sorted(M.labels[p] for p in S) for S in subs)
    assert labels == [["*"], ["*", "m", "tm"], ["*", "tm"]]
    assert len(submodules(PointedModule.zero_module(T3))) == 1


def test_quotient_examples():
    Q, _ = quotient(f1_module(2), {0, 1})
    assert Q.n == 1 and Q.labels == ("*", "m2")
    M = cyclic_t3()
    Q, _ = quotient(M, {0, 2})
    assert Q.labels == ("*", "m") and Q.act[T3.index["t"]] == (0, 0)
    Z, _ = quotient(M, range(M.n + 1))
    assert Z.n == 0
    with pytest.raises(NotSubmodule):
        quotient(M, {0, 1})


def test_direct_sum_examples():
    M = cyclic_t3()
    assert iso_classify(direct_sum(M, PointedModule.zero_module(T3))) == iso_classify(M)
    assert direct_sum(M, M).n == 2 * M.n
    assert iso_classify(direct_sum(f1_module(1), f1_module(1))) == iso_classify(f1_module(2))


def test_aut_examples():
    assert aut_count(f1_module(3)) == 6
    assert aut_count(cyclic_t3()) == 1
    a = PointedModule(F1, 2, f1_module(2).act, ["*", "x", "y"])
    b = PointedModule(F1, 2, f1_module(2).act, ["*", "p", "q"])
    assert iso_classify(a) == iso_classify(b)


def test_size_bound(monkeypatch):
    monkeypatch.setenv("F1HALL_MAX_SIZE", "3")
    with pytest.raises(TooLarge):
        submodule_sets(f1_module(4))
    with pytest.raises(TooLarge):
        iso_classify(f1_module(4))


def test_class_counts():
    # t^2 = 0: disjoint stars, so classes of size n are partitions of n
    T2 = truncated_polynomial_monoid(2)
    assert [len(enumerate_modules(T2, n)) for n in range(6)] == [1, 1, 2, 3, 5, 7]
    assert [len(enumerate_modules(F1, n)) for n in range(5)] == [1] * 5
    assert [len(enumerate_modules(T3, n)) for n in range(5)] == [1, 1, 2, 4, 8]


@pytest.mark.parametrize("n", range(1, 6))
def test_classes_pairwise_non_isomorphic(n):
    ms = enumerate_modules(T3, n)
    for a, b in itertools.combinations(ms, 2):
        assert not is_isomorphic_bruteforce(a, b)


@pytest.mark.parametrize("n", range(1, 6))
def test_aut_matches_bruteforce(n):
    for M in enumerate_modules(T3, n):
        assert aut_count(M) == aut_count_bruteforce(M)


def relabel(M: PointedModule, perm):
    """Apply a base-fixing permutation of points to M's action table."""
    f = (0,) + tuple(perm)
    inv = {v: i for i, v in enumerate(f)}
    act = [tuple(f[row[inv[p]]] for p in range(M.n + 1)) for row in M.act]
    return PointedModule(M.monoid, M.n, act)


@given(st.integers(1, 5), st.randoms(use_true_random=False))
def test_key_invariant_under_relabeling(n, rnd):
    for M in enumerate_modules(T3, n):
        perm = list(range(1, n + 1))
        rnd.shuffle(perm)
        N = relabel(M, perm)
        validate_module(N)
        assert iso_classify(N) == iso_classify(M)
        assert aut_count(N) == aut_count(M)


@pytest.mark.parametrize("n", range(0, 5))
def test_key_round_trip(n):
    for M in enumerate_modules(T3, n):
        k = iso_classify(M)
        assert iso_classify(module_from_key(T3, k)) == k


def test_inclusions_and_projections_normal():
    for n in range(4):
        for M in enumerate_modules(T3, n):
            for N in submodule_sets(M):
                sub, incl = restrict(M, N)
                assert is_normal(ModuleMorphism(sub, M, incl))
                Q, proj = quotient(M, N)
                assert is_normal(ModuleMorphism(M, Q, proj))


def test_morphism_validation():
    M = cyclic_t3()
    with pytest.raises(BadAction):
        ModuleMorphism(M, M, (0, 2, 1)).validate()
    with pytest.raises(BadAction):
        ModuleMorphism(M, M, (1, 1, 2)).validate()


def test_json_round_trip():
    M = cyclic_t3()
    N = PointedModule.from_json(T3, M.to_json())
    assert N.act == M.act
    assert FiniteMonoid.from_json(T3.to_json()).mul == T3.mul
