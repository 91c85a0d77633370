import pytest
from hypothesis import given, strategies as st

from f1hall.lattice import SL2Matrix, det2
from f1hall.monoid import field_with_one_element, truncated_polynomial_monoid
from f1hall.tate import (
    ConeMonoid,
    Unsupported,
    atlas,
    atlas_checks,
    check_cocycle,
    check_generation,
    check_generators_in_cone,
    check_glue_iso,
    check_overlap,
    check_prime_faces,
    check_relation_minimality,
    check_z_action,
    finite_primes,
    glue_map,
    spec_mon,
    transition_between,
    z_action,
)

charts = st.integers(-6, 6)


def test_chart_zero():
    C = ConeMonoid(0)
    assert C.inequalities == ((0, 1), (1, 1))
    assert C.generators == {"x": (1, 0), "y": (-1, 1), "q": (0, 1)}
    assert C.contains((3, -1)) is False and C.contains((-1, 1))


@given(charts)
def test_chart_generators(i):
    C = ConeMonoid(i)
    x, y, q = (C.generators[k] for k in "xyq")
    assert (x[0] + y[0], x[1] + y[1]) == q
    assert det2(x, y) == 1
    assert check_generators_in_cone(C)


@pytest.mark.parametrize("i", range(-3, 4))
def test_generation_and_minimality(i):
    C = ConeMonoid(i)
    assert check_generation(C)
    assert check_relation_minimality(C)


@given(charts)
def test_glue(i):
    assert glue_map(i) == SL2Matrix(0, 1, -1, 2)
    assert check_overlap(i) and check_glue_iso(i) and check_cocycle(i)


def test_transition_composes():
    assert transition_between(0, 2) == glue_map(0) @ glue_map(1)
    assert transition_between(1, 1) == SL2Matrix(1, 0, 0, 1)


@given(charts, st.integers(-3, 3))
def test_z_action(i, k):
    assert check_z_action(i, k)
    assert z_action(k).compose(z_action(-k)).is_identity()
    assert z_action(k).apply_chart(ConeMonoid(i)) == ConeMonoid(i + k)


def test_primes():
    names = sorted(P.name for P in spec_mon(ConeMonoid(0)))
    assert names == ["()", "(q,x)", "(q,x,y)", "(q,y)"]
    assert finite_primes(field_with_one_element()) == [frozenset({"0"})]
    assert finite_primes(truncated_polynomial_monoid(3)) == [frozenset({"0", "t", "t^2"})]
    for i in range(-2, 3):
        assert check_prime_faces(ConeMonoid(i))
    with pytest.raises(Unsupported):
        spec_mon(42)


def test_atlas():
    data = atlas(-1, 1)
    assert [c["index"] for c in data["charts"]] == [-1, 0, 1]
    assert len(data["transitions"]) == 2
    assert data["z_action"] == {"fan_matrix": [[1, 1], [0, 1]], "lattice_matrix": [[1, 0], [-1, 1]]}
    assert all(atlas_checks(-3, 3).values())
