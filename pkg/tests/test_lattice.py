import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from affchar.characters import enumerate_lattice, lattice_problem
from affchar.errors import DimensionMismatch, NotPositiveDefinite
from affchar.lattice import QuadraticProblem, count_points, enumerate_box, enumerate_points, iter_points
from affchar.lie import root_system_data


def test_a1_examples():
    d = root_system_data("A1")
    assert enumerate_lattice(d, 4) == [(-2,), (-1,), (0,), (1,), (2,)]
    assert enumerate_lattice(d, 10, [-1]) == [(-2,), (-1,), (0,), (1,), (2,)]
    assert [n for n in range(-10, 11) if 2 * n * n - n <= 10] == [-2, -1, 0, 1, 2]


@pytest.mark.parametrize("t", ["A1", "A3", "D4", "E6", "E8", "B3", "G2"])
def test_order_zero_is_origin(t):
    d = root_system_data(t)
    assert enumerate_lattice(d, 0) == [(0,) * d.rank]


def test_a2_order1_support():
    pts = enumerate_lattice(root_system_data("A2"), 1)
    assert set(pts) == {(0, 0), (1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)}


@pytest.mark.parametrize("t,bound", [("A2", 6), ("B2", 5), ("G2", 4), ("A3", 3), ("D4", 2), ("C3", 3)])
def test_matches_exhaustive_box(t, bound):
    d = root_system_data(t)
    for shift in (None, [-1] * d.rank):
        prob = lattice_problem(d, bound, shift, 1 if shift is None else d.coxeter_h)
        assert enumerate_points(prob) == enumerate_box(prob)


@st.composite
def problems(draw):
    dim = draw(st.integers(1, 3))
    # L L^t + I is positive definite
    low = [[draw(st.integers(-2, 2)) if j <= i else 0 for j in range(dim)] for i in range(dim)]
    m = [[sum(low[i][k] * low[j][k] for k in range(dim)) + (i == j) for j in range(dim)] for i in range(dim)]
    scale = draw(st.integers(1, 3))
    lin = [draw(st.integers(-4, 4)) for _ in range(dim)]
    return QuadraticProblem.make(m, scale, lin, draw(st.integers(-2, 12)))


@given(problems())
def test_random_forms_match_exhaustive_box(prob):
    assert enumerate_points(prob) == enumerate_box(prob)


@given(problems(), st.integers(1, 7))
def test_chunking_does_not_change_output(prob, chunk):
    whole = [tuple(p) for pts, _ in iter_points(prob) for p in pts.tolist()]
    pieces = [tuple(p) for pts, _ in iter_points(prob, chunk=chunk) for p in pts.tolist()]
    assert pieces == whole


@given(problems())
def test_twice_values_are_exact(prob):
    for pts, twice in iter_points(prob):
        for p, v in zip(pts.tolist(), twice.tolist()):
            assert v == prob.twice_value_exact(p) <= 2 * prob.bound


def test_e8_theta_counts():
    # E8 theta series is 1 + 240 sum sigma_3(m) q^m
    d = root_system_data("E8")
    sigma3 = lambda m: sum(x**3 for x in range(1, m + 1) if m % x == 0)
    for order in range(4):
        expected = 1 + 240 * sum(sigma3(m) for m in range(1, order + 1))
        assert count_points(lattice_problem(d, order)) == expected


def test_bad_input():
    with pytest.raises(NotPositiveDefinite):
        enumerate_points(QuadraticProblem.make([[1, 2], [2, 1]], 1, None, 3))
    with pytest.raises(DimensionMismatch):
        QuadraticProblem.make([[2]], 1, [1, 2], 3)
    with pytest.raises(DimensionMismatch):
        lattice_problem(root_system_data("A2"), 3, [1])


def test_twice_value_large_entries_fall_back_to_integer_path():
    prob = QuadraticProblem.make([[2]], 1, None, 0)
    big = np.array([[3_000_000]], dtype=np.int64)
    assert prob.twice_value(big).tolist() == [2 * 3_000_000**2]
