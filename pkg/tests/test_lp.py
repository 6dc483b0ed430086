from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from rootreg.lp import feasible, fourier_motzkin, simplex


def _satisfies(A, b, s):
    return all(sum(Fraction(a) * x for a, x in zip(row, s)) <= bi for row, bi in zip(A, b))


def test_simple_box():
    A = [[1, 0], [-1, 0], [0, 1], [0, -1]]
    for method in ("simplex", "fm"):
        res = feasible(A, [1, 0, 2, -1], method=method)
        assert res.feasible and _satisfies(A, [1, 0, 2, -1], res.witness)
        assert not feasible(A, [1, -2, 2, -1], method=method).feasible


def test_unbounded_direction_is_fine():
    res = feasible([[1, 1]], [-3], method="simplex")
    assert res.feasible and _satisfies([[1, 1]], [-3], res.witness)


def test_no_constraints():
    assert feasible([], [], nvars=3).feasible


def _scipy_feasible(A, b, n):
    res = linprog(np.zeros(n), A_ub=np.array(A, dtype=float), b_ub=np.array(b, dtype=float),
                  bounds=[(None, None)] * n, method="highs")
    return res.status == 0


systems = st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=7),
    ).flatmap(lambda t: st.tuples(st.just(t[0]), st.just(t[1]),
                                  st.lists(st.integers(-4, 4), min_size=len(t[1]), max_size=len(t[1]))))
)


@settings(max_examples=300, deadline=None)
@given(systems)
def test_simplex_agrees_with_fourier_motzkin(sys_):
    n, A, b = sys_
    r1 = simplex(A, b, n)
    r2 = fourier_motzkin(A, b, n)
    assert r1.feasible == r2.feasible
    for r in (r1, r2):
        if r.feasible:
            assert _satisfies(A, b, r.witness)


@settings(max_examples=200, deadline=None)
@given(systems)
def test_agrees_with_floating_oracle(sys_):
    n, A, b = sys_
    # integer data with small entries: feasibility is robust for highs
    assert feasible(A, b).feasible == _scipy_feasible(A, b, n)


@pytest.mark.parametrize("n", [5, 6, 8])
def test_simplex_on_larger_systems(n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        A = rng.integers(-3, 4, size=(3 * n, n)).tolist()
        b = rng.integers(-2, 5, size=3 * n).tolist()
        res = feasible(A, b)
        assert res.method == "simplex"
        assert res.feasible == _scipy_feasible(A, b, n)
        if res.feasible:
            assert _satisfies(A, b, res.witness)
