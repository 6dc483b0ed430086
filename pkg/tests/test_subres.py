import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from rootreg.subres import (
    ConjugacyError,
    FrameError,
    Grid,
    JetError,
    JetPolynomial,
    LyapunovWeights,
    TailError,
    build_conjugacy,
    degree_bound,
    evaluation_frame,
    jet_compose,
    jet_invert,
    kappa,
    solve_jet_conjugacy,
    subresonant_basis,
    tail_fixed_point,
)
from jetgen import random_case, random_jet

F = Fraction


def jet1(coeffs, d=2):
    """1-dim jet from [a1, a2, ...] (coefficients of x, x^2, ...)."""
    return JetPolynomial([{(k + 1,): F(c) for k, c in enumerate(coeffs)}], d, in_dim=1)


# -- weights and bases ------------------------------------------------------

def test_single_weight_is_linear_only():
    W = LyapunovWeights([-1], [3])
    basis, dim = subresonant_basis(W)
    assert all(sum(a) == 1 for _, a in basis) and dim == 9


def test_two_weight_basis():
    W = LyapunovWeights([-2, -1])
    basis, dim = subresonant_basis(W)
    assert dim == 4
    assert {a for j, a in basis if j == 0} == {(1, 0), (0, 1), (0, 2)}
    assert {a for j, a in basis if j == 1} == {(0, 1)}


def test_degree_bound_floor():
    assert degree_bound(LyapunovWeights([-3.1, -1])) == 3
    assert degree_bound(LyapunovWeights([F(-7, 2), -1])) == 3
    assert degree_bound(LyapunovWeights([-3, -1])) == 3


def test_weights_validation():
    for vals in ([-1, -2], [0, -1], [-1, 1]):
        with pytest.raises(ValueError):
            LyapunovWeights(vals)


def _brute_basis(W, d):
    cw = W.coordinate_weights
    n = len(cw)
    out = set()
    for j in range(n):
        for k in range(1, d + 1):
            for alpha in np.ndindex(*(k + 1,) * n):
                if sum(alpha) == k and cw[j] <= sum(a * w for a, w in zip(alpha, cw)):
                    out.add((j, tuple(alpha)))
    return out


@pytest.mark.parametrize("vals,mults", [([-3, -1], [1, 1]), ([-4, -2, -1], [1, 1, 1]), ([-5, -2], [2, 1]),
                                        ([F(-7, 3), F(-1, 2)], [1, 2])])
def test_basis_matches_brute_force(vals, mults):
    W = LyapunovWeights(vals, mults)
    basis, dim = subresonant_basis(W)
    assert set(basis) == _brute_basis(W, degree_bound(W)) and dim == len(basis)


# -- composition and inversion ----------------------------------------------

def test_identity_composition():
    f = jet1([3, 5])
    assert jet_compose(JetPolynomial.identity(1, 2), f) == f


def test_one_dim_compose():
    a, b, c, e = F(2), F(3), F(5), F(7)
    H = jet_compose(jet1([c, e]), jet1([a, b]))
    assert H.coefficient(0, (1,)) == c * a
    assert H.coefficient(0, (2,)) == c * b + e * a * a


def test_one_dim_invert():
    a, b = F(3), F(-2)
    G = jet_invert(jet1([a, b]))
    assert G.coefficient(0, (1,)) == 1 / a
    assert G.coefficient(0, (2,)) == -b / a**3


def test_identity_inverse():
    I = JetPolynomial.identity(LyapunovWeights([-2, -1]), 3)
    assert jet_invert(I) == I


def test_singular_linear_part():
    with pytest.raises(JetError):
        jet_invert(jet1([0, 1]))


def _sympy_compose(G, Fj):
    xs = sympy.symbols(f"x0:{Fj.in_dim}")
    t = sympy.Symbol("t")
    fx = [sum(sympy.Rational(int(v.numerator), int(v.denominator)) * sympy.prod([x**e for x, e in zip(xs, a)])
              for a, v in c.items()) for c in Fj.coeffs]
    out = []
    for c in G.coeffs:
        expr = sum(sympy.Rational(int(v.numerator), int(v.denominator)) * sympy.prod([y**e for y, e in zip(fx, a)])
                   for a, v in c.items())
        # truncate by total degree using a scaling variable
        scaled = sympy.expand(expr.subs({x: t * x for x in xs}, simultaneous=True))
        poly = sympy.Poly(scaled, t)
        kept = sum(poly.coeff_monomial(t**k) for k in range(0, Fj.degree + 1))
        out.append(sympy.Poly(sympy.expand(kept), *xs))
    return out


@pytest.mark.parametrize("seed", range(12))
def test_compose_matches_sympy(seed):
    rng, W, d = random_case(seed, max_dim=2, max_degree=4)
    G, Fj = random_jet(rng, W, d), random_jet(rng, W, d)
    H = jet_compose(G, Fj)
    oracle = _sympy_compose(G, Fj)
    for j, poly in enumerate(oracle):
        got = {a: F(v) for a, v in H.coeffs[j].items()}
        want = {tuple(m): F(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs()) if c != 0}
        assert got == want


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_double_inversion(seed):
    rng, W, d = random_case(seed)
    E = random_jet(rng, W, d)
    assert jet_invert(jet_invert(E)) == E


def test_compose_checks_shapes():
    W = LyapunovWeights([-2, -1])
    with pytest.raises(JetError):
        jet_compose(JetPolynomial.identity(W, 3), JetPolynomial.identity(W, 2))
    with pytest.raises(JetError):
        jet_compose(JetPolynomial.identity(3, 2), JetPolynomial.identity(2, 2))


def test_forbidden_terms_detected():
    W = LyapunovWeights([-2, -1])
    bad = JetPolynomial([{(1, 0): 1}, {(0, 1): 1, (0, 2): 1}], 2, in_weights=W, out_weights=W)
    assert not bad.is_subresonant() and bad.forbidden_terms() == [(1, (0, 2))]


def test_float_evaluation_matches_exact():
    rng, W, d = random_case(4)
    E = random_jet(rng, W, d)
    pt = [F(1, 3), F(-2, 5), F(1, 7)][: E.in_dim]
    exact = [float(v) for v in E(pt)]
    approx = E(np.array([[float(x) for x in pt]]))[0]
    assert np.allclose(exact, approx, rtol=1e-14)


# -- evaluation frames ------------------------------------------------------

def test_frame_one_dim():
    W = LyapunovWeights([-1])
    fr = evaluation_frame(W, points=[[F(1, 2)]])
    assert fr.rank == fr.dimension == 1


def test_frame_two_dim_random():
    fr = evaluation_frame(LyapunovWeights([-2, -1]), seed=3)
    assert fr.rank == fr.dimension == 4
    assert all(sum(x * x for x in p) < 1 for p in fr.points)


def test_frame_degenerate_points():
    with pytest.raises(FrameError) as err:
        evaluation_frame(LyapunovWeights([-2, -1]), points=[[F(1, k), 0] for k in range(2, 7)])
    assert err.value.rank < err.value.needed == 4


# -- polynomial conjugacy ---------------------------------------------------

def test_conjugacy_of_linear_map_is_identity():
    L = [[F(1, 4), 0], [0, F(1, 2)]]
    f = JetPolynomial.linear(L, 3)
    assert solve_jet_conjugacy(L, f) == JetPolynomial.identity(2, 3)


def test_one_dim_conjugacy_coefficient():
    L = [[F(1, 2)]]
    H = solve_jet_conjugacy(L, jet1([F(1, 2), F(1, 10)]), 2)
    # h o f = L o h with h = x + c x^2 gives c = e / (lambda - lambda^2)
    assert H.coefficient(0, (2,)) == F(1, 10) / (F(1, 2) - F(1, 4))


def test_resonant_term_without_conjugacy_is_reported():
    L = [[F(1, 4), 0], [0, F(1, 2)]]
    f = JetPolynomial([{(1, 0): F(1, 4), (0, 2): F(1, 3)}, {(0, 1): F(1, 2)}], 2, in_dim=2)
    with pytest.raises(ConjugacyError) as err:
        solve_jet_conjugacy(L, f)
    assert err.value.degree == 2


def test_resonant_conjugate_is_solved():
    # f = h0^-1 o L o h0 is conjugate to L by construction, including resonant directions
    L = [[F(1, 4), 0], [0, F(1, 2)]]
    h0 = JetPolynomial([{(1, 0): 1, (0, 2): F(2, 3), (1, 1): F(1, 5)}, {(0, 1): 1, (0, 2): F(-1, 2)}], 3, in_dim=2)
    Lj = JetPolynomial.linear(L, 3)
    f = jet_compose(jet_invert(h0), jet_compose(Lj, h0))
    H = solve_jet_conjugacy(L, f)
    assert jet_compose(H, f) == jet_compose(Lj, H)


def test_conjugacy_preconditions():
    L = [[F(1, 2)]]
    with pytest.raises(ConjugacyError):
        solve_jet_conjugacy(L, jet1([F(1, 3), 1]))
    shifted = JetPolynomial([{(0,): 1, (1,): F(1, 2)}], 2, in_dim=1)
    with pytest.raises(ConjugacyError):
        solve_jet_conjugacy(L, shifted)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_random_diagonal_conjugacy(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    L = [[F(int(rng.integers(1, 9)), 10) if i == j else F(0) for j in range(n)] for i in range(n)]
    h0_coeffs = [{tuple(int(k == j) for k in range(n)): F(1)} for j in range(n)]
    for j in range(n):
        for _ in range(2):
            a = tuple(int(x) for x in rng.multinomial(int(rng.integers(2, 4)), [1 / n] * n))
            h0_coeffs[j][a] = F(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
    h0 = JetPolynomial(h0_coeffs, 3, in_dim=n)
    Lj = JetPolynomial.linear(L, 3)
    f = jet_compose(jet_invert(h0), jet_compose(Lj, h0))
    H = solve_jet_conjugacy(L, f)
    assert jet_compose(H, f) == jet_compose(Lj, H)


# -- tail and the full construction -----------------------------------------

def test_zero_source_gives_zero_tail():
    grid = Grid.cube(1, 1e-2)
    pts = grid.points()
    res = tail_fixed_point([[0.5]], lambda x: 0.5 * x, np.zeros_like(pts), grid, 2.0)
    assert np.all(res.values == 0) and res.iterations == 1


def test_kappa_at_least_one_rejected():
    grid = Grid.cube(1, 1e-2)
    pts = grid.points()
    # s below lambda_1/lambda_l leaves kappa >= 1
    assert kappa(math.log(0.5), math.log(0.5), 0.5, 0.01) > 1
    with pytest.raises(TailError):
        tail_fixed_point([[0.5]], lambda x: 0.5 * x, np.zeros_like(pts), grid, 0.5, 0.01)


def test_linear_map_is_its_own_conjugacy():
    L = [[F(1, 2)]]
    res = build_conjugacy(L, JetPolynomial.linear(L, 2), 2.0, step=1e-2)
    assert res.residual_sup == 0.0 and res.hhat_minus_id == 0.0


def test_refinement_reduces_offgrid_error():
    L = [[F(1, 2)]]
    f = jet1([F(1, 2), F(1, 10)], 2)
    coarse = build_conjugacy(L, f, 2.0, step=2e-3)
    fine = build_conjugacy(L, f, 2.0, step=1e-3)
    assert fine.residual_sup <= 1e-8 and coarse.residual_sup <= 1e-8
    # linear interpolation: off-grid error scales like step^2
    assert 3.0 < coarse.residual_offgrid / fine.residual_offgrid < 5.0


def test_two_dim_conjugacy():
    L = [[F(1, 4), 0], [0, F(1, 2)]]
    f = JetPolynomial([{(1, 0): F(1, 4), (1, 1): F(1, 20)}, {(0, 1): F(1, 2), (0, 2): F(1, 20)}], 2, in_dim=2)
    res = build_conjugacy(L, f, 2.5, step=2e-2)
    assert res.residual_sup <= 1e-8
    assert res.max_ratio <= res.kappa * 1.01
