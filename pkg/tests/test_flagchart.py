import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rootreg.flagchart import (
    FlagChartContext,
    OffCellError,
    check_tau_identities,
    qv_factor,
    tau,
    vq_factor,
)


def test_identity_factors():
    ctx = FlagChartContext((1, 2))
    q, v = qv_factor(ctx, np.eye(3))
    assert np.array_equal(q, np.eye(3)) and np.array_equal(v, np.eye(3))


def test_borel_2x2_example():
    ctx = FlagChartContext((1, 1), rational=True)
    q, v = qv_factor(ctx, [[2, 1], [1, 1]])
    assert (q == ctx.asarray([[1, 1], [0, 1]])).all()
    assert (v == ctx.asarray([[1, 0], [1, 1]])).all()


def test_off_cell_rejected():
    for rational in (False, True):
        ctx = FlagChartContext((1, 1), rational=rational)
        with pytest.raises(OffCellError):
            qv_factor(ctx, [[0, 1], [-1, 0]])


def test_tau_with_identity_q():
    ctx = FlagChartContext((1, 2), rational=True)
    v = ctx.random_V(random.Random(3))
    t = tau(ctx, ctx.eye(), v)
    assert t.defined and (t.tau_v == v).all() and (t.qbar == ctx.eye()).all()


def test_tau_diagonal_borel():
    ctx = FlagChartContext((1, 1), rational=True)
    a, s = Fraction(3), Fraction(5, 7)
    q = ctx.asarray([[a, 0], [0, 1 / a]])
    v = ctx.asarray([[1, 0], [s, 1]])
    t = tau(ctx, q, v)
    assert t.tau_v[1, 0] == s / a**2
    assert (t.qbar == ctx.eye()).all()


def test_tau_undefined_off_cell():
    ctx = FlagChartContext((1, 1), rational=True)
    # with q = [[1, b], [0, 1]] and subdiagonal s in v, the bottom-right entry of q v q^-1 is 1 - b s
    q = ctx.asarray([[1, 1], [0, 1]])
    v = ctx.asarray([[1, 0], [1, 1]])
    c = q.dot(v).dot(ctx.inv(q))
    assert c[1, 1] == 0
    assert not tau(ctx, q, v).defined


@pytest.mark.parametrize("blocks", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 1, 1), (1, 2, 1)])
def test_round_trips_exact(blocks):
    ctx = FlagChartContext(blocks, rational=True)
    rng = random.Random(sum(blocks))
    for _ in range(20):
        q, v = ctx.random_Q(rng), ctx.random_V(rng)
        M = q.dot(v)
        q2, v2 = qv_factor(ctx, M)
        assert (q2 == q).all() and (v2 == v).all()
        assert ctx.is_Q(q2) and ctx.is_V(v2)
        N = v.dot(q)
        v3, q3 = vq_factor(ctx, N)
        assert (v3 == v).all() and (q3 == q).all()


@pytest.mark.parametrize("blocks", [(1, 2), (2, 1, 1), (3, 3)])
def test_tau_defining_relation(blocks):
    # tau_q(v) q = qbar v, with tau_q(v) in V and qbar in Q
    ctx = FlagChartContext(blocks, rational=True)
    rng = random.Random(11)
    for _ in range(10):
        q, v = ctx.random_Q(rng), ctx.random_V(rng)
        t = tau(ctx, q, v)
        if not t.defined:
            continue
        qbar = t.transported(q)
        assert ctx.is_V(t.tau_v) and ctx.is_Q(qbar)
        assert (t.tau_v.dot(q) == qbar.dot(v)).all()


def test_normalizer_case_reduces_to_trivial_identities():
    ctx = FlagChartContext((1, 2))
    rep = check_tau_identities(ctx, 200, seed=1, identity_q=True)
    assert rep.ok and rep.max_residual <= 1e-12


def test_n3_float_report():
    ctx = FlagChartContext((1, 2))
    rep = check_tau_identities(ctx, 1000, seed=0)
    assert rep.ok and rep.max_residual <= 1e-10
    assert rep.samples == 1000 and rep.draws == 1000 + rep.skipped
    assert rep.skipped <= 100


def test_n4_rational_exact():
    ctx = FlagChartContext((2, 2), rational=True)
    rep = check_tau_identities(ctx, 100, seed=0)
    assert rep.ok and rep.max_residual == 0.0 and rep.ill_conditioned == 0


def test_report_is_deterministic():
    ctx = FlagChartContext((1, 1, 2))
    a = check_tau_identities(ctx, 100, seed=5).to_json()
    b = check_tau_identities(ctx, 100, seed=5).to_json()
    assert a == b


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=2, max_size=3), st.integers(0, 10**6))
def test_float_factorization_reconstructs(blocks, seed):
    ctx = FlagChartContext(tuple(blocks))
    rng = random.Random(seed)
    q, v = ctx.random_Q(rng), ctx.random_V(rng)
    M = q @ v
    q2, v2 = qv_factor(ctx, M)
    assert np.allclose(q2 @ v2, M, atol=1e-9 * max(1, np.abs(M).max()))
    assert ctx.is_Q(q2) and ctx.is_V(v2)


def test_draw_budget_is_respected():
    ctx = FlagChartContext((1, 1, 1, 1))
    rep = check_tau_identities(ctx, 50, seed=2, max_cond=1.5, max_draws=60)
    assert rep.draws == 60 and rep.samples < 50 and rep.ill_conditioned > 0
