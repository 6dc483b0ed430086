"""Chart algebra on SL(n,R)/Q for block parabolics Q.

Q is block upper triangular for a fixed block partition of n, V is the
opposite block lower unipotent group.  On the open cell every matrix splits
as q*v (``qv_factor``) and as v*q (``vq_factor``).  ``tau`` is the change of
chart map: for q in Q and v in V with q v q^-1 = qhat vhat,

    tau_v = vhat = tau_q(v),   qbar = qhat^-1,   tau_v q = qbar q v.

Matrices are numpy float arrays in float mode and numpy object arrays of
exact rationals in rational mode.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from ._rational import ONE, ZERO, q as _q

__all__ = [
    "OffCellError",
    "FlagChartContext",
    "TauResult",
    "IdentityReport",
    "qv_factor",
    "vq_factor",
    "tau",
    "check_tau_identities",
]

SINGULAR_TOL = 1e-8
RESIDUAL_TOL = 1e-10
MAX_COND = 3e3


class OffCellError(ValueError):
    """Matrix is not in the open Q*V (or V*Q) cell."""


class IllConditioned(ArithmeticError):
    """A pivot block is invertible but too badly conditioned for float checks."""


@dataclass(frozen=True)
class FlagChartContext:
    blocks: tuple
    rational: bool = False

    def __init__(self, blocks, rational: bool = False):
        blocks = tuple(int(b) for b in blocks)
        if not blocks or any(b <= 0 for b in blocks):
            raise ValueError("blocks must be positive integers")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "rational", bool(rational))

    @property
    def n(self) -> int:
        return sum(self.blocks)

    @property
    def offsets(self):
        out, k = [], 0
        for b in self.blocks:
            out.append((k, k + b))
            k += b
        return out

    # -- matrix helpers ----------------------------------------------------
    def asarray(self, M):
        if self.rational:
            return np.array([[_q(x) for x in row] for row in np.asarray(M, dtype=object)], dtype=object)
        return np.asarray(M, dtype=float)

    def eye(self, k=None):
        k = self.n if k is None else k
        if self.rational:
            out = np.full((k, k), ZERO, dtype=object)
            for i in range(k):
                out[i, i] = ONE
            return out
        return np.eye(k)

    def inv(self, M):
        if self.rational:
            try:
                return np.array(linalg.inverse(M.tolist()), dtype=object)
            except ZeroDivisionError:
                raise OffCellError("singular matrix") from None
        return np.linalg.inv(M)

    def _check_block(self, D, max_cond=None, scale=None):
        if self.rational:
            if linalg.rank(D.tolist()) < D.shape[0]:
                raise OffCellError("not in Q·V cell: a trailing block minor is singular")
            return
        sv = np.linalg.svd(D, compute_uv=False)
        if sv[-1] < SINGULAR_TOL:
            raise OffCellError("not in Q·V cell: a trailing block minor is singular")
        if max_cond is not None:
            ref = sv[0] if scale is None else max(scale, sv[0])
            if ref > max_cond * sv[-1]:
                raise IllConditioned(f"relative pivot size {sv[-1] / ref:.3g}")

    def is_Q(self, M) -> bool:
        M = self.asarray(M)
        for bi, (r0, r1) in enumerate(self.offsets):
            for (c0, c1) in self.offsets[:bi]:
                if np.any(M[r0:r1, c0:c1] != 0):
                    return False
            blk = M[r0:r1, r0:r1]
            if self.rational:
                if linalg.rank(blk.tolist()) < r1 - r0:
                    return False
            elif np.linalg.svd(blk, compute_uv=False)[-1] < SINGULAR_TOL:
                return False
        return True

    def is_V(self, M) -> bool:
        M = self.asarray(M)
        for bi, (r0, r1) in enumerate(self.offsets):
            for (c0, c1) in self.offsets[bi + 1:]:
                if np.any(M[r0:r1, c0:c1] != 0):
                    return False
            if not np.all(M[r0:r1, r0:r1] == self.eye(r1 - r0)):
                return False
        return True

    # -- random elements -----------------------------------------------------
    def _scalar(self, rng, lo, hi):
        if self.rational:
            den = rng.randint(1, 4)
            return _q(rng.randint(int(lo * den), int(hi * den)), den)
        return rng.uniform(lo, hi)

    def _diag(self, rng):
        if self.rational:
            a, b = rng.randint(2, 4), rng.randint(2, 4)
            mag = _q(max(a, b), min(a, b)) if rng.random() < 0.5 else _q(min(a, b), max(a, b))
            mag = mag if mag <= 2 else _q(2)
        else:
            mag = rng.uniform(0.5, 2.0)
        return mag if rng.random() < 0.5 else -mag

    def random_Q(self, rng: random.Random):
        """Block upper triangular: unit upper triangular times diagonal, entries bounded."""
        n = self.n
        U = self.eye()
        for i in range(n):
            for j in range(i + 1, n):
                U[i, j] = self._scalar(rng, -1, 1)
        L = self.eye()
        for (r0, r1) in self.offsets:
            for i in range(r0, r1):
                for j in range(r0, i):
                    L[i, j] = self._scalar(rng, -1, 1)
        Dg = self.eye()
        for i in range(n):
            Dg[i, i] = self._diag(rng)
        return L.dot(Dg).dot(U)

    def random_V(self, rng: random.Random):
        v = self.eye()
        for bi, (r0, r1) in enumerate(self.offsets):
            for (c0, c1) in self.offsets[:bi]:
                for i in range(r0, r1):
                    for j in range(c0, c1):
                        v[i, j] = self._scalar(rng, -1, 1)
        return v


def qv_factor(ctx: FlagChartContext, M, max_cond=None):
    """M = q v with q in Q and v in V, by bottom-right block elimination."""
    M = ctx.asarray(M)
    n = ctx.n
    if M.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix")
    q = M.copy()
    v = ctx.eye()
    work = M.copy()
    scale = None if ctx.rational else np.linalg.norm(M, 2)
    for (r0, r1) in reversed(ctx.offsets[1:]):
        A = work[:r0, :r0]
        B = work[:r0, r0:r1]
        C = work[r0:r1, :r0]
        D = work[r0:r1, r0:r1]
        ctx._check_block(D, max_cond, scale)
        Dinv = ctx.inv(D)
        v[r0:r1, :r0] = Dinv.dot(C)
        q[:r0, r0:r1] = B
        q[r0:r1, r0:r1] = D
        q[r0:r1, :r0] = ZERO if ctx.rational else 0.0
        work = A - B.dot(Dinv).dot(C)
    r1 = ctx.offsets[0][1]
    ctx._check_block(work, max_cond, scale)
    q[:r1, :r1] = work
    return q, v


def vq_factor(ctx: FlagChartContext, M):
    """M = v q with v in V and q in Q, by top-left block elimination."""
    M = ctx.asarray(M)
    v = ctx.eye()
    q = M.copy()
    work = M.copy()
    base = 0
    for (r0, r1) in ctx.offsets[:-1]:
        k = r1 - r0
        A = work[:k, :k]
        B = work[:k, k:]
        C = work[k:, :k]
        ctx._check_block(A)
        CA = C.dot(ctx.inv(A))
        v[r1:, r0:r1] = CA
        q[r0:r1, r0:] = work[:k, :]
        q[r1:, r0:r1] = ZERO if ctx.rational else 0.0
        work = work[k:, k:] - CA.dot(B)
        base = r1
    ctx._check_block(work)
    q[base:, base:] = work
    return v, q


@dataclass
class TauResult:
    tau_v: object
    qbar: object
    defined: bool

    def transported(self, q):
        """The Q-element q-bar with tau_q(v) q = q-bar v."""
        return self.qbar.dot(q)


def tau(ctx: FlagChartContext, q, v, max_cond=None) -> TauResult:
    """tau_q(v); ``defined`` is False when q v q^-1 leaves the Q*V cell.

    With ``max_cond`` set, float pivots worse than that raise IllConditioned.
    """
    q = ctx.asarray(q)
    v = ctx.asarray(v)
    c = q.dot(v).dot(ctx.inv(q))
    try:
        qhat, vhat = qv_factor(ctx, c, max_cond)
    except OffCellError:
        return TauResult(None, None, False)
    return TauResult(vhat, ctx.inv(qhat), True)


@dataclass
class IdentityReport:
    """Outcome of a fuzz run.

    ``samples`` counts evaluated samples; ``draws`` counts all random draws,
    including the ``skipped`` ones (off-cell, or ``ill_conditioned`` near the
    cell boundary) that were replaced by fresh draws.
    """

    samples: int
    skipped: int = 0
    max_residual: float = 0.0
    violations: list = field(default_factory=list)
    ill_conditioned: int = 0
    draws: int = 0

    def as_dict(self) -> dict:
        return {
            "samples": self.samples,
            "draws": self.draws,
            "skipped": self.skipped,
            "ill_conditioned": self.ill_conditioned,
            "max_residual": self.max_residual,
            "violations": self.violations,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @property
    def ok(self) -> bool:
        return not self.violations and self.samples > 0


def _residual(ctx, X, Y) -> float:
    if ctx.rational:
        return 0.0 if np.all(X == Y) else float(np.max(np.abs((X - Y).astype(float))))
    return float(np.max(np.abs(X - Y)) / max(1.0, np.max(np.abs(Y))))


def _identity_residuals(ctx, q, qp, v, u, max_cond=None):
    """Residuals of the four chart identities, or None if some tau is undefined."""

    def tau(ctx, q, v):
        return _tau(ctx, q, v, max_cond)

    t = tau(ctx, q, v)
    if not t.defined:
        return None
    qbar = t.transported(q)
    vinv = ctx.inv(v)
    tinv = ctx.inv(t.tau_v)
    out = []
    a = tau(ctx, qbar, vinv)
    b = tau(ctx, ctx.inv(qbar), tinv)
    c1 = tau(ctx, qp, t.tau_v)
    c2 = tau(ctx, qp.dot(q), v)
    d1 = tau(ctx, qbar, u)
    d2 = tau(ctx, q, u.dot(v))
    if not all(x.defined for x in (a, b, c1, c2, d1, d2)):
        return None
    out.append(_residual(ctx, a.tau_v, tinv))
    out.append(_residual(ctx, b.tau_v, vinv))
    out.append(_residual(ctx, c1.tau_v, c2.tau_v))
    out.append(_residual(ctx, d1.tau_v.dot(t.tau_v), d2.tau_v))
    return out


def check_tau_identities(ctx: FlagChartContext, samples: int, seed: int = 0, *,
                         tol: float = RESIDUAL_TOL, identity_q: bool = False,
                         max_cond: float | None = MAX_COND, max_draws: int | None = None) -> IdentityReport:
    """Fuzz the inverse, cocycle and product identities of tau on random inputs.

    Draws on which some tau is undefined are replaced.  In float mode so are
    draws where a pivot block's smallest singular value is below
    norm/``max_cond`` of the matrix being factored: they sit next to the cell
    boundary, where tau itself amplifies rounding beyond the tolerance.
    At most ``max_draws`` (default 10 * samples) draws are made.
    """
    if ctx.rational:
        max_cond = None
    if samples < 1:
        raise ValueError("samples must be >= 1")
    max_draws = 10 * samples if max_draws is None else max_draws
    rng = random.Random(seed)
    report = IdentityReport(0)
    while report.samples < samples and report.draws < max_draws:
        report.draws += 1
        if identity_q:
            q = qp = ctx.eye()
        else:
            q, qp = ctx.random_Q(rng), ctx.random_Q(rng)
        v, u = ctx.random_V(rng), ctx.random_V(rng)
        try:
            res = _identity_residuals(ctx, q, qp, v, u, max_cond)
        except IllConditioned:
            report.ill_conditioned += 1
            res = None
        except (OffCellError, np.linalg.LinAlgError):
            res = None
        if res is None:
            report.skipped += 1
            continue
        k = report.samples
        report.samples += 1
        worst = max(res)
        report.max_residual = max(report.max_residual, worst)
        bad = [i + 1 for i, r in enumerate(res) if (r > tol if not ctx.rational else r != 0)]
        if bad:
            report.violations.append({"sample": k, "draw": report.draws - 1, "identities": bad, "residual": worst})
    return report


_tau = tau
