"""Tail of the conjugacy: fixed point of T(R) = L^-1 R o f + L^-1 R0 on a grid.

Functions are sampled on a uniform grid over the cube [-1, 1]^n (which
contains the unit ball).  The tail is stored as R(x) = |x|^s phi(x) and
phi is evaluated off-grid by linear / multilinear interpolation.  Working
with phi keeps the order of vanishing at 0 exact; interpolating R itself
would reproduce linear modes, which T does not contract.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .._rational import is_exact, q
from .conjugacy import solve_jet_conjugacy
from .jets import JetPolynomial

__all__ = [
    "TailError",
    "Grid",
    "TailResult",
    "ConjugacyResult",
    "kappa",
    "default_epsilon",
    "tail_fixed_point",
    "build_conjugacy",
    "sweep_conjugacy",
]


class TailError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    axes: tuple
    step: float

    @classmethod
    def cube(cls, dim: int, step: float):
        m = int(round(2.0 / step))
        ax = np.linspace(-1.0, 1.0, m + 1)
        return cls(tuple(ax for _ in range(dim)), 2.0 / m)

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple:
        return tuple(len(a) for a in self.axes)

    def points(self) -> np.ndarray:
        mesh = np.meshgrid(*self.axes, indexing="ij")
        return np.stack(mesh, axis=-1)

    def midpoints(self) -> np.ndarray:
        mids = [(a[:-1] + a[1:]) / 2 for a in self.axes]
        mesh = np.meshgrid(*mids, indexing="ij")
        return np.stack(mesh, axis=-1)

    def interpolate(self, values: np.ndarray, at: np.ndarray) -> np.ndarray:
        """Linear interpolation of grid ``values`` (shape grid + (m,)) at points ``at``."""
        if self.dim == 1:
            x = at[..., 0]
            return np.stack([np.interp(x, self.axes[0], values[..., j]) for j in range(values.shape[-1])], axis=-1)
        interp = RegularGridInterpolator(self.axes, values, bounds_error=False, fill_value=None)
        return interp(at.reshape(-1, self.dim)).reshape(at.shape[:-1] + (values.shape[-1],))


def _weights_of(L):
    eig = np.linalg.eigvals(np.array(L, dtype=float))
    lam = np.log(np.abs(eig))
    return float(lam.min()), float(lam.max())


def default_epsilon(lam1: float, lam_l: float, s: float) -> float:
    return min(0.01, (lam1 - s * lam_l) / (2 * (s + 2)))


def kappa(lam1: float, lam_l: float, s: float, eps: float) -> float:
    """exp(-lambda_1 + eps + s*lambda_l + s*eps + eps)."""
    return math.exp(-lam1 + eps + s * lam_l + s * eps + eps)


def _radial(x, s):
    return np.linalg.norm(x, axis=-1, keepdims=True) ** s


@dataclass
class TailResult:
    values: np.ndarray
    phi: np.ndarray
    grid: Grid
    s: float
    log: list
    kappa: float
    iterations: int

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return _radial(x, self.s) * self.grid.interpolate(self.phi, x)

    @property
    def max_ratio(self) -> float:
        return max((rec["ratio"] for rec in self.log if rec["ratio"] is not None), default=0.0)


def _sup(a) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def tail_fixed_point(L, f, R0: np.ndarray, grid: Grid, s: float, eps: float | None = None, *,
                     tol: float = 1e-15, max_iter: int = 1000, noise: float = 1e-12) -> TailResult:
    """Iterate T(R) = L^-1 (R o f + R0) from R = 0 until successive iterates agree.

    Each log record has the sup-norm size of R_{k+1} - R_k on the grid and its
    ratio to the previous step (recorded while steps are above ``noise``).
    """
    Lf = np.array(L, dtype=float)
    lam1, lam_l = _weights_of(Lf)
    if lam_l >= 0:
        raise TailError("L must be a contraction (all weights negative)")
    eps = default_epsilon(lam1, lam_l, s) if eps is None else eps
    k = kappa(lam1, lam_l, s, eps)
    if not k < 1:
        raise TailError(f"contraction constant kappa = {k:.6g} >= 1")
    Linv = np.linalg.inv(Lf)
    pts = grid.points()
    fx = f(pts)
    if np.any(np.abs(fx) > 1.0 + 1e-12):
        raise TailError("f does not map the grid cube into itself")
    w = _radial(pts, s)
    wf = _radial(fx, s)
    inv_w = np.divide(1.0, w, out=np.zeros_like(w), where=w > 0)
    phi = np.zeros_like(R0, dtype=float)
    R = np.zeros_like(R0, dtype=float)
    log = []
    prev = None
    for it in range(1, max_iter + 1):
        new = (wf * grid.interpolate(phi, fx) + R0) @ Linv.T
        phi = new * inv_w
        step = _sup(new - R)
        ratio = step / prev if prev and prev > noise and step > noise else None
        log.append({"step": it, "diff": step, "ratio": ratio})
        R = new
        if step <= tol:
            return TailResult(R, phi, grid, s, log, k, it)
        prev = step
    raise TailError(f"tail iteration did not converge in {max_iter} steps (last step {step:.3g})")


def _holder_estimate(values, grid, alpha):
    """Hölder seminorm estimate over dyadic grid separations (log only)."""
    a = alpha if alpha > 0 else 1.0
    best = 0.0
    n = grid.shape[0]
    sep = 1
    while sep < n:
        for ax in range(grid.dim):
            lo = [slice(None)] * grid.dim
            hi = [slice(None)] * grid.dim
            lo[ax] = slice(0, n - sep)
            hi[ax] = slice(sep, n)
            d = np.max(np.abs(values[tuple(hi)] - values[tuple(lo)])) if n > sep else 0.0
            best = max(best, float(d) / (sep * grid.step) ** a)
        sep *= 2
    return best


@dataclass
class ConjugacyResult:
    hbar: JetPolynomial
    tail: np.ndarray
    tail_fn: TailResult
    grid: Grid
    kappa: float
    residual_sup: float
    residual_offgrid: float
    hhat_minus_id: float
    f_minus_L: float
    holder_estimate: float
    log: list = field(default_factory=list)
    s: float = 0.0
    eps: float = 0.0

    @property
    def max_ratio(self) -> float:
        return max((rec["ratio"] for rec in self.log if rec["ratio"] is not None), default=0.0)

    def hhat(self, x):
        """Evaluate h-bar + R at points of shape (..., n)."""
        x = np.asarray(x, dtype=float)
        return self.hbar(x) + self.tail_fn(x)

    def to_dict(self) -> dict:
        return {
            "hbar": self.hbar.to_dict(),
            "tail": {"shape": list(self.tail.shape), "values": self.tail.ravel().tolist(),
                     "step": self.grid.step},
            "kappa": self.kappa,
            "s": self.s,
            "eps": self.eps,
            "residual_sup": self.residual_sup,
            "residual_offgrid": self.residual_offgrid,
            "hhat_minus_id": self.hhat_minus_id,
            "f_minus_L": self.f_minus_L,
            "holder_estimate": self.holder_estimate,
            "max_ratio": self.max_ratio,
            "iterations": len(self.log),
        }

    def summary(self) -> dict:
        d = self.to_dict()
        d.pop("tail")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _exact_rows(L):
    return [[q(x) if is_exact(x) or isinstance(x, str) else q(Fraction(x).limit_denominator(10**12))
             for x in row] for row in L]


def build_conjugacy(L, f: JetPolynomial, s: float, *, step: float = 1e-3,
                    eps: float | None = None, tol: float = 1e-15) -> ConjugacyResult:
    """h-hat = h-bar + R with h-hat o f = L o h-hat on the grid.

    ``f`` is an exact polynomial map (a JetPolynomial whose degree is at least
    its true degree); its jet through d = floor(s) feeds the polynomial solve.
    """
    n = f.in_dim
    d = int(math.floor(s))
    if d < 1:
        raise TailError("s must be at least 1")
    L_exact = _exact_rows(L)
    lam1, lam_l = _weights_of(L_exact)
    if not s > lam1 / lam_l:
        raise TailError(f"need s > lambda_1/lambda_l = {lam1 / lam_l:.6g}")
    jet = JetPolynomial(f.coeffs, d, in_dim=n)
    H = solve_jet_conjugacy(L_exact, jet, d)
    Lf = np.array(L_exact, dtype=float)
    grid = Grid.cube(n, step)
    pts = grid.points()
    fx = f(pts)
    R0 = H(fx) - H(pts) @ Lf.T
    eps = default_epsilon(lam1, lam_l, s) if eps is None else eps
    tail = tail_fixed_point(L_exact, f, R0, grid, s, eps, tol=tol)
    R = tail.values
    hhat = H(pts) + R
    resid = H(fx) + tail(fx) - hhat @ Lf.T
    mids = grid.midpoints()
    fm = f(mids)
    hm = H(mids) + tail(mids)
    resid_mid = H(fm) + tail(fm) - hm @ Lf.T
    return ConjugacyResult(
        hbar=H,
        tail=R,
        tail_fn=tail,
        grid=grid,
        kappa=tail.kappa,
        residual_sup=_sup(resid),
        residual_offgrid=_sup(resid_mid),
        hhat_minus_id=_sup(hhat - pts),
        f_minus_L=_sup(fx - pts @ Lf.T),
        holder_estimate=_holder_estimate(R, grid, s - d),
        log=tail.log,
        s=s,
        eps=eps,
    )


def sweep_conjugacy(L, bump: JetPolynomial, epsilons, s: float, *, step: float = 1e-3) -> list:
    """||h-hat - id|| for f = L + e * bump over a list of perturbation sizes e."""
    out = []
    Lj = JetPolynomial.linear(_exact_rows(L), bump.degree)
    for e in epsilons:
        e_q = q(Fraction(e).limit_denominator(10**9)) if not is_exact(e) else q(e)
        scaled = JetPolynomial([{a: e_q * v for a, v in c.items()} for c in bump.coeffs],
                               bump.degree, in_dim=bump.in_dim)
        res = build_conjugacy(L, Lj + scaled, s, step=step)
        out.append({"epsilon": float(e), "hhat_minus_id": res.hhat_minus_id,
                    "f_minus_L": res.f_minus_L, "residual_sup": res.residual_sup,
                    "max_ratio": res.max_ratio, "kappa": res.kappa})
    return out
