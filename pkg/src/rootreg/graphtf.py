"""Graph transform for maps close to a block-hyperbolic linear map.

E1 + E2 carries the max norm ||(x, y)|| = max(|x|, |y|) with Euclidean
norms on each factor.  A map f = T + N with T = diag(A1, A2) pushes the
graph of a 1-Lipschitz sigma: W -> E2 forward to the graph of Gamma(sigma)
over g_sigma(W), where g_sigma(x) = f1(x, sigma(x)).

Graph functions are evaluated exactly (up to a 1e-10 root-finding
residual): Gamma^k(sigma) at a point x-hat is found by solving
pi_1 f_k ... f_1 (w, sigma(w)) = x-hat for w and pushing (w, sigma(w)) forward.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GraphTransformError",
    "HypothesisError",
    "HyperbolicBlockMap",
    "GraphFunction",
    "random_block_map",
    "sine_graph",
    "graph_transform",
    "domain_bounds_check",
    "pointwise_contraction_check",
    "iterate_graph_transform",
    "window_ok",
    "measure_lipschitz",
    "check_instance",
    "ball_samples",
]

INVERT_TOL = 1e-10
SLACK = 1.05


class GraphTransformError(RuntimeError):
    def __init__(self, message, point=None, step=None):
        super().__init__(message)
        self.point = point
        self.step = step


class HypothesisError(ValueError):
    pass


def _norm(v):
    return np.linalg.norm(v, axis=-1)


@dataclass
class HyperbolicBlockMap:
    """f(x, y) = (A1 x + n1(x, y), A2 y + n2(x, y)) with Lip(n) <= delta."""

    A1: np.ndarray
    A2: np.ndarray
    lam: float
    eps: float
    mu: float
    delta: float = 0.0
    nonlinearity: object = None

    def __post_init__(self):
        self.A1 = np.atleast_2d(np.asarray(self.A1, dtype=float))
        self.A2 = np.atleast_2d(np.asarray(self.A2, dtype=float))
        s1 = np.linalg.svd(self.A1, compute_uv=False)
        s2 = np.linalg.svd(self.A2, compute_uv=False)
        tol = 1e-12
        if not s2[0] <= self.lam + tol:
            raise HypothesisError(f"||A2|| = {s2[0]:.6g} exceeds lambda = {self.lam}")
        if not 0 < self.lam < 1 - self.eps < 1 + tol:
            raise HypothesisError("need 0 < lambda < 1 - eps <= 1")
        if not s1[-1] >= 1 - self.eps - tol:
            raise HypothesisError(f"||A1^-1||^-1 = {s1[-1]:.6g} below 1 - eps")
        if not s1[0] <= self.mu + tol:
            raise HypothesisError(f"||A1|| = {s1[0]:.6g} exceeds mu = {self.mu}")
        if self.nonlinearity is None and self.delta < 0:
            raise HypothesisError("delta must be nonnegative")

    @property
    def k1(self) -> int:
        return self.A1.shape[0]

    @property
    def k2(self) -> int:
        return self.A2.shape[0]

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float).reshape(-1, self.k1)
        y = np.asarray(y, dtype=float).reshape(-1, self.k2)
        u = x @ self.A1.T
        v = y @ self.A2.T
        if self.nonlinearity is not None:
            n1, n2 = self.nonlinearity(x, y)
            u = u + n1
            v = v + n2
        return u, v

    def hypothesis_bound(self) -> float:
        return min(1.0 / (1.0 - self.eps), (1.0 - self.eps - self.lam) / 2.0)

    def check_hypotheses(self):
        if not self.delta < self.hypothesis_bound():
            raise HypothesisError(
                f"delta = {self.delta:.6g} violates delta < min(1/(1-eps), (1-eps-lambda)/2)"
                f" = {self.hypothesis_bound():.6g}")

    def to_dict(self) -> dict:
        return {"A1": self.A1.tolist(), "A2": self.A2.tolist(), "lambda": self.lam,
                "eps": self.eps, "mu": self.mu, "delta": self.delta}


class _SineNonlinearity:
    """delta-Lipschitz (max norm) map v -> scale * M sin(B v + c) - scale * M sin(c)."""

    def __init__(self, rng, k1, k2, delta, terms=3):
        n = k1 + k2
        self.k1 = k1
        B = rng.normal(size=(terms * n, n)) * rng.uniform(0.5, 3.0)
        M = rng.normal(size=(n, terms * n))
        self.c = rng.uniform(-math.pi, math.pi, size=terms * n)
        # |v|_2 <= sqrt(2) ||v||_max on E1 + E2, and ||w||_max <= |w|_2
        lip = math.sqrt(2) * np.linalg.norm(M, 2) * np.linalg.norm(B, 2)
        self.B, self.M = B, M * (delta / lip)
        self.offset = np.sin(self.c) @ self.M.T

    def __call__(self, x, y):
        v = np.concatenate([x, y], axis=-1)
        out = np.sin(v @ self.B.T + self.c) @ self.M.T - self.offset
        return out[..., : self.k1], out[..., self.k1:]


def _random_orthogonal(rng, k):
    Qm, R = np.linalg.qr(rng.normal(size=(k, k)))
    return Qm * np.sign(np.diag(R))


def random_block_map(rng: np.random.Generator, k1: int, k2: int, *, lam=None, eps=None,
                     delta_fraction=None) -> HyperbolicBlockMap:
    """Random instance satisfying the graph-transform hypotheses."""
    lam = rng.uniform(0.2, 0.7) if lam is None else lam
    eps = rng.uniform(0.0, min(0.2, 0.9 * (1 - lam))) if eps is None else eps
    s1 = rng.uniform(1 - eps, 1.5, size=k1)
    s1[0] = 1 - eps
    A1 = _random_orthogonal(rng, k1) @ np.diag(s1) @ _random_orthogonal(rng, k1)
    s2 = rng.uniform(0.0, lam, size=k2)
    A2 = _random_orthogonal(rng, k2) @ np.diag(s2) @ _random_orthogonal(rng, k2)
    mu = float(np.linalg.svd(A1, compute_uv=False)[0])
    frac = rng.uniform(0.1, 0.9) if delta_fraction is None else delta_fraction
    bound = min(1.0 / (1.0 - eps), (1.0 - eps - lam) / 2.0)
    delta = frac * bound
    nl = _SineNonlinearity(rng, k1, k2, delta) if delta > 0 else None
    return HyperbolicBlockMap(A1, A2, lam, eps, mu, delta, nl)


@dataclass
class GraphFunction:
    """sigma: E1(radius) -> E2, possibly the k-th graph transform of a base function.

    ``base`` is a vectorised callable (N, k1) -> (N, k2).  ``maps`` lists the
    block maps applied so far, earliest first.
    """

    base: object
    k1: int
    k2: int
    radius: float
    lip_bound: float = 1.0
    maps: tuple = ()

    def __call__(self, x):
        x = np.asarray(x, dtype=float).reshape(-1, self.k1)
        if not self.maps:
            return np.asarray(self.base(x), dtype=float).reshape(-1, self.k2)
        w = _invert_chain(self, x)
        return _push(self.base, self.maps, w)[1]

    def graph_points(self, x):
        x = np.asarray(x, dtype=float).reshape(-1, self.k1)
        return x, self(x)


def _push(base, maps, w):
    x = w
    y = np.asarray(base(w), dtype=float).reshape(len(w), -1)
    for f in maps:
        x, y = f(x, y)
    return x, y


def _invert_chain(sigma: GraphFunction, target, tol=INVERT_TOL, max_iter=100):
    """Solve pi_1 f_k...f_1(w, base(w)) = target, batched damped Newton."""
    P = np.eye(sigma.k1)
    for f in sigma.maps:
        P = f.A1 @ P
    w = np.linalg.solve(P, target.T).T
    h = 1e-7
    for _ in range(max_iter):
        g = _push(sigma.base, sigma.maps, w)[0]
        r = g - target
        err = _norm(r)
        if np.all(err <= tol):
            return w
        J = np.empty((len(w), sigma.k1, sigma.k1))
        for j in range(sigma.k1):
            e = np.zeros(sigma.k1)
            e[j] = h
            J[:, :, j] = (_push(sigma.base, sigma.maps, w + e)[0] - g) / h
        step = np.linalg.solve(J, r[..., None])[..., 0]
        t = np.ones(len(w))
        for _ in range(20):
            trial = w - t[:, None] * step
            new_err = _norm(_push(sigma.base, sigma.maps, trial)[0] - target)
            bad = new_err > err
            if not np.any(bad):
                break
            t = np.where(bad, t / 2, t)
        w = w - t[:, None] * step
    g = _push(sigma.base, sigma.maps, w)[0]
    err = _norm(g - target)
    if np.any(err > tol):
        i = int(np.argmax(err))
        raise GraphTransformError(f"inverting g_sigma failed: residual {err[i]:.3g}", point=target[i].tolist())
    return w


def sine_graph(rng: np.random.Generator, k1: int, k2: int, radius: float, lip: float = 1.0,
               terms: int = 3) -> GraphFunction:
    """Random sigma with sigma(0) = 0 and a certified Lipschitz bound ``lip``."""
    B = rng.normal(size=(terms * k1, k1)) * rng.uniform(0.5, 3.0)
    M = rng.normal(size=(k2, terms * k1))
    c = rng.uniform(-math.pi, math.pi, size=terms * k1)
    M = M * (lip / (np.linalg.norm(M, 2) * np.linalg.norm(B, 2)))
    off = np.sin(c) @ M.T

    def base(x):
        return np.sin(x @ B.T + c) @ M.T - off

    return GraphFunction(base, k1, k2, radius, lip)


def graph_transform(fmap: HyperbolicBlockMap, sigma: GraphFunction):
    """Gamma(sigma) on the shrunken domain of radius r(1 - eps - delta)."""
    fmap.check_hypotheses()
    if sigma.lip_bound > 1 + 1e-12:
        raise HypothesisError("sigma must be 1-Lipschitz")
    radius = sigma.radius * (1 - fmap.eps - fmap.delta)
    lip = (fmap.lam + fmap.delta) / (1 - fmap.eps - fmap.delta)
    new = GraphFunction(sigma.base, sigma.k1, sigma.k2, radius, lip, sigma.maps + (fmap,))
    return new, radius


def ball_samples(k: int, radius: float, n_grid: int | None = None, n_random: int = 0,
                 rng: np.random.Generator | None = None, boundary: int = 0) -> np.ndarray:
    """Grid points of the cube inside the closed ball, plus random and boundary points."""
    n_grid = n_grid or {1: 201, 2: 41, 3: 15}.get(k, 9)
    ax = np.linspace(-radius, radius, n_grid)
    pts = np.stack(np.meshgrid(*[ax] * k, indexing="ij"), axis=-1).reshape(-1, k)
    pts = pts[_norm(pts) <= radius * (1 + 1e-12)]
    extra = []
    rng = rng or np.random.default_rng(0)
    if n_random:
        d = rng.normal(size=(n_random, k))
        d /= _norm(d)[:, None]
        extra.append(d * radius * rng.uniform(0, 1, size=(n_random, 1)) ** (1 / k))
    if boundary:
        d = rng.normal(size=(boundary, k))
        extra.append(d / _norm(d)[:, None] * radius)
    return np.concatenate([pts] + extra) if extra else pts


def measure_lipschitz(sigma: GraphFunction, rng: np.random.Generator | None = None,
                      far_pairs: int = 1000, n_grid: int | None = None) -> float:
    """Largest difference quotient over grid-neighbour pairs and random far pairs."""
    rng = rng or np.random.default_rng(0)
    k = sigma.k1
    n_grid = n_grid or {1: 201, 2: 31, 3: 11}.get(k, 7)
    ax = np.linspace(-sigma.radius, sigma.radius, n_grid)
    grid = np.stack(np.meshgrid(*[ax] * k, indexing="ij"), axis=-1)
    vals = sigma(grid.reshape(-1, k)).reshape(grid.shape[:-1] + (sigma.k2,))
    inside = _norm(grid) <= sigma.radius
    best = 0.0
    for axis in range(k):
        a = [slice(None)] * k
        b = [slice(None)] * k
        a[axis] = slice(0, -1)
        b[axis] = slice(1, None)
        ok = inside[tuple(a)] & inside[tuple(b)]
        dv = _norm(vals[tuple(b)] - vals[tuple(a)])[ok]
        dx = _norm(grid[tuple(b)] - grid[tuple(a)])[ok]
        if dv.size:
            best = max(best, float(np.max(dv / dx)))
    p = ball_samples(k, sigma.radius, n_grid=2, n_random=2 * far_pairs, rng=rng)[-2 * far_pairs:]
    x1, x2 = p[:far_pairs], p[far_pairs:]
    dx = _norm(x1 - x2)
    keep = dx > 1e-9
    if np.any(keep):
        dv = _norm(sigma(x1) - sigma(x2))
        best = max(best, float(np.max(dv[keep] / dx[keep])))
    return best


def domain_bounds_check(fmap: HyperbolicBlockMap, sigma: GraphFunction, kappa1: float, kappa2: float,
                        samples: int = 10_000, seed: int = 0) -> dict:
    """Sample both inclusions E1(k1(1-eps-delta)) in g(W) in E1(k2(mu+delta)).

    W is the ball of sigma.radius.  The inner inclusion is tested on the
    image of the boundary sphere (g is a homeomorphism onto its image), the
    outer one on boundary and interior samples.
    """
    rng = np.random.default_rng(seed)
    k = sigma.k1
    r = sigma.radius
    inner = kappa1 * (1 - fmap.eps - fmap.delta)
    outer = kappa2 * (fmap.mu + fmap.delta)
    if k == 1:
        bd = np.array([[-r], [r]])
    else:
        d = rng.normal(size=(samples, k))
        bd = d / _norm(d)[:, None] * r
    inter = ball_samples(k, r, n_grid=3, n_random=samples, rng=rng)
    gb = fmap(bd, sigma(bd))[0]
    gi = fmap(inter, sigma(inter))[0]
    nb = _norm(gb)
    ni = np.concatenate([nb, _norm(gi)])
    pts = np.concatenate([bd, inter])
    inner_bad = [{"w": bd[i].tolist(), "norm": float(nb[i])} for i in np.nonzero(nb < inner - 1e-12)[0][:10]]
    outer_bad = [{"w": pts[i].tolist(), "norm": float(ni[i])} for i in np.nonzero(ni > outer + 1e-12)[0][:10]]
    return {
        "samples": int(len(bd) + len(inter)),
        "inner_radius": inner,
        "outer_radius": outer,
        "min_boundary_image": float(nb.min()),
        "max_image": float(ni.max()),
        "inner_violations": inner_bad,
        "outer_violations": outer_bad,
        "ok": not inner_bad and not outer_bad,
    }


def pointwise_contraction_check(fmap: HyperbolicBlockMap, sigma: GraphFunction, samples: int = 500,
                                seed: int = 0, slack: float = SLACK) -> dict:
    """|f2(x,y) - Gamma(sigma)(f1(x,y))| <= (lambda + 2 delta)|y - sigma(x)| on samples."""
    rng = np.random.default_rng(seed)
    gs, rhat = graph_transform(fmap, sigma)
    x = ball_samples(sigma.k1, sigma.radius, n_grid=2, n_random=samples, rng=rng)[-samples:]
    y = sigma(x) + rng.uniform(-1, 1, size=(samples, sigma.k2)) * sigma.radius
    u, v = fmap(x, y)
    keep = _norm(u) <= rhat
    rate = fmap.lam + 2 * fmap.delta
    lhs = _norm(v[keep] - gs(u[keep]))
    rhs = rate * _norm(y[keep] - sigma(x[keep]))
    bad = np.nonzero(lhs > slack * rhs + 1e-12)[0]
    worst = float(np.max(lhs / np.maximum(rhs, 1e-300))) if lhs.size else 0.0
    return {"checked": int(keep.sum()), "violations": int(bad.size), "worst_ratio": worst, "rate": rate}


def window_ok(rho1: float, rho2: float, kappa: float, n: int, fmap: HyperbolicBlockMap) -> bool:
    """rho1 <= kappa (mu + 2 delta)^-n (1 - eps - delta)^n and kappa <= rho2."""
    lo = kappa * (fmap.mu + 2 * fmap.delta) ** (-n) * (1 - fmap.eps - fmap.delta) ** n
    return rho1 <= lo and kappa <= rho2


def _sup_distance(s1, s2, radius, rng):
    pts = ball_samples(s1.k1, radius, n_random=200, boundary=50 if s1.k1 > 1 else 0, rng=rng)
    if s1.k1 == 1:
        pts = np.concatenate([pts, [[-radius], [radius]]])
    return float(np.max(_norm(s1(pts) - s2(pts))))


@dataclass
class ContractionLog:
    records: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(self.records)

    @property
    def ok(self) -> bool:
        return not self.violations


def iterate_graph_transform(maps, sigma1: GraphFunction, sigma2: GraphFunction, n: int | None = None,
                            *, slack: float = SLACK, seed: int = 0) -> ContractionLog:
    """Distances between Gamma^k sigma1 and Gamma^k sigma2 on the shrinking common domain.

    ``maps`` share the constants (lambda, eps, delta); the bound checked at
    step k is (lambda + 2 delta)^k times the initial distance, times ``slack``.
    """
    maps = list(maps)
    n = len(maps) if n is None else n
    if n > len(maps):
        maps = maps + [maps[-1]] * (n - len(maps))
    rng = np.random.default_rng(seed)
    radius = min(sigma1.radius, sigma2.radius)
    log = ContractionLog()
    d0 = _sup_distance(sigma1, sigma2, radius, rng)
    log.records.append({"step": 0, "domain_radius": radius, "distance": d0, "ratio": None})
    s1, s2 = sigma1, sigma2
    prev = d0
    for k in range(1, n + 1):
        f = maps[k - 1]
        s1, r1 = graph_transform(f, s1)
        s2, r2 = graph_transform(f, s2)
        radius = min(r1, r2)
        if radius <= 0:
            raise GraphTransformError("common domain collapsed", step=k)
        d = _sup_distance(s1, s2, radius, rng)
        rate = max(m.lam + 2 * m.delta for m in maps[:k])
        bound = d0 * rate ** k
        ratio = d / prev if prev > 0 else None
        log.records.append({"step": k, "domain_radius": radius, "distance": d, "ratio": ratio})
        if d > slack * bound + 1e-12:
            log.violations.append({"step": k, "distance": d, "bound": bound})
        prev = d
    return log


def check_instance(rng: np.random.Generator, index: int, *, steps: int = 3, max_dim: int = 3,
                   slack: float = SLACK) -> dict:
    """Draw one random instance and run the Lipschitz, pointwise and n-step checks on it."""
    k1 = int(rng.integers(1, max_dim + 1))
    k2 = int(rng.integers(1, max_dim + 1))
    f = random_block_map(rng, k1, k2)
    sigma = sine_graph(rng, k1, k2, 1.0)
    g, _ = graph_transform(f, sigma)
    lip = measure_lipschitz(g, rng)
    bound = (f.lam + f.delta) / (1 - f.eps - f.delta)
    pc = pointwise_contraction_check(f, sigma, 200, seed=index, slack=slack)
    maps = [f] + [random_block_map(rng, k1, k2, lam=f.lam, eps=f.eps) for _ in range(steps - 1)]
    # the n-step bound uses one delta for the whole chain
    delta = max(m.delta for m in maps)
    for m in maps:
        m.delta = delta
    log = iterate_graph_transform(maps, sigma, sine_graph(rng, k1, k2, 1.0), steps, slack=slack, seed=index)
    ok = lip <= slack * bound and pc["violations"] == 0 and log.ok
    return {"instance": index, "dims": [k1, k2], "lambda": f.lam, "eps": f.eps, "delta": f.delta,
            "lip": lip, "lip_bound": bound, "pointwise_violations": pc["violations"],
            "log": log.records, "ok": ok}
