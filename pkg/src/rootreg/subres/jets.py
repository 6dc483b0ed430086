"""Truncated polynomial maps (jets) with exact composition and inversion.

A jet of degree d from R^n to R^m is stored as one dict per output
component mapping exponent tuples to coefficients.  The zero tuple is the
constant term.  Coefficients may be exact rationals or floats; all
arithmetic is plain Python so rationals stay exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .. import linalg
from .._rational import is_exact, q, rstr
from .weights import LyapunovWeights, is_subresonant_term

__all__ = ["JetError", "JetPolynomial", "jet_compose", "jet_invert", "poly_mul"]


class JetError(ValueError):
    pass


def _deg(alpha):
    return sum(alpha)


def _add_into(acc, poly, scale=1):
    for k, v in poly.items():
        acc[k] = acc.get(k, 0) + scale * v


def _clean(poly):
    return {k: v for k, v in poly.items() if v != 0}


def poly_mul(a: dict, b: dict, d: int) -> dict:
    out = {}
    for ka, va in a.items():
        da = _deg(ka)
        for kb, vb in b.items():
            if da + _deg(kb) > d:
                continue
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return _clean(out)


@dataclass(frozen=True)
class JetPolynomial:
    in_dim: int
    out_dim: int
    degree: int
    coeffs: tuple
    in_weights: LyapunovWeights | None = None
    out_weights: LyapunovWeights | None = None

    def __init__(self, coeffs, degree, *, in_dim=None, in_weights=None, out_weights=None):
        comps = [dict(c) for c in coeffs]
        if in_dim is None:
            keys = [k for c in comps for k in c]
            if in_weights is not None:
                in_dim = in_weights.total_dim
            elif keys:
                in_dim = len(keys[0])
            else:
                raise JetError("cannot infer the input dimension of an empty jet")
        for c in comps:
            for k in c:
                if len(k) != in_dim:
                    raise JetError(f"monomial {k} has wrong length for input dim {in_dim}")
        if in_weights is not None and in_weights.total_dim != in_dim:
            raise JetError("input weights do not match the input dimension")
        if out_weights is not None and out_weights.total_dim != len(comps):
            raise JetError("output weights do not match the output dimension")
        trunc = tuple(
            {k: v for k, v in c.items() if v != 0 and _deg(k) <= degree} for c in comps
        )
        object.__setattr__(self, "in_dim", in_dim)
        object.__setattr__(self, "out_dim", len(comps))
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "coeffs", trunc)
        object.__setattr__(self, "in_weights", in_weights)
        object.__setattr__(self, "out_weights", out_weights)

    # -- constructors ------------------------------------------------------
    @classmethod
    def identity(cls, dim_or_weights, degree):
        if isinstance(dim_or_weights, LyapunovWeights):
            w, n = dim_or_weights, dim_or_weights.total_dim
        else:
            w, n = None, int(dim_or_weights)
        comps = [{tuple(int(i == j) for i in range(n)): q(1)} for j in range(n)]
        return cls(comps, degree, in_dim=n, in_weights=w, out_weights=w)

    @classmethod
    def linear(cls, matrix, degree, *, in_weights=None, out_weights=None):
        rows = [list(r) for r in matrix]
        n = len(rows[0])
        comps = [{tuple(int(i == k) for i in range(n)): a for k, a in enumerate(r) if a != 0} for r in rows]
        return cls(comps, degree, in_dim=n, in_weights=in_weights, out_weights=out_weights)

    @classmethod
    def translation(cls, vector, degree, **kw):
        n = len(vector)
        comps = [{(0,) * n: c, tuple(int(i == j) for i in range(n)): q(1)} for j, c in enumerate(vector)]
        return cls(comps, degree, in_dim=n, **kw)

    # -- accessors ---------------------------------------------------------
    def coefficient(self, component, alpha):
        return self.coeffs[component].get(tuple(alpha), 0)

    def homogeneous(self, k) -> "JetPolynomial":
        comps = [{a: v for a, v in c.items() if _deg(a) == k} for c in self.coeffs]
        return self._like(comps)

    def below(self, k) -> "JetPolynomial":
        comps = [{a: v for a, v in c.items() if _deg(a) < k} for c in self.coeffs]
        return self._like(comps)

    def constant(self):
        z = (0,) * self.in_dim
        return [c.get(z, 0) for c in self.coeffs]

    def linear_part(self):
        rows = []
        for c in self.coeffs:
            rows.append([c.get(tuple(int(i == k) for i in range(self.in_dim)), 0) for k in range(self.in_dim)])
        return rows

    def _like(self, comps, degree=None):
        return JetPolynomial(comps, self.degree if degree is None else degree, in_dim=self.in_dim,
                             in_weights=self.in_weights, out_weights=self.out_weights)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(v) for c in self.coeffs for v in c.values())

    def __eq__(self, other):
        if not isinstance(other, JetPolynomial):
            return NotImplemented
        return (self.in_dim, self.out_dim, self.degree, self.coeffs) == (
            other.in_dim, other.out_dim, other.degree, other.coeffs)

    def __hash__(self):
        return hash((self.in_dim, self.out_dim, self.degree))

    def __add__(self, other):
        comps = []
        for a, b in zip(self.coeffs, other.coeffs):
            c = dict(a)
            _add_into(c, b)
            comps.append(c)
        return self._like(comps)

    def __sub__(self, other):
        comps = []
        for a, b in zip(self.coeffs, other.coeffs):
            c = dict(a)
            _add_into(c, b, -1)
            comps.append(c)
        return self._like(comps)

    def max_abs_coefficient(self) -> float:
        vals = [abs(float(v)) for c in self.coeffs for v in c.values()]
        return max(vals, default=0.0)

    # -- subresonance ------------------------------------------------------
    def forbidden_terms(self):
        """(component, monomial) pairs violating subresonance (needs weights)."""
        if self.in_weights is None or self.out_weights is None:
            raise JetError("subresonance needs input and output weights")
        return [(j, a) for j, c in enumerate(self.coeffs) for a in c
                if not is_subresonant_term(self.in_weights, self.out_weights, j, a)]

    def is_subresonant(self) -> bool:
        return not self.forbidden_terms()

    # -- evaluation --------------------------------------------------------
    def __call__(self, x):
        """Evaluate at a point (sequence) or at an array of points, shape (..., in_dim)."""
        arr = np.asarray(x, dtype=float) if not self.is_exact or _has_float(x) else None
        if arr is not None:
            arr = np.atleast_1d(arr)
            pts = arr.reshape(-1, self.in_dim) if arr.shape[-1] == self.in_dim else arr.reshape(-1, 1)
            out = np.zeros((pts.shape[0], self.out_dim))
            for j, c in enumerate(self.coeffs):
                for a, v in c.items():
                    term = np.full(pts.shape[0], float(v))
                    for i, e in enumerate(a):
                        if e:
                            term = term * pts[:, i] ** e
                    out[:, j] += term
            shape = arr.shape[:-1] if arr.shape[-1] == self.in_dim else arr.shape
            return out.reshape(shape + (self.out_dim,))
        pt = [q(v) for v in x]
        res = []
        for c in self.coeffs:
            s = q(0)
            for a, v in c.items():
                t = v
                for xi, e in zip(pt, a):
                    if e:
                        t = t * xi ** e
                s += t
            res.append(s)
        return res

    # -- serialization -----------------------------------------------------
    def to_dict(self) -> dict:
        def fmt(v):
            return rstr(v) if is_exact(v) else float(v)

        return {
            "in_dim": self.in_dim,
            "out_dim": self.out_dim,
            "degree": self.degree,
            "components": [
                [{"monomial": list(a), "coef": fmt(v)} for a, v in sorted(c.items())]
                for c in self.coeffs
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _has_float(x):
    try:
        return any(isinstance(v, (float, np.floating)) for v in np.ravel(np.asarray(x, dtype=object)))
    except TypeError:
        return False


def _check_chain(G: JetPolynomial, F: JetPolynomial):
    if F.out_dim != G.in_dim:
        raise JetError(f"dimension mismatch: F maps to R^{F.out_dim}, G expects R^{G.in_dim}")
    if F.out_weights is not None and G.in_weights is not None and F.out_weights != G.in_weights:
        raise JetError("weight mismatch: F's output weights differ from G's input weights")
    if F.degree != G.degree:
        raise JetError(f"truncation degrees differ ({G.degree} vs {F.degree})")


def jet_compose(G: JetPolynomial, F: JetPolynomial, *, check_subresonance: bool = True) -> JetPolynomial:
    """G o F truncated at the common degree.

    When both factors carry weights and are subresonant, the result is
    checked to be subresonant as well.
    """
    _check_chain(G, F)
    d = F.degree
    comps = F.coeffs
    cache = {(0,) * G.in_dim: {(0,) * F.in_dim: q(1)}}

    def power(alpha):
        got = cache.get(alpha)
        if got is not None:
            return got
        i = next(k for k, e in enumerate(alpha) if e)
        prev = tuple(e - (k == i) for k, e in enumerate(alpha))
        got = poly_mul(power(prev), comps[i], d)
        cache[alpha] = got
        return got

    out = []
    for c in G.coeffs:
        acc = {}
        for alpha, v in sorted(c.items(), key=lambda kv: _deg(kv[0])):
            _add_into(acc, power(alpha), v)
        out.append(_clean(acc))
    H = JetPolynomial(out, d, in_dim=F.in_dim, in_weights=F.in_weights, out_weights=G.out_weights)
    if (check_subresonance and H.in_weights is not None and H.out_weights is not None
            and F.in_weights is not None and F.out_weights is not None
            and G.in_weights is not None and G.out_weights is not None):
        if F.is_subresonant() and G.is_subresonant():
            bad = H.forbidden_terms()
            if bad:
                raise AssertionError(f"composition left the subresonant class: {bad[:3]}")
    return H


def _invert_matrix(rows):
    if all(is_exact(v) for r in rows for v in r):
        return linalg.inverse([[q(v) for v in r] for r in rows])
    return np.linalg.inv(np.array(rows, dtype=float)).tolist()


def jet_invert(E: JetPolynomial) -> JetPolynomial:
    """Two-sided inverse jet, G o E = E o G = id through the truncation degree.

    Degree by degree G_k = -[G_{<k} o E]_k o E_1^{-1}; a constant term is
    handled by translating first.
    """
    if E.in_dim != E.out_dim:
        raise JetError("only self-maps can be inverted")
    n, d = E.in_dim, E.degree
    c = E.constant()
    z = (0,) * n
    if any(v != 0 for v in c):
        E0 = E._like([{a: v for a, v in comp.items() if a != z} for comp in E.coeffs])
        inv0 = jet_invert(E0)
        shift = JetPolynomial.translation([-v for v in c], d, in_weights=E.out_weights,
                                          out_weights=E.out_weights)
        return jet_compose(inv0, shift, check_subresonance=False)
    try:
        A_inv = _invert_matrix(E.linear_part())
    except (ZeroDivisionError, np.linalg.LinAlgError):
        raise JetError("linear part is singular") from None
    lin = JetPolynomial.linear(A_inv, d, in_weights=E.out_weights, out_weights=E.in_weights)
    G = lin
    for k in range(2, d + 1):
        Nk = jet_compose(G, E, check_subresonance=False).homogeneous(k)
        Gk = jet_compose(Nk, lin, check_subresonance=False)
        G = G - Gk._like(Gk.coeffs)
    return JetPolynomial(G.coeffs, d, in_dim=n, in_weights=E.out_weights, out_weights=E.in_weights)
