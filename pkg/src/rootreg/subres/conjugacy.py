"""Degree-by-degree polynomial conjugacy h o f = L o h through degree d."""

from __future__ import annotations

from .. import linalg
from .._rational import q
from .jets import JetError, JetPolynomial, jet_compose, jet_invert
from .weights import monomials

__all__ = ["ConjugacyError", "solve_jet_conjugacy", "homological_operator"]


class ConjugacyError(ValueError):
    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


def homological_operator(L_rows, n, k):
    """Matrix of h -> L h - h o L on homogeneous degree-k maps R^n -> R^n.

    Unknowns and equations are indexed by (component, monomial) in the
    same order, returned alongside the matrix.
    """
    mons = list(monomials(n, k, min_degree=k))
    index = [(j, a) for j in range(n) for a in mons]
    pos = {key: i for i, key in enumerate(index)}
    Ljet = JetPolynomial.linear(L_rows, k)
    cols = []
    for j, a in index:
        h = JetPolynomial([{a: q(1)} if i == j else {} for i in range(n)], k, in_dim=n)
        img = jet_compose(Ljet, h) - jet_compose(h, Ljet)
        col = [q(0)] * len(index)
        for jj, c in enumerate(img.coeffs):
            for aa, v in c.items():
                col[pos[(jj, aa)]] = v
        cols.append(col)
    matrix = [list(r) for r in zip(*cols)]
    return matrix, index


def solve_jet_conjugacy(L, f_jet: JetPolynomial, d: int | None = None) -> JetPolynomial:
    """H with H_1 = id and H o f = L o H through degree d, exactly.

    Each degree solves L H_k - H_k o L = [H_{<k} o f]_k.  Resonant
    directions of the operator are set to the minimum-norm solution; an
    inconsistent resonant term means f is not conjugate to L through this
    degree and raises ConjugacyError with that degree.
    """
    n = f_jet.in_dim
    d = f_jet.degree if d is None else d
    L_rows = [[q(x) for x in row] for row in L]
    if not f_jet.is_exact:
        raise JetError("conjugacy solve needs exact rational coefficients")
    if any(v != 0 for v in f_jet.constant()):
        raise ConjugacyError("f must fix the origin", 0)
    if f_jet.linear_part() != L_rows:
        raise ConjugacyError("linear part of f must equal L (H_1 = id)", 1)
    f = JetPolynomial(f_jet.coeffs, d, in_dim=n)
    H = JetPolynomial.identity(n, d)
    for k in range(2, d + 1):
        N = jet_compose(H, f, check_subresonance=False).homogeneous(k)
        A, index = homological_operator(L_rows, n, k)
        rhs = [N.coefficient(j, a) for j, a in index]
        sol = linalg.min_norm_solve(A, rhs)
        if sol is None:
            raise ConjugacyError(f"no conjugacy: resonant obstruction in degree {k}", k)
        comps = [dict(c) for c in H.coeffs]
        for (j, a), v in zip(index, sol):
            if v != 0:
                comps[j][a] = v
        H = JetPolynomial(comps, d, in_dim=n)
    _verify(H, L_rows, f)
    return JetPolynomial(H.coeffs, d, in_dim=n, in_weights=f_jet.in_weights, out_weights=f_jet.in_weights)


def _verify(H, L_rows, f):
    d = H.degree
    Lj = JetPolynomial.linear(L_rows, d)
    back = jet_compose(jet_invert(H), jet_compose(Lj, H, check_subresonance=False), check_subresonance=False)
    diff = back - f
    for k in range(1, d + 1):
        if any(c for c in diff.homogeneous(k).coeffs):
            raise ConjugacyError(f"verification failed in degree {k}", k)
