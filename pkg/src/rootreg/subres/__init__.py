"""Subresonant jets, conjugacy jets and the grid tail of the conjugacy."""

from .conjugacy import ConjugacyError, homological_operator, solve_jet_conjugacy
from .frames import EvaluationFrame, FrameError, certify_frame, evaluation_frame
from .jets import JetError, JetPolynomial, jet_compose, jet_invert
from .tail import (
    ConjugacyResult,
    Grid,
    TailError,
    TailResult,
    build_conjugacy,
    default_epsilon,
    kappa,
    sweep_conjugacy,
    tail_fixed_point,
)
from .weights import LyapunovWeights, degree_bound, monomials, subresonant_basis

__all__ = [
    "LyapunovWeights", "subresonant_basis", "degree_bound", "monomials",
    "JetPolynomial", "JetError", "jet_compose", "jet_invert",
    "EvaluationFrame", "FrameError", "evaluation_frame", "certify_frame",
    "ConjugacyError", "solve_jet_conjugacy", "homological_operator",
    "Grid", "TailError", "TailResult", "ConjugacyResult", "kappa", "default_epsilon",
    "tail_fixed_point", "build_conjugacy", "sweep_conjugacy",
]
