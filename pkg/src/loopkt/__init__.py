"""Exact algebra for the loop-group K-theory tower and its verification suite."""

from .coefficients import B, B_INV, V, LaurentElt, Poly, Rational, augment, invariants_to_g, restrict, weyl
from .errors import LoopKError
from .parsing import parse_element
from .quotient_rings import (
    MultiElt,
    RingDescriptor,
    SymVec,
    elementary_symmetric,
    exterior,
    h_g,
    h_t,
    k_g,
    k_t,
    symmetric_reduce,
)
from .series import TruncSeries, series_G, series_g, series_p, series_q, series_todd
from .tower import TowerElt, apply_istar, istar_matrix, kernel_basis, section_lift, tower_from_top, tower_mul
from .verify import Report, run_verify

__version__ = "0.1.0"

__all__ = [
    "B", "B_INV", "V", "LaurentElt", "Poly", "Rational", "augment", "invariants_to_g", "restrict", "weyl",
    "LoopKError", "parse_element",
    "MultiElt", "RingDescriptor", "SymVec", "elementary_symmetric", "exterior", "h_g", "h_t", "k_g", "k_t",
    "symmetric_reduce",
    "TruncSeries", "series_G", "series_g", "series_p", "series_q", "series_todd",
    "TowerElt", "apply_istar", "istar_matrix", "kernel_basis", "section_lift", "tower_from_top", "tower_mul",
    "Report", "run_verify",
]
