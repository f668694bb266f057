"""Divided power algebra Gamma[x] and its truncations.

Gamma[x] has Z-basis gamma_0, gamma_1, ... with
gamma_i * gamma_j = C(i+j, i) gamma_{i+j}.  Killing gamma_j for j > k gives
a ring isomorphic to the S_k-invariants of the square-zero algebra on
x_1..x_k, via gamma_j -> e_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Mapping

from .coefficients import augment, join_terms, restrict
from .errors import IncompatibleTower
from .quotient_rings import SymVec, exterior
from .tower import TowerElt, istar_matrix, tower_check


class GammaElt:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {k: c for k, c in (coeffs or {}).items() if c}

    @classmethod
    def basis(cls, k: int) -> "GammaElt":
        return cls({k: 1})

    def __eq__(self, other):
        if not isinstance(other, GammaElt):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self):
        return join_terms((self.coeffs[k], f"g{k}") for k in sorted(self.coeffs, reverse=True))

    __repr__ = __str__

    def __add__(self, other: "GammaElt") -> "GammaElt":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return GammaElt(out)

    def __mul__(self, other: "GammaElt") -> "GammaElt":
        return gamma_mul(self, other)

    def truncate(self, k: int) -> "TruncGamma":
        return TruncGamma(k, tuple(self.coeffs.get(j, 0) for j in range(k + 1)))


def gamma_mul(u: GammaElt, w: GammaElt) -> GammaElt:
    out: dict = {}
    for i, a in u.coeffs.items():
        for j, c in w.coeffs.items():
            out[i + j] = out.get(i + j, 0) + comb(i + j, i) * a * c
    return GammaElt(out)


@dataclass(frozen=True)
class TruncGamma:
    """Image of Gamma[x] in Gamma[x]/(gamma_j : j > k)."""

    k: int
    coeffs: tuple

    def __str__(self):
        return str(GammaElt(dict(enumerate(self.coeffs))))

    def __mul__(self, other: "TruncGamma") -> "TruncGamma":
        if other.k != self.k:
            raise ValueError("truncation levels differ")
        prod = gamma_mul(GammaElt(dict(enumerate(self.coeffs))), GammaElt(dict(enumerate(other.coeffs))))
        return prod.truncate(self.k)


def gamma_to_symmetric(u: TruncGamma | GammaElt, k: int) -> SymVec:
    """gamma_j -> e_j(x_1..x_k) in the square-zero ring; gamma_j -> 0 for j > k."""
    coeffs = u.coeffs if isinstance(u, GammaElt) else dict(enumerate(u.coeffs))
    return SymVec(exterior(k), tuple(coeffs.get(j, 0) for j in range(k + 1)))


def _augment_coeff(c) -> int:
    """b -> 1 on R(G) (so v -> 2) and t -> 0 on Q[t]."""
    if c.var == "v":
        return augment(restrict(c))
    return c.coeffs[0] if c.coeffs else 0


def specialize_tower(T: TowerElt) -> list[TruncGamma]:
    """Non-equivariant specialization of every level of a compatible tower."""
    if not tower_check(T):
        raise IncompatibleTower("specialization needs a compatible tower")
    return [
        TruncGamma(2 * r, tuple(_augment_coeff(c) for c in s.coeffs))
        for r, s in enumerate(T.levels)
    ]


def specialized_istar_matrix(r: int, theory: str) -> list[list[int]]:
    """The i* matrix at v = 2 (K) or t = 0 (H)."""
    return istar_matrix(r, theory).specialize(_augment_coeff)


def apply_specialized_istar(u: TruncGamma, theory: str) -> TruncGamma:
    r = u.k // 2
    mat = specialized_istar_matrix(r, theory)
    return TruncGamma(
        2 * r - 2, tuple(sum(a * c for a, c in zip(row, u.coeffs)) for row in mat)
    )
