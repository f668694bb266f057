"""The inverse system i*: level r -> level r-1 and its truncated limits.

Level r is the symmetric part of the ring on 2r generators.  In K-theory
the coefficients are R(G) = Z[v]; in rational cohomology they are Q[t].
Symmetric elements are :class:`SymVec` on s_0..s_2r, and i* acts on them
through a (2r-1) x (2r+1) banded matrix.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .coefficients import B, B_BAR, B_INV, Poly, V, invariants_to_g
from .errors import IncompatibleTower, LevelTooLow, RingMismatch
from .quotient_rings import (
    MultiElt,
    RingDescriptor,
    SymVec,
    elementary_symmetric,
    h_g,
    h_t,
    k_g,
    k_t,
    substitute_last_pair,
    symmetric_reduce,
)
from .sampling import random_symvec

THEORIES = ("K", "H")


def level_ring(r: int, theory: str = "K") -> RingDescriptor:
    if theory == "K":
        return k_g(2 * r)
    if theory == "H":
        return h_g(2 * r)
    raise ValueError(f"unknown theory {theory!r}")


def theory_of(ring: RingDescriptor) -> str:
    if ring.coeff == "RG":
        return "K"
    if ring.coeff == "Qt":
        return "H"
    raise RingMismatch(f"towers live over R(G) or Q[t], not {ring.coeff}")


def istar_on_generators(u: MultiElt) -> MultiElt:
    """i* on K_T((P^1)^2r): L_j -> L'_j (j <= 2r-2), L_{2r-1} -> b^-1, L_2r -> b."""
    ring = u.ring
    if ring.coeff != "RT":
        raise RingMismatch("generator substitution is defined on the R(T) ring")
    if ring.n < 2:
        raise LevelTooLow("i* needs level r >= 1")
    return substitute_last_pair(u, B_INV, B, ring.with_n(ring.n - 2))


def istar_h_on_generators(u: MultiElt) -> MultiElt:
    """Cohomology i*: Lbar_{2r-1} -> -bb, Lbar_2r -> bb, others to primes.

    Works over Q[bb] and over power series in bb.
    """
    ring = u.ring
    if ring.coeff == "Qb":
        plus = B_BAR
    elif ring.coeff == "Sb":
        from .series import TruncSeries

        plus = TruncSeries.gen(ring.cutoff, "bb")
    else:
        raise RingMismatch("cohomology substitution needs coefficients in bb")
    if ring.n < 2:
        raise LevelTooLow("i* needs level r >= 1")
    return substitute_last_pair(u, -plus, plus, ring.with_n(ring.n - 2))


@dataclass(frozen=True)
class IStarMatrix:
    """Matrix of i* on the s-basis; ``entries[i][j]`` = coefficient of s'_i in i*(s_j)."""

    r: int
    theory: str
    entries: tuple

    @property
    def shape(self) -> tuple[int, int]:
        return (2 * self.r - 1, 2 * self.r + 1)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def specialize(self, f) -> list[list]:
        return [[f(e) for e in row] for row in self.entries]

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)


def _banded_matrix(r: int, theory: str) -> tuple:
    rows, cols = 2 * r - 1, 2 * r + 1
    var = "v" if theory == "K" else "t"
    zero = Poly((), var)
    one = Poly.const(1, var)
    band = (one, V, one) if theory == "K" else (one, zero, -Poly.gen("t"))
    entries = [[zero] * cols for _ in range(rows)]
    for j in range(cols):
        for offset, value in enumerate(band):
            i = j - offset
            if 0 <= i < rows:
                entries[i][j] = value
    return tuple(tuple(row) for row in entries)


def istar_matrix_by_substitution(r: int, theory: str = "K") -> IStarMatrix:
    """Column j is i*(s_j) computed by substituting into the generators."""
    if r < 1:
        raise LevelTooLow("i* needs level r >= 1")
    columns = []
    if theory == "K":
        ring = k_t(2 * r)
        for j in range(2 * r + 1):
            image = symmetric_reduce(istar_on_generators(elementary_symmetric(ring, j)))
            columns.append([invariants_to_g(c) for c in image.coeffs])
    else:
        ring = h_t(2 * r)
        for j in range(2 * r + 1):
            image = symmetric_reduce(istar_h_on_generators(elementary_symmetric(ring, j)))
            columns.append([c.even_part_as("t") for c in image.coeffs])
    entries = tuple(tuple(col[i] for col in columns) for i in range(2 * r - 1))
    return IStarMatrix(r, theory, entries)


@lru_cache(maxsize=None)
def istar_matrix(r: int, theory: str = "K") -> IStarMatrix:
    """Matrix of i*; banded (1, v, 1) in K-theory and (1, 0, -t) in cohomology.

    At r = 1 the case split of the banded description overlaps, so that
    level is computed by generator substitution instead.
    """
    if r < 1:
        raise LevelTooLow("i* needs level r >= 1")
    if theory not in THEORIES:
        raise ValueError(f"unknown theory {theory!r}")
    if r == 1:
        return istar_matrix_by_substitution(1, theory)
    return IStarMatrix(r, theory, _banded_matrix(r, theory))


def apply_istar(u: SymVec) -> SymVec:
    """i* on a symmetric element at level r, landing at level r-1."""
    theory = theory_of(u.ring)
    r = u.ring.n // 2
    if r < 1:
        raise LevelTooLow("i* needs level r >= 1")
    mat = istar_matrix(r, theory)
    target = level_ring(r - 1, theory)
    out = []
    for row in mat.entries:
        acc = target.zero
        for a, c in zip(row, u.coeffs):
            if a and c:
                acc = acc + a * c
        out.append(acc)
    return SymVec(target, tuple(out))


@dataclass(frozen=True)
class KernelBasis:
    r: int
    theory: str
    k1: SymVec
    k2: SymVec

    def coordinates(self, u: SymVec) -> tuple:
        """(a, c) with u = a*k1 + c*k2 for u in the symmetric kernel."""
        n = 2 * self.r
        a, c = u.coeffs[n - 1], -u.coeffs[n]
        if self.k1.scale(a) + self.k2.scale(c) != u:
            raise ValueError(f"{u} is not in the span of the kernel basis")
        return a, c


def _back_substitute(mat: IStarMatrix, top: Sequence, target_rhs: Sequence | None = None):
    """Solve mat * c = rhs for c_0..c_{2r-2} given c_{2r-1}, c_2r = top.

    Rows are unitriangular (entry 1 on the diagonal), so solve from the
    last row upward.
    """
    rows, cols = mat.shape
    ring = level_ring(mat.r, mat.theory)
    c = [ring.zero] * cols
    c[cols - 2], c[cols - 1] = ring.coerce(top[0]), ring.coerce(top[1])
    for i in range(rows - 1, -1, -1):
        acc = ring.coerce(target_rhs[i]) if target_rhs is not None else ring.zero
        row = mat.entries[i]
        for j in range(i + 1, cols):
            if row[j] and c[j]:
                acc = acc - row[j] * c[j]
        c[i] = acc
    return SymVec(ring, tuple(c))


@lru_cache(maxsize=None)
def kernel_basis(r: int, theory: str = "K") -> KernelBasis:
    """Canonical kernel basis: k1 = s_{2r-1} + lower, k2 = -s_2r + lower.

    Normalized so that k1 has no s_2r term and k2 no s_{2r-1} term.
    """
    mat = istar_matrix(r, theory)
    k1 = _back_substitute(mat, (1, 0))
    k2 = _back_substitute(mat, (0, -1))
    for k in (k1, k2):
        if apply_istar(k):
            raise ArithmeticError(f"kernel vector {k} is not killed by i*")
    return KernelBasis(r, theory, k1, k2)


def section_lift(u: SymVec) -> SymVec:
    """Right inverse of i*: the unique preimage with no s_{2r-1}, s_2r terms."""
    theory = theory_of(u.ring)
    r = u.ring.n // 2 + 1
    return _back_substitute(istar_matrix(r, theory), (0, 0), u.coeffs)


def graded_degree(c: Poly, j: int) -> set[int]:
    """Cohomological degrees of c * s_j with deg s_j = 2j, deg t = 4."""
    return {2 * j + 4 * k for k, x in enumerate(c.coeffs) if x}


def is_homogeneous(u: SymVec, degree: int) -> bool:
    degrees = set()
    for j, c in enumerate(u.coeffs):
        degrees |= graded_degree(c, j)
    return degrees <= {degree}


@dataclass(frozen=True)
class TowerElt:
    """Levels sigma_0..sigma_rmax; sigma_r is a SymVec on 2r generators."""

    levels: tuple
    theory: str = "K"

    def __post_init__(self):
        for r, s in enumerate(self.levels):
            if s.ring != level_ring(r, self.theory):
                raise RingMismatch(f"level {r} lives in the wrong ring")

    @property
    def r_max(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, r: int) -> SymVec:
        return self.levels[r]

    def to_json(self) -> str:
        return json.dumps([[str(c) for c in s.coeffs] for s in self.levels])

    def __str__(self):
        return "\n".join(f"r={r}: {s}" for r, s in enumerate(self.levels))


def tower_check(T: TowerElt) -> bool:
    return all(apply_istar(T.levels[r]) == T.levels[r - 1] for r in range(1, len(T.levels)))


def unit_tower(r_max: int, theory: str = "K") -> TowerElt:
    return TowerElt(tuple(SymVec.basis(level_ring(r, theory), 0) for r in range(r_max + 1)), theory)


def zero_tower(r_max: int, theory: str = "K") -> TowerElt:
    return TowerElt(tuple(SymVec.zero(level_ring(r, theory)) for r in range(r_max + 1)), theory)


def tower_from_top(top: SymVec) -> TowerElt:
    """The compatible tower obtained by pushing ``top`` down with i*."""
    theory = theory_of(top.ring)
    levels = [top]
    while levels[-1].ring.n > 0:
        levels.append(apply_istar(levels[-1]))
    return TowerElt(tuple(reversed(levels)), theory)


def random_tower(r_max: int, rng: random.Random, theory: str = "K") -> TowerElt:
    return tower_from_top(random_symvec(level_ring(r_max, theory), rng))


def tower_mul(T1: TowerElt, T2: TowerElt) -> TowerElt:
    """Levelwise product; i* is a ring map so the result is compatible."""
    if T1.r_max != T2.r_max or T1.theory != T2.theory:
        raise IncompatibleTower("towers differ in height or theory")
    for T in (T1, T2):
        if not tower_check(T):
            raise IncompatibleTower(f"not a compatible tower:\n{T}")
    result = TowerElt(tuple(a * b for a, b in zip(T1.levels, T2.levels)), T1.theory)
    if not tower_check(result):
        raise IncompatibleTower("product tower failed the compatibility check")
    return result
