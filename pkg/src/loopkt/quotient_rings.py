"""Multilinear quotient rings C[L_1..L_n] / (L_j^2 - alpha*L_j - beta).

One normal-form engine serves every ring used in the package:

=========  ===========  =============  =========
tag        coefficients alpha          beta
=========  ===========  =============  =========
``RT``     Z[b, b^-1]   b + b^-1       -1
``RG``     Z[v]         v              -1
``Qb``     Q[bb]        0              bb^2
``Qt``     Q[t]         0              t
``Z``      Z            0              0
``Sb``     Q[[bb]]      0              bb^2
``St``     Q[[t]]       0              t
=========  ===========  =============  =========

A monomial prod_{j in S} L_j is stored as the bitmask of S (bit j-1 for
L_j), so an element is a dict ``{mask: coefficient}`` with no zero
entries.  The last two rows are the cohomology rings with truncated power
series coefficients, the targets of the Chern character.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from math import comb
from typing import Any, Iterable, Iterator, Sequence

from .coefficients import (
    B,
    B_BAR,
    B_INV,
    SCALAR_TYPES,
    T_BAR,
    V,
    LaurentElt,
    Poly,
    format_scalar,
)
from .errors import IndexOutOfRange, NotSymmetric, RingMismatch
from .series import TruncSeries

MAX_GENERATORS = 62

COEFF_TAGS = ("RT", "RG", "Qb", "Qt", "Z", "Sb", "St")


@dataclass(frozen=True)
class RingDescriptor:
    n: int
    coeff: str
    alpha: Any
    beta: Any
    cutoff: int | None = None

    def __post_init__(self):
        if self.coeff not in COEFF_TAGS:
            raise ValueError(f"unknown coefficient ring {self.coeff!r}")
        if not 0 <= self.n <= MAX_GENERATORS:
            raise ValueError(f"generator count must be in 0..{MAX_GENERATORS}")

    def coerce(self, c):
        """Bring an integer (or native element) into the coefficient ring."""
        tag = self.coeff
        if tag == "RT":
            if isinstance(c, int):
                return LaurentElt.const(c)
            if isinstance(c, LaurentElt):
                return c
        elif tag in ("RG", "Qb", "Qt"):
            var = {"RG": "v", "Qb": "bb", "Qt": "t"}[tag]
            if isinstance(c, SCALAR_TYPES) and (tag != "RG" or isinstance(c, int)):
                return Poly.const(c, var)
            if isinstance(c, Poly) and (c.var == var or not c):
                return c if c.var == var else Poly((), var)
        elif tag == "Z":
            if isinstance(c, int):
                return c
        else:
            var = "bb" if tag == "Sb" else "t"
            if isinstance(c, SCALAR_TYPES):
                return TruncSeries.const(c, self.cutoff, var)
            if isinstance(c, TruncSeries) and c.cutoff == self.cutoff:
                return c
        raise RingMismatch(f"{c!r} is not a coefficient of {self.coeff}")

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def with_n(self, n: int) -> "RingDescriptor":
        return replace(self, n=n)

    @property
    def is_k_theory(self) -> bool:
        return self.coeff in ("RT", "RG")

    def __str__(self):
        extra = f", D={self.cutoff}" if self.cutoff is not None else ""
        return f"{self.coeff}[L1..L{self.n}]/(L^2 = ({self.alpha})L + ({self.beta}){extra})"


def k_t(n: int) -> RingDescriptor:
    """K_T((P^1)^n): L_j^2 = v L_j - 1 over R(T), v = b + b^-1."""
    return RingDescriptor(n, "RT", B + B_INV, LaurentElt.const(-1))


def k_g(n: int) -> RingDescriptor:
    return RingDescriptor(n, "RG", V, Poly.const(-1, "v"))


def h_t(n: int) -> RingDescriptor:
    """H_T((P^1)^n; Q) with tbar = bb^2."""
    return RingDescriptor(n, "Qb", Poly((), "bb"), B_BAR**2)


def h_g(n: int) -> RingDescriptor:
    return RingDescriptor(n, "Qt", Poly((), "t"), T_BAR)


def exterior(n: int) -> RingDescriptor:
    """Square-zero ring Z[x_1..x_n]/(x_j^2), modeling Lambda(x_1..x_n)."""
    return RingDescriptor(n, "Z", 0, 0)


def h_series_t(n: int, cutoff: int) -> RingDescriptor:
    zero = TruncSeries.const(0, cutoff, "bb")
    return RingDescriptor(n, "Sb", zero, TruncSeries((0, 0, 1), cutoff, "bb"), cutoff)


def h_series_g(n: int, cutoff: int) -> RingDescriptor:
    zero = TruncSeries.const(0, cutoff, "t")
    return RingDescriptor(n, "St", zero, TruncSeries.gen(cutoff, "t"), cutoff)


RING_BUILDERS = {"kt": k_t, "kg": k_g, "ht": h_t, "hg": h_g, "ext": exterior}


def mask_indices(mask: int) -> list[int]:
    """1-based generator indices present in ``mask``."""
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@lru_cache(maxsize=None)
def _factor_table(ring: RingDescriptor) -> tuple:
    """``table[k]`` lists ``(j, alpha^j * beta^(k-j))`` for the nonzero terms.

    Rewriting k overlapping generators L_i^2 -> alpha L_i + beta produces,
    for each subset J of the overlap, the factor alpha^|J| beta^(k-|J|).
    """
    one = ring.one
    a_pow = [one]
    b_pow = [one]
    for _ in range(ring.n):
        a_pow.append(a_pow[-1] * ring.alpha)
        b_pow.append(b_pow[-1] * ring.beta)
    table = []
    for k in range(ring.n + 1):
        row = []
        for j in range(k + 1):
            f = a_pow[j] * b_pow[k - j]
            if f:
                row.append((j, f))
        table.append(tuple(row))
    return tuple(table)


def _fmt_coeff(c) -> tuple[bool, str, bool]:
    """(negative, body, compound) for rendering a coefficient."""
    if isinstance(c, SCALAR_TYPES):
        return (c < 0, format_scalar(-c if c < 0 else c), False)
    s = str(c)
    if isinstance(c, TruncSeries) or len(c) > 1:
        return (False, s, True)
    if s.startswith("-"):
        return (True, s[1:], False)
    return (False, s, False)


class MultiElt:
    """Normal-form element: coefficients on square-free monomials."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingDescriptor, terms: dict | None = None):
        self.ring = ring
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, ring: RingDescriptor, c) -> "MultiElt":
        return cls(ring, {0: ring.coerce(c)})

    @classmethod
    def generator(cls, ring: RingDescriptor, j: int) -> "MultiElt":
        if not 1 <= j <= ring.n:
            raise IndexOutOfRange(f"generator L{j} not in 1..{ring.n}")
        return cls(ring, {1 << (j - 1): ring.one})

    def coeff(self, mask: int):
        return self.terms.get(mask, self.ring.zero)

    def __repr__(self):
        return f"MultiElt({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda m: (m == 0, mask_indices(m)))
        out = []
        for m in keys:
            neg, body, compound = _fmt_coeff(self.terms[m])
            mono = "*".join(f"L{j}" for j in mask_indices(m))
            if compound:
                body = f"({body})"
            if not mono:
                piece = body
            elif body == "1":
                piece = mono
            else:
                piece = f"{body}*{mono}"
            if not out:
                out.append(f"-{piece}" if neg else piece)
            else:
                out.append(f" - {piece}" if neg else f" + {piece}")
        return "".join(out)

    def __eq__(self, other):
        if not isinstance(other, MultiElt):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "MultiElt"):
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, MultiElt):
            other = MultiElt.const(self.ring, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return MultiElt(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiElt(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiElt):
            other = MultiElt.const(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiElt":
        c = self.ring.coerce(c)
        return MultiElt(self.ring, {m: x * c for m, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiElt):
            return self.scale(other)
        self._check(other)
        return mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        result = MultiElt.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def map_coeffs(self, f, ring: RingDescriptor) -> "MultiElt":
        """Apply a coefficient map, landing in ``ring`` (same generators)."""
        return MultiElt(ring, {m: f(c) for m, c in self.terms.items()})

    def transpose(self, i: int) -> "MultiElt":
        """Swap generators L_i and L_{i+1}."""
        lo, hi = 1 << (i - 1), 1 << i
        out = {}
        for m, c in self.terms.items():
            a, b = m & lo, m & hi
            if bool(a) != bool(b):
                m ^= lo | hi
            out[m] = c
        return MultiElt(self.ring, out)


def mul(u: MultiElt, w: MultiElt) -> MultiElt:
    """Product in normal form.

    For monomials S, T with overlap I = S & T the product is
    L_{S^T} * prod_{i in I}(alpha L_i + beta), expanded over subsets of I.
    """
    if u.ring != w.ring:
        raise RingMismatch(f"{u.ring} vs {w.ring}")
    table = _factor_table(u.ring)
    out: dict = {}
    for s, a in u.terms.items():
        for t, c in w.terms.items():
            ac = a * c
            overlap = s & t
            base = s ^ t
            if not overlap:
                out[base] = out[base] + ac if base in out else ac
                continue
            k = overlap.bit_count()
            row = table[k]
            if not row:
                continue
            if len(row) == 1 and row[0][0] in (0, k):
                # alpha = 0 keeps only J = {}; beta = 0 keeps only J = I
                j, f = row[0]
                key = base if j == 0 else base | overlap
                val = ac * f
                out[key] = out[key] + val if key in out else val
                continue
            factors = dict(row)
            for sub in submasks(overlap):
                f = factors.get(sub.bit_count())
                if f is None:
                    continue
                key = base | sub
                val = ac * f
                out[key] = out[key] + val if key in out else val
    return MultiElt(u.ring, out)


def monomial(ring: RingDescriptor, exponents: Sequence[int]) -> MultiElt:
    """Normal form of prod L_j^{exponents[j-1]} (pre-quotient monomial)."""
    if len(exponents) > ring.n:
        raise IndexOutOfRange("more exponents than generators")
    out = MultiElt.const(ring, 1)
    for j, e in enumerate(exponents, start=1):
        if e:
            out = out * MultiElt.generator(ring, j) ** e
    return out


@lru_cache(maxsize=None)
def elementary_symmetric(ring: RingDescriptor, j: int) -> MultiElt:
    """s_j: the sum of all square-free monomials of size j; s_0 = 1."""
    if not 0 <= j <= ring.n:
        raise IndexOutOfRange(f"s{j} not in s0..s{ring.n}")
    one = ring.one
    return MultiElt(ring, {m: one for m in range(1 << ring.n) if m.bit_count() == j})


def is_symmetric(u: MultiElt) -> bool:
    """Fixed by every adjacent transposition (these generate S_n)."""
    return all(u.transpose(i) == u for i in range(1, u.ring.n))


@dataclass(frozen=True)
class SymVec:
    """Symmetric element sum_j coeffs[j] * s_j."""

    ring: RingDescriptor
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.ring.n + 1:
            raise ValueError(f"need {self.ring.n + 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def of(cls, ring: RingDescriptor, coeffs: Iterable) -> "SymVec":
        return cls(ring, tuple(ring.coerce(c) for c in coeffs))

    @classmethod
    def basis(cls, ring: RingDescriptor, j: int) -> "SymVec":
        if not 0 <= j <= ring.n:
            raise IndexOutOfRange(f"s{j} not in s0..s{ring.n}")
        return cls.of(ring, [1 if i == j else 0 for i in range(ring.n + 1)])

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "SymVec":
        return cls.of(ring, [0] * (ring.n + 1))

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            neg, body, compound = _fmt_coeff(c)
            if compound:
                body = f"({body})"
            piece = f"s{j}" if body == "1" else f"{body}*s{j}"
            if not parts:
                parts.append(f"-{piece}" if neg else piece)
            else:
                parts.append(f" - {piece}" if neg else f" + {piece}")
        return "".join(parts) or "0"

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other: "SymVec") -> "SymVec":
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return SymVec(self.ring, tuple(a + c for a, c in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return SymVec(self.ring, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "SymVec") -> "SymVec":
        return self + (-other)

    def scale(self, c) -> "SymVec":
        c = self.ring.coerce(c)
        return SymVec(self.ring, tuple(x * c for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, SymVec):
            return sym_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def map_coeffs(self, f, ring: RingDescriptor) -> "SymVec":
        return SymVec(ring, tuple(f(c) for c in self.coeffs))

    def expand(self) -> MultiElt:
        ring = self.ring
        terms = {}
        for m in range(1 << ring.n):
            c = self.coeffs[m.bit_count()]
            if c:
                terms[m] = c
        return MultiElt(ring, terms)


def symmetric_reduce(u: MultiElt) -> SymVec:
    """Coordinates of a symmetric element on s_0..s_n.

    In normal form s_j is the only basis element touching monomials of
    size j, so c_j is the coefficient of L_1...L_j.
    """
    if not is_symmetric(u):
        raise NotSymmetric(f"{u} is not symmetric")
    return SymVec(u.ring, tuple(u.coeff((1 << j) - 1) for j in range(u.ring.n + 1)))


@lru_cache(maxsize=None)
def structure_constants(ring: RingDescriptor) -> tuple:
    """``sc[i][j][k]``: coefficient of s_k in s_i * s_j.

    Counted directly: a target monomial L_R (|R| = k) arises from
    S, T with overlap I when the surviving linear part J of I lies in R,
    the rest of I avoids R, and R minus J splits into S-only and T-only
    parts.  This gives sum C(k,a) C(n-k,m-a) C(k-a,i-m) alpha^a beta^(m-a)
    over overlap size m and linear part size a.
    """
    n = ring.n
    zero, one = ring.zero, ring.one
    a_pow, b_pow = [one], [one]
    for _ in range(n):
        a_pow.append(a_pow[-1] * ring.alpha)
        b_pow.append(b_pow[-1] * ring.beta)
    sc = []
    for i in range(n + 1):
        row = []
        for j in range(n + 1):
            vec = []
            for k in range(n + 1):
                acc = zero
                for m in range(min(i, j) + 1):
                    a = k - (i + j - 2 * m)
                    if a < 0 or a > m:
                        continue
                    count = comb(k, a) * comb(n - k, m - a) * comb(k - a, i - m)
                    if count:
                        acc = acc + a_pow[a] * b_pow[m - a] * count
                vec.append(acc)
            row.append(tuple(vec))
        sc.append(tuple(row))
    return tuple(sc)


def sym_mul(x: SymVec, y: SymVec) -> SymVec:
    """Product of symmetric elements, computed on the s-basis."""
    if x.ring != y.ring:
        raise RingMismatch(f"{x.ring} vs {y.ring}")
    ring = x.ring
    sc = structure_constants(ring)
    out = [ring.zero] * (ring.n + 1)
    for i, a in enumerate(x.coeffs):
        if not a:
            continue
        for j, c in enumerate(y.coeffs):
            if not c:
                continue
            ac = a * c
            for k, s in enumerate(sc[i][j]):
                if s:
                    out[k] = out[k] + ac * s
    return SymVec(ring, tuple(out))


def signature(exponents: Sequence[int]) -> int:
    """Number of odd entries of an exponent vector."""
    return sum(1 for e in exponents if e % 2)


def relation_signatures(n: int) -> list[int]:
    """Signatures of the monomials of each relation L_j^2 - t (all zero)."""
    out = []
    for j in range(n):
        square = [0] * n
        square[j] = 2
        out.extend([signature(square), signature([0] * n)])
    return out


def s_basis_free_check(ring: RingDescriptor, trials: int, rng) -> bool:
    """Random coefficient vectors expand to zero exactly when they are zero."""
    from .sampling import random_coeff

    for trial in range(trials):
        if trial == 0:
            coeffs = [ring.zero] * (ring.n + 1)
        else:
            coeffs = [
                random_coeff(ring, rng) if rng.random() < 0.6 else ring.zero
                for _ in range(ring.n + 1)
            ]
        vec = SymVec(ring, tuple(coeffs))
        expanded = vec.expand()
        if bool(expanded) != any(coeffs):
            return False
        if symmetric_reduce(expanded) != vec:
            return False
    return True


def substitute_last_pair(u: MultiElt, first, second, target: RingDescriptor) -> MultiElt:
    """Send L_{n-1} -> first and L_n -> second (coefficients of ``target``).

    The remaining generators L_1..L_{n-2} map to the generators of
    ``target``, which must have n - 2 of them.
    """
    n = u.ring.n
    if n < 2 or target.n != n - 2:
        raise IndexOutOfRange("substitution needs n >= 2 and a target with n - 2 generators")
    low = (1 << (n - 2)) - 1
    bit_a, bit_b = 1 << (n - 2), 1 << (n - 1)
    out: dict = {}
    for m, c in u.terms.items():
        if m & bit_a:
            c = c * first
        if m & bit_b:
            c = c * second
        key = m & low
        out[key] = out[key] + c if key in out else c
    return MultiElt(target, out)
