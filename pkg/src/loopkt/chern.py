"""Chern character, the Thom-space ring in xbar and abar, and the matrices M, N.

Cohomology coefficients are truncated power series: in ``bb`` for the
torus (with t = bb^2) and in ``t`` for G.  The Chern character sends
b^k -> e^{k bb} and L_j -> Lbar_j p(t) + q(t).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .coefficients import LaurentElt, Poly, Rational, restrict
from .errors import ResidueNonzero, RingMismatch
from .quotient_rings import (
    MultiElt,
    RingDescriptor,
    SymVec,
    h_series_g,
    h_series_t,
    submasks,
    symmetric_reduce,
)
from .series import TruncSeries, exp_series, series_g, series_p, series_q, series_todd
from .tower import kernel_basis

# -- coefficients -----------------------------------------------------------


def ch_coeff(a: LaurentElt, cutoff: int) -> TruncSeries:
    """Series in bb of sum c_k e^{k bb}."""
    out = [Rational(0)] * (cutoff + 1)
    for m in range(cutoff + 1):
        acc = 0
        for k, c in a.coeffs.items():
            acc += c * k**m
        out[m] = Rational(acc, factorial(m))
    return TruncSeries(out, cutoff, "bb")


def ch_coeff_g(p: Poly, cutoff: int) -> TruncSeries:
    """ch of an R(G) element: an even series in bb, read as a series in t."""
    return ch_coeff(restrict(p), 2 * cutoff).even_part("t")


def poly_to_series(p: Poly, cutoff: int) -> TruncSeries:
    return TruncSeries(p.coeffs, cutoff, p.var)


def _coeff_map(ring: RingDescriptor, cutoff: int):
    if ring.coeff == "RT":
        return lambda c: ch_coeff(c, cutoff), h_series_t
    if ring.coeff == "RG":
        return lambda c: ch_coeff_g(c, cutoff), h_series_g
    raise RingMismatch(f"Chern character is defined on K-rings, not {ring.coeff}")


def generator_image(ring: RingDescriptor, cutoff: int) -> tuple[TruncSeries, TruncSeries]:
    """(p, q) in the coefficient variable of ch's target: ch(L) = Lbar p + q."""
    if ring.coeff == "RT":
        return (
            series_p(cutoff // 2).substitute_power(2, cutoff, "bb"),
            series_q(cutoff // 2).substitute_power(2, cutoff, "bb"),
        )
    return series_p(cutoff, "t"), series_q(cutoff, "t")


def ch_element(u: MultiElt, cutoff: int) -> MultiElt:
    """Chern character of a K-theory element into series-coefficient cohomology."""
    coeff_ch, target_builder = _coeff_map(u.ring, cutoff)
    target = target_builder(u.ring.n, cutoff)
    p, q = generator_image(u.ring, cutoff)
    n = u.ring.n
    p_pow, q_pow = [target.one], [target.one]
    for _ in range(n):
        p_pow.append(p_pow[-1] * p)
        q_pow.append(q_pow[-1] * q)
    # pq[k][j] = p^j q^(k-j)
    pq = [[p_pow[j] * q_pow[k - j] for j in range(k + 1)] for k in range(n + 1)]
    out: dict = {}
    for mask, c in u.terms.items():
        cc = coeff_ch(c)
        k = mask.bit_count()
        for sub in submasks(mask):
            val = cc * pq[k][sub.bit_count()]
            out[sub] = out[sub] + val if sub in out else val
    return MultiElt(target, out)


def ch_symvec(u: SymVec, cutoff: int) -> SymVec:
    return symmetric_reduce(ch_element(u.expand(), cutoff))


def weyl_series_elt(u: MultiElt) -> MultiElt:
    """Weyl action on torus cohomology with series coefficients: bb -> -bb."""
    if u.ring.coeff != "Sb":
        raise RingMismatch("Weyl action is defined on series in bb")
    return u.map_coeffs(lambda c: c.negate_var(), u.ring)


# -- Thom space ring ---------------------------------------------------------


class ThomElt:
    """Element of Q[[t]][xbar, abar] / (xbar^2 - t, abar^2r + 2 xbar abar^(2r-1)).

    Terms are ``{(e, m): series in t}`` for the monomial xbar^e abar^m with
    e in {0, 1} and 0 <= m <= 2r-1.
    """

    __slots__ = ("r", "cutoff", "terms")

    def __init__(self, r: int, cutoff: int, terms: dict | None = None):
        self.r = r
        self.cutoff = cutoff
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def reduce_monomial(self, e: int, m: int) -> tuple[tuple[int, int], Rational, int]:
        """Canonical form of xbar^e abar^m as (monomial, scalar, power of t)."""
        top = 2 * self.r - 1
        k = max(0, m - top)
        total_x = e + k
        return (total_x % 2, m - k), Rational((-2) ** k), total_x // 2

    def _add_term(self, out: dict, e: int, m: int, c: TruncSeries):
        mono, scalar, tpow = self.reduce_monomial(e, m)
        if tpow > self.cutoff:
            return
        val = c.shift(tpow) * scalar
        out[mono] = out[mono] + val if mono in out else val

    @classmethod
    def from_a_series(cls, r: int, cutoff: int, f: TruncSeries) -> "ThomElt":
        """Image of a rational power series in abar."""
        out: dict = {}
        elt = cls(r, cutoff)
        for m, c in enumerate(f.coeffs):
            if c:
                elt._add_term(out, 0, m, TruncSeries.const(c, cutoff))
        return cls(r, cutoff, out)

    def __eq__(self, other):
        if not isinstance(other, ThomElt):
            return NotImplemented
        return (self.r, self.cutoff, self.terms) == (other.r, other.cutoff, other.terms)

    def __add__(self, other: "ThomElt") -> "ThomElt":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return ThomElt(self.r, self.cutoff, out)

    def __neg__(self):
        return ThomElt(self.r, self.cutoff, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "ThomElt") -> "ThomElt":
        if (self.r, self.cutoff) != (other.r, other.cutoff):
            raise RingMismatch("Thom elements from different rings")
        out: dict = {}
        for (e1, m1), c1 in self.terms.items():
            for (e2, m2), c2 in other.terms.items():
                self._add_term(out, e1 + e2, m1 + m2, c1 * c2)
        return ThomElt(self.r, self.cutoff, out)

    def coeff(self, e: int, m: int) -> TruncSeries:
        return self.terms.get((e, m), TruncSeries.const(0, self.cutoff))

    def __str__(self):
        parts = []
        for (e, m), c in sorted(self.terms.items()):
            mono = "*".join(
                x for x in ("xb" if e else "", f"ab^{m}" if m > 1 else ("ab" if m else "")) if x
            )
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts) or "0"


def chern_class_beta(r: int, k: int) -> dict[tuple[int, int], int]:
    """c_k(beta) = sum_j C(2r-1, j) (-2x)^j (a + 2x)^(k-j) in Q[x, a], unreduced.

    Returned as ``{(x exponent, a exponent): integer coefficient}``.
    """
    if not 0 <= k <= 2 * r:
        raise ValueError("degree must be in 0..2r")
    out: dict = {}
    for j in range(k + 1):
        outer = comb(2 * r - 1, j) * (-2) ** j
        if not outer:
            continue
        rest = k - j
        # (a + 2x)^rest = sum_i C(rest, i) a^i (2x)^(rest-i)
        for i in range(rest + 1):
            key = (j + rest - i, i)
            out[key] = out.get(key, 0) + outer * comb(rest, i) * 2 ** (rest - i)
    return {key: c for key, c in out.items() if c}


def bipoly_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for (x1, a1), c1 in f.items():
        for (x2, a2), c2 in g.items():
            key = (x1 + x2, a1 + a2)
            out[key] = out.get(key, 0) + c1 * c2
    return {key: c for key, c in out.items() if c}


def bipoly_add(f: dict, g: dict) -> dict:
    out = dict(f)
    for key, c in g.items():
        out[key] = out.get(key, 0) + c
    return {key: c for key, c in out.items() if c}


def _one_minus_exp(degree: int) -> TruncSeries:
    return 1 - exp_series(degree, "a")


def compute_ch_U(r: int, cutoff: int) -> ThomElt:
    """ch_G(U) = (1 - e^abar)^(2r-1), reduced in the Thom ring."""
    degree = 2 * r - 1 + 2 * cutoff + 1
    return ThomElt.from_a_series(r, cutoff, _one_minus_exp(degree) ** (2 * r - 1))


def ch_U_closed_form(r: int, cutoff: int) -> ThomElt:
    """g1(4t) Ubar - 2 g2(4t) xbar Ubar with Ubar = -abar^(2r-1)."""
    g1, g2 = series_g(r, cutoff)
    top = 2 * r - 1
    return ThomElt(r, cutoff, {(0, top): -g1.scale_argument(4), (1, top): g2.scale_argument(4) * 2})


def verify_barU_todd(r: int, cutoff: int) -> bool:
    """Todd(-abar)^(2r-1) * (1 - e^abar)^(2r-1) = (-1)^(2r-1) abar^(2r-1)."""
    todd_neg = series_todd(cutoff, "a").scale_argument(-1)
    lhs = todd_neg ** (2 * r - 1) * _one_minus_exp(cutoff) ** (2 * r - 1)
    rhs = [0] * (cutoff + 1)
    if 2 * r - 1 <= cutoff:
        rhs[2 * r - 1] = (-1) ** (2 * r - 1)
    return lhs == TruncSeries(rhs, cutoff, "a")


# -- 2x2 series matrices ----------------------------------------------------


@dataclass(frozen=True)
class SeriesMatrix2:
    a: TruncSeries
    b: TruncSeries
    c: TruncSeries
    d: TruncSeries

    @property
    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> TruncSeries:
        return self.a * self.d - self.b * self.c

    def __mul__(self, o: "SeriesMatrix2") -> "SeriesMatrix2":
        return SeriesMatrix2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "SeriesMatrix2":
        inv = self.det().invert()
        return SeriesMatrix2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def is_upper_triangular(self) -> bool:
        return not self.c

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def identity2(cutoff: int) -> SeriesMatrix2:
    one, zero = TruncSeries.const(1, cutoff), TruncSeries.const(0, cutoff)
    return SeriesMatrix2(one, zero, zero, one)


def compute_M_from_thom(r: int, cutoff: int) -> SeriesMatrix2:
    """Rows: coordinates of ch(U) and ch(xU) = (p xbar + q) ch(U) on (Ubar, xbar Ubar)."""
    ch_u = compute_ch_U(r, cutoff)
    ch_x = ThomElt(r, cutoff, {(1, 0): series_p(cutoff), (0, 0): series_q(cutoff)})
    ch_xu = ch_x * ch_u
    top = 2 * r - 1
    return SeriesMatrix2(
        -ch_u.coeff(0, top), -ch_u.coeff(1, top), -ch_xu.coeff(0, top), -ch_xu.coeff(1, top)
    )


@lru_cache(maxsize=None)
def compute_M(r: int, cutoff: int) -> SeriesMatrix2:
    """Matrix M assembled from p, q and g1(4t), g2(4t)."""
    p, q = series_p(cutoff), series_q(cutoff)
    g1, g2 = series_g(r, cutoff)
    g1, g2 = g1.scale_argument(4), g2.scale_argument(4)
    t = TruncSeries.gen(cutoff)
    M = SeriesMatrix2(g1, -2 * g2, q * g1 - 2 * t * p * g2, p * g1 - 2 * q * g2)
    if compute_M_from_thom(r, cutoff) != M:
        raise ArithmeticError(f"M at r={r} disagrees with the Thom-ring computation")
    return M


def kbar_series(r: int, cutoff: int) -> tuple[SymVec, SymVec]:
    kb = kernel_basis(r, "H")
    ring = h_series_g(2 * r, cutoff)
    to_s = lambda c: poly_to_series(c, cutoff)  # noqa: E731
    return kb.k1.map_coeffs(to_s, ring), kb.k2.map_coeffs(to_s, ring)


def express_in_kbar(u: SymVec, kbar1: SymVec, kbar2: SymVec) -> tuple[TruncSeries, TruncSeries]:
    """(x1, x2) with u = x1*Kbar1 + x2*Kbar2, eliminating from the top."""
    n = u.ring.n
    x2 = -u.coeffs[n]
    rest = u - kbar2.scale(x2)
    x1 = rest.coeffs[n - 1]
    residue = rest - kbar1.scale(x1)
    if residue:
        raise ResidueNonzero(f"remainder after elimination: {residue}")
    return x1, x2


@lru_cache(maxsize=None)
def compute_N(r: int, cutoff: int) -> SeriesMatrix2:
    """ch(K_j) = n_1j Kbar_1 + n_2j Kbar_2."""
    kb = kernel_basis(r, "K")
    kbar1, kbar2 = kbar_series(r, cutoff)
    n11, n21 = express_in_kbar(ch_symvec(kb.k1, cutoff), kbar1, kbar2)
    n12, n22 = express_in_kbar(ch_symvec(kb.k2, cutoff), kbar1, kbar2)
    return SeriesMatrix2(n11, n12, n21, n22)


def compute_chQ(r: int, cutoff: int, qbar: SeriesMatrix2 | None = None) -> SeriesMatrix2:
    """ch(Q) from N ch(Q) = Qbar M, with Qbar = I by default."""
    M, N = compute_M(r, cutoff), compute_N(r, cutoff)
    qbar = qbar or identity2(cutoff)
    return N.inverse() * qbar * M


def detq_summary(r: int, cutoff: int) -> dict:
    """Determinants in the chain; every value is exact through ``cutoff``."""
    M, N = compute_M(r, cutoff), compute_N(r, cutoff)
    chq = compute_chQ(r, cutoff)
    p = series_p(cutoff)
    target = p ** (4 * r - 1)
    det_q = chq.det()
    return {
        "det_M": M.det() == target,
        "det_N": N.det() == target,
        "matrix_equation": N * chq == M,
        "det_chQ_is_one": det_q == 1,
        "det_chQ_is_minus_one": det_q == -1,
        "det_chQ": det_q,
    }


def verify_detQ(r: int, cutoff: int) -> bool:
    s = detq_summary(r, cutoff)
    return s["det_M"] and s["det_N"] and s["matrix_equation"] and s["det_chQ_is_one"]


def naturality_holds(r: int, j: int, cutoff: int) -> bool:
    """ch(i*(s_j)) == i*_H(ch(s_j)) on the torus rings at level r."""
    from .quotient_rings import elementary_symmetric, k_t
    from .tower import istar_h_on_generators, istar_on_generators

    s = elementary_symmetric(k_t(2 * r), j)
    left = ch_element(istar_on_generators(s), cutoff)
    right = istar_h_on_generators(ch_element(s, cutoff))
    return left == right
