"""Truncated power series over Q and the named series p, q, g1, g2, Todd.

A :class:`TruncSeries` keeps coefficients of ``var**0 .. var**cutoff``;
every operation truncates at the cutoff, so it is exact arithmetic in
``Q[x]/(x**(cutoff+1))``.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from .coefficients import SCALAR_TYPES, Rational, Scalar, join_terms
from .errors import NonUnitConstantTerm, NonzeroConstantTerm, RingMismatch

DEFAULT_CUTOFF = 12


@lru_cache(maxsize=None)
def inv_factorial(n: int) -> Rational:
    return Rational(1, factorial(n))


class TruncSeries:
    __slots__ = ("coeffs", "cutoff", "var")

    def __init__(self, coeffs: Iterable[Scalar], cutoff: int, var: str = "t"):
        if cutoff < 0:
            raise ValueError("cutoff must be non-negative")
        cs = [Rational(c) for c in list(coeffs)[: cutoff + 1]]
        cs.extend([Rational(0)] * (cutoff + 1 - len(cs)))
        self.coeffs: tuple = tuple(cs)
        self.cutoff = cutoff
        self.var = var

    @classmethod
    def _raw(cls, coeffs: list, cutoff: int, var: str) -> "TruncSeries":
        # coeffs already Rationals of length cutoff + 1
        s = object.__new__(cls)
        s.coeffs = tuple(coeffs)
        s.cutoff = cutoff
        s.var = var
        return s

    @classmethod
    def const(cls, c: Scalar, cutoff: int, var: str = "t") -> "TruncSeries":
        return cls((c,), cutoff, var)

    @classmethod
    def gen(cls, cutoff: int, var: str = "t") -> "TruncSeries":
        return cls((0, 1), cutoff, var)

    def __getitem__(self, k: int) -> Rational:
        return self.coeffs[k] if 0 <= k <= self.cutoff else Rational(0)

    def __repr__(self):
        return f"TruncSeries({self})"

    def __str__(self):
        body = join_terms(
            (c, "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}"))
            for k, c in enumerate(self.coeffs)
            if c
        )
        order = self.var if self.cutoff == 0 else f"{self.var}^{self.cutoff + 1}"
        if body == "0":
            return f"O({order})"
        return f"{body} + O({order})"

    def __len__(self):
        return sum(1 for c in self.coeffs if c)

    def __eq__(self, other):
        if isinstance(other, SCALAR_TYPES):
            other = TruncSeries.const(other, self.cutoff, self.var)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.cutoff == other.cutoff and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.cutoff))

    def __bool__(self):
        return any(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            if other.cutoff != self.cutoff:
                raise RingMismatch(f"cutoffs differ: {self.cutoff} vs {other.cutoff}")
            return other
        if isinstance(other, SCALAR_TYPES):
            return TruncSeries.const(other, self.cutoff, self.var)
        return None

    def __add__(self, other):
        if isinstance(other, SCALAR_TYPES):
            cs = list(self.coeffs)
            cs[0] += other
            return TruncSeries._raw(cs, self.cutoff, self.var)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return TruncSeries._raw(
            [a + c for a, c in zip(self.coeffs, other.coeffs)], self.cutoff, self.var
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw([-c for c in self.coeffs], self.cutoff, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return TruncSeries._raw([c * other for c in self.coeffs], self.cutoff, self.var)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, c = self.coeffs, other.coeffs
        D = self.cutoff
        out = [Rational(0)] * (D + 1)
        for i in range(D + 1):
            x = a[i]
            if not x:
                continue
            for j in range(D + 1 - i):
                y = c[j]
                if y:
                    out[i + j] += x * y
        return TruncSeries._raw(out, D, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        result = TruncSeries.const(1, self.cutoff, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return self * (1 / Rational(other))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.invert()

    def invert(self) -> "TruncSeries":
        """Multiplicative inverse; the constant term must be nonzero."""
        a = self.coeffs
        if not a[0]:
            raise NonUnitConstantTerm(f"cannot invert {self}")
        D = self.cutoff
        inv0 = 1 / a[0]
        out = [Rational(0)] * (D + 1)
        out[0] = inv0
        for n in range(1, D + 1):
            acc = Rational(0)
            for k in range(1, n + 1):
                if a[k]:
                    acc += a[k] * out[n - k]
            out[n] = -acc * inv0
        return TruncSeries._raw(out, D, self.var)

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """``self(inner(x))``; inner must have zero constant term."""
        if inner.coeffs[0]:
            raise NonzeroConstantTerm("inner series of a composition must vanish at 0")
        D = inner.cutoff
        acc = TruncSeries.const(0, D, inner.var)
        # Horner from the top; truncation of self beyond D is harmless.
        for c in reversed(self.coeffs[: D + 1]):
            acc = acc * inner + c
        return acc

    def exp(self) -> "TruncSeries":
        """``exp(self)`` for a series with zero constant term."""
        if self.coeffs[0]:
            raise NonzeroConstantTerm("exp requires zero constant term")
        return exp_series(self.cutoff, self.var).compose(self)

    def scale_argument(self, c: Scalar) -> "TruncSeries":
        """The substitution x -> c*x."""
        c = Rational(c)
        return TruncSeries._raw(
            [a * c**k for k, a in enumerate(self.coeffs)], self.cutoff, self.var
        )

    def substitute_power(self, m: int, cutoff: int | None = None, var: str | None = None):
        """The substitution x -> y**m, truncated at ``cutoff`` in y."""
        cutoff = self.cutoff * m if cutoff is None else cutoff
        out = [Rational(0)] * (cutoff + 1)
        for k, a in enumerate(self.coeffs):
            if k * m > cutoff:
                break
            out[k * m] = a
        return TruncSeries._raw(out, cutoff, var or self.var)

    def even_part(self, var: str | None = None) -> "TruncSeries":
        """Series in y = x**2 built from the even coefficients."""
        return TruncSeries(self.coeffs[0::2], self.cutoff // 2, var or self.var)

    def odd_part(self, var: str | None = None) -> "TruncSeries":
        """Series in y = x**2 built from the odd coefficients (divided by x)."""
        return TruncSeries(self.coeffs[1::2], (self.cutoff - 1) // 2, var or self.var)

    def truncate(self, cutoff: int) -> "TruncSeries":
        if cutoff > self.cutoff:
            raise ValueError("cannot raise the cutoff of a truncated series")
        return TruncSeries._raw(list(self.coeffs[: cutoff + 1]), cutoff, self.var)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by x**k."""
        out = [Rational(0)] * k + list(self.coeffs[: self.cutoff + 1 - k])
        return TruncSeries._raw(out[: self.cutoff + 1], self.cutoff, self.var)

    def negate_var(self) -> "TruncSeries":
        """The substitution x -> -x (Weyl action on series in bb)."""
        return self.scale_argument(-1)


def series_from(coeffs: Sequence[Scalar], cutoff: int, var: str = "t") -> TruncSeries:
    return TruncSeries(coeffs, cutoff, var)


@lru_cache(maxsize=None)
def exp_series(cutoff: int, var: str = "t") -> TruncSeries:
    return TruncSeries([inv_factorial(k) for k in range(cutoff + 1)], cutoff, var)


@lru_cache(maxsize=None)
def series_p(cutoff: int = DEFAULT_CUTOFF, var: str = "t") -> TruncSeries:
    """sinh(sqrt t)/sqrt t = sum t^k/(2k+1)!"""
    return TruncSeries([inv_factorial(2 * k + 1) for k in range(cutoff + 1)], cutoff, var)


@lru_cache(maxsize=None)
def series_q(cutoff: int = DEFAULT_CUTOFF, var: str = "t") -> TruncSeries:
    """cosh(sqrt t) = sum t^k/(2k)!"""
    return TruncSeries([inv_factorial(2 * k) for k in range(cutoff + 1)], cutoff, var)


@lru_cache(maxsize=None)
def series_G(r: int, degree: int, var: str = "y") -> TruncSeries:
    """((e^y - 1)/y)^(2r-1) through ``degree``."""
    if r < 1:
        raise ValueError("level r must be >= 1")
    base = TruncSeries([inv_factorial(k + 1) for k in range(degree + 1)], degree, var)
    return base ** (2 * r - 1)


@lru_cache(maxsize=None)
def series_g(r: int, cutoff: int = DEFAULT_CUTOFF, var: str = "t"):
    """Even/odd split ``G(y) = g1(y**2) + y*g2(y**2)``; returns (g1, g2)."""
    G = series_G(r, 2 * cutoff + 1)
    return G.even_part(var), G.odd_part(var)


@lru_cache(maxsize=None)
def series_todd(cutoff: int = DEFAULT_CUTOFF, var: str = "y") -> TruncSeries:
    """y/(1 - e^-y), by inverting (1 - e^-y)/y = sum (-1)^k y^k/(k+1)!"""
    denom = TruncSeries(
        [(-1) ** k * inv_factorial(k + 1) for k in range(cutoff + 1)], cutoff, var
    )
    return denom.invert()
