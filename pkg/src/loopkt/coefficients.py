"""Coefficient rings: R(T) = Z[b, b^-1], R(G) = Z[v], and Q[t], Q[bb].

Elements are immutable and kept in canonical form (no stored zero
coefficients), so ``==`` is structural equality.  Integers are Python ints,
rationals are ``gmpy2.mpq`` (exported here as ``Rational``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from gmpy2 import mpq as Rational

from .errors import NotInvariant, RingMismatch

MPQ = type(Rational())
SCALAR_TYPES = (int, MPQ, Fraction)
Scalar = Union[int, MPQ, Fraction]


def format_scalar(c: Scalar) -> str:
    if not isinstance(c, int) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


def join_terms(pieces: Iterable[tuple[Scalar, str]]) -> str:
    """Join ``(coefficient, monomial)`` pairs as ``a*m1 + b*m2 - c*m3``.

    An empty monomial string stands for the unit.
    """
    out = []
    for coeff, mono in pieces:
        neg = coeff < 0
        mag = -coeff if neg else coeff
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{format_scalar(mag)}*{mono}"
        else:
            body = format_scalar(mag)
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) if out else "0"


def _power_str(var: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    return f"{var}^{k}"


class LaurentElt:
    """Element of Z[b, b^-1] as a mapping exponent -> nonzero coefficient."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {k: c for k, c in (coeffs or {}).items() if c}
        self._hash = None

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentElt":
        return cls({k: c})

    @classmethod
    def const(cls, c: int) -> "LaurentElt":
        return cls({0: c})

    def __repr__(self):
        return f"LaurentElt({self})"

    def __str__(self):
        return join_terms(
            (self.coeffs[k], _power_str("b", k)) for k in sorted(self.coeffs, reverse=True)
        )

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentElt.const(other)
        if not isinstance(other, LaurentElt):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, LaurentElt):
            return other
        if isinstance(other, int):
            return LaurentElt.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentElt(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentElt({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[int, int] = {}
        for i, a in self.coeffs.items():
            for j, c in other.coeffs.items():
                out[i + j] = out.get(i + j, 0) + a * c
        return LaurentElt(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            # only the units +-b^k are invertible
            if len(self.coeffs) != 1 or abs(next(iter(self.coeffs.values()))) != 1:
                raise ValueError(f"{self} is not a unit")
            (k, c), = self.coeffs.items()
            return LaurentElt({k * n: c ** -n})
        result = LaurentElt.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


B = LaurentElt.monomial(1)
B_INV = LaurentElt.monomial(-1)


class Poly:
    """Univariate polynomial with integer or rational coefficients.

    ``coeffs[k]`` is the coefficient of ``var**k``.  Used for R(G) = Z[v]
    (``var='v'``) and for the rational cohomology coefficients Q[t]
    (``var='t'``) and Q[bb] (``var='bb'``).
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Scalar] = (), var: str = "v"):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def gen(cls, var: str = "v") -> "Poly":
        return cls((0, 1), var)

    @classmethod
    def const(cls, c: Scalar, var: str = "v") -> "Poly":
        return cls((c,), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self):
        return f"Poly({self}, var={self.var!r})"

    def __str__(self):
        return join_terms(
            (c, _power_str(self.var, k))
            for k, c in reversed(list(enumerate(self.coeffs)))
            if c
        )

    def __len__(self):
        return sum(1 for c in self.coeffs if c)

    def __eq__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return self.coeffs == Poly.const(other, self.var).coeffs
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and (self.var == other.var or not self.coeffs)

    def __hash__(self):
        return hash((self.coeffs, self.var if self.coeffs else None))

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.var != self.var and other.coeffs and self.coeffs:
                raise RingMismatch(f"cannot combine {self.var} and {other.var}")
            return other
        if isinstance(other, SCALAR_TYPES):
            return Poly.const(other, self.var)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        var = self.var if self.coeffs else other.var
        a, c = self.coeffs, other.coeffs
        n = max(len(a), len(c))
        return Poly(
            ((a[k] if k < len(a) else 0) + (c[k] if k < len(c) else 0) for k in range(n)),
            var,
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly((-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        var = self.var if self.coeffs else other.var
        a, c = self.coeffs, other.coeffs
        if not a or not c:
            return Poly((), var)
        out = [0] * (len(a) + len(c) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(c):
                    out[i + j] += x * y
        return Poly(out, var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def negate_var(self) -> "Poly":
        """The substitution var -> -var (Weyl action on Q[bb])."""
        return Poly((c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)), self.var)

    def even_part_as(self, var: str) -> "Poly":
        """For an even polynomial in x, the polynomial in var = x**2."""
        if any(c for c in self.coeffs[1::2]):
            raise ValueError("polynomial has odd-degree terms")
        return Poly(self.coeffs[0::2], var)

    def substitute_square(self, var: str) -> "Poly":
        """Polynomial in var obtained by substituting self.var -> var**2."""
        out = [0] * (2 * len(self.coeffs))
        for k, c in enumerate(self.coeffs):
            out[2 * k] = c
        return Poly(out, var)


RepGElt = Poly
V = Poly.gen("v")
T_BAR = Poly.gen("t")
B_BAR = Poly.gen("bb")


def weyl(a: LaurentElt) -> LaurentElt:
    """Weyl involution b -> b^-1."""
    return LaurentElt({-k: c for k, c in a.coeffs.items()})


def restrict(p: Poly) -> LaurentElt:
    """Restriction R(G) -> R(T), the ring map v -> b + b^-1."""
    v_image = B + B_INV
    acc = LaurentElt()
    for c in reversed(p.coeffs):
        acc = acc * v_image + c
    return acc


def invariants_to_g(a: LaurentElt) -> Poly:
    """Write a Weyl-invariant Laurent element as a polynomial in v.

    Greedy elimination from the top exponent: the leading term c*b^k is
    removed by subtracting c * restrict(v^k).
    """
    if weyl(a) != a:
        raise NotInvariant(f"{a} is not Weyl-invariant")
    rest = a
    out: dict[int, int] = {}
    while rest:
        k = max(rest.coeffs)
        c = rest.coeffs[k]
        out[k] = c
        rest = rest - c * restrict(Poly.gen("v") ** k)
    top = max(out, default=-1)
    return Poly((out.get(k, 0) for k in range(top + 1)), "v")


def augment(a: LaurentElt) -> int:
    """Non-equivariant specialization b -> 1: the sum of the coefficients."""
    return sum(a.coeffs.values())
