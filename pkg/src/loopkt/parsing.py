"""Text grammar for ring elements.

::

    expr := ['+'|'-'] term (('+'|'-') term)*
    term := atom ('*' atom)*
    atom := integer | 'b' ['^' int] | 'v' ['^' uint] | 't' ['^' uint]
          | 'bb' ['^' uint] | 'L' uint | 's' uint | '(' expr ')'

Whitespace is insignificant.  Rendering with ``str()`` produces text this
parser accepts, so parse/render round trips.
"""

from __future__ import annotations

import re

from .coefficients import B, B_BAR, B_INV, LaurentElt, T_BAR, V
from .errors import CoefficientNotInRing, ParseError, UnknownGenerator
from .quotient_rings import MultiElt, RingDescriptor, elementary_symmetric

_TOKEN = re.compile(r"\s*(?:(\d+)|(bb|b|v|t|L|s)|(.))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingDescriptor):
        self.tokens = tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def uint(self) -> int:
        kind, val, pos = self.take()
        if kind != "int":
            raise ParseError("expected an integer", pos)
        return int(val)

    def exponent(self, signed: bool) -> int:
        kind, val, _ = self.peek()
        if not (kind == "op" and val == "^"):
            return 1
        self.take()
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            if not signed:
                raise ParseError("negative exponent not allowed here", pos)
            self.take()
            return -self.uint()
        return self.uint()

    def parse(self) -> MultiElt:
        out = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return out

    def expr(self) -> MultiElt:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> MultiElt:
        acc = self.atom()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.atom()
            else:
                return acc

    def coefficient(self, name: str, k: int, pos: int):
        tag = self.ring.coeff
        if name == "b" and tag == "RT":
            return B**k if k >= 0 else B_INV ** (-k)
        if name == "v" and tag == "RT":
            return (B + B_INV) ** k
        if name == "v" and tag == "RG":
            return V**k
        if name == "t" and tag == "Qt":
            return T_BAR**k
        if name == "t" and tag == "Qb":
            return B_BAR ** (2 * k)
        if name == "bb" and tag == "Qb":
            return B_BAR**k
        raise CoefficientNotInRing(f"{name!r} is not a coefficient of {tag}", pos)

    def atom(self) -> MultiElt:
        kind, val, pos = self.take()
        ring = self.ring
        if kind == "int":
            return MultiElt.const(ring, int(val))
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "name":
            if val == "L":
                j = self.uint()
                if not 1 <= j <= ring.n:
                    raise UnknownGenerator(f"L{j} is not a generator (n = {ring.n})", pos)
                return MultiElt.generator(ring, j)
            if val == "s":
                j = self.uint()
                if not 0 <= j <= ring.n:
                    raise UnknownGenerator(f"s{j} is not defined (n = {ring.n})", pos)
                return elementary_symmetric(ring, j)
            k = self.exponent(signed=(val == "b"))
            return MultiElt.const(ring, self.coefficient(val, k, pos))
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", pos)


def parse_element(text: str, ring: RingDescriptor) -> MultiElt:
    """Parse ``text`` into a normal-form element of ``ring``."""
    return _Parser(text, ring).parse()


def render(u) -> str:
    return str(u)


def parse_laurent(text: str) -> LaurentElt:
    from .quotient_rings import k_t

    u = parse_element(text, k_t(0))
    return u.coeff(0)
