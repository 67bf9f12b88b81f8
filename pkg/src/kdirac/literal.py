"""Text form of multivectors.

Grammar (whitespace-insensitive)::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := coeff [blade] | blade
    coeff  := real | "(" real "," real ")"
    real   := decimal | integer "/" integer
    blade  := "1" | "e" digits ("^" "e" digits)*

Digits of a blade must be strictly ascending in ``0..3``; ``e0^e1`` and
``e01`` denote the same blade.
"""

from __future__ import annotations

import re
from decimal import Decimal
from fractions import Fraction

from .algebra import BLADE_ORDER, NBLADES, MultiVector, blade_name
from .scalars import EXACT, FLOAT, Backend, QComplex


class LiteralError(ValueError):
    """Malformed multivector literal; ``position`` is the 0-based offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


# no exponent notation: "2e12" must read as 2 times the blade e12
_REAL = r"[0-9]+(?:\.[0-9]*)?(?:/[0-9]+)?|\.[0-9]+"
_TOKEN = re.compile(
    rf"""
    (?P<ws>\s+)
  | (?P<sign>[+-])
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
  | (?P<caret>\^)
  | (?P<blade>e[0-9]+)
  | (?P<real>{_REAL})
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise LiteralError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _real_value(tok: str) -> Fraction:
    return Fraction(tok)


class _Parser:
    def __init__(self, text: str, backend: Backend):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.backend = backend

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            raise LiteralError(f"expected {kind}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        self.i += 1
        return tok

    def signed_real(self) -> Fraction:
        sign = 1
        if self.peek()[0] == "sign":
            sign = -1 if self.take("sign")[1] == "-" else 1
        return sign * _real_value(self.take("real")[1])

    def coeff(self):
        kind = self.peek()[0]
        if kind == "lparen":
            self.take("lparen")
            re_ = self.signed_real()
            self.take("comma")
            im_ = self.signed_real()
            self.take("rparen")
            return re_, im_
        if kind == "real":
            tok = self.take("real")
            # a bare "1" followed by nothing blade-like is the scalar blade
            return _real_value(tok[1]), Fraction(0)
        return None

    def blade(self) -> int | None:
        if self.peek()[0] != "blade":
            return None
        mask = 0
        last = -1
        while True:
            kind, tok, pos = self.take("blade")
            for off, ch in enumerate(tok[1:], start=1):
                idx = int(ch)
                if idx > 3:
                    raise LiteralError(f"blade index {idx} out of range 0..3", self.text, pos + off)
                if idx <= last:
                    raise LiteralError("blade indices must be strictly ascending", self.text, pos + off)
                last = idx
                mask |= 1 << idx
            if self.peek()[0] != "caret":
                return mask
            self.take("caret")

    def term(self):
        start = self.peek()[2]
        c = self.coeff()
        mask = self.blade()
        if c is None and mask is None:
            raise LiteralError("expected a coefficient or blade", self.text, start)
        if c is None:
            c = (Fraction(1), Fraction(0))
        if mask is None:
            mask = 0
        return mask, c

    def parse(self) -> MultiVector:
        terms = [0] * NBLADES
        sign = 1
        if self.peek()[0] == "sign":
            sign = -1 if self.take("sign")[1] == "-" else 1
        while True:
            mask, (re_, im_) = self.term()
            value = self._scalar(sign * re_, sign * im_)
            terms[mask] = terms[mask] + value
            kind, tok, pos = self.peek()
            if kind == "end":
                break
            if kind != "sign":
                raise LiteralError(f"expected '+' or '-', found {tok!r}", self.text, pos)
            sign = -1 if self.take("sign")[1] == "-" else 1
        return MultiVector(self.backend.coerce(c) if c else 0 for c in terms)

    def _scalar(self, re_: Fraction, im_: Fraction):
        if self.backend.exact:
            return QComplex(re_, im_)
        return complex(float(re_), float(im_))


def parse_multivector(text: str, backend: Backend = EXACT) -> MultiVector:
    """Parse a literal such as ``"1 + e0"`` or ``"(0,1) e12"``."""
    return _Parser(text, backend).parse()


def _fmt_real(x) -> str:
    if isinstance(x, float):
        if x.is_integer():
            return str(int(x))
        return format(Decimal(repr(x)), "f")
    # gmpy2 mpq prints as "p/q" or "p"
    return str(x)


def _split(c):
    if isinstance(c, QComplex):
        return c.re, c.im
    z = complex(c)
    return z.real, z.imag


def format_multivector(u: MultiVector) -> str:
    """Canonical text: terms in grade order, unit coefficients elided."""
    parts = []
    for mask in BLADE_ORDER:
        c = u.coeffs[mask]
        if not c:
            continue
        re_, im_ = _split(c)
        if not re_ and not im_:
            continue
        name = blade_name(mask)
        if im_:
            body = f"({_fmt_real(re_)},{_fmt_real(im_)})"
            sign = "+"
            body = body if mask == 0 else f"{body} {name}"
        else:
            sign = "-" if re_ < 0 else "+"
            mag = _fmt_real(-re_ if re_ < 0 else re_)
            if mask == 0:
                body = mag
            elif mag == "1":
                body = name
            else:
                body = f"{mag} {name}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def canonical(text: str, backend: Backend = EXACT) -> str:
    return format_multivector(parse_multivector(text, backend))


__all__ = ["LiteralError", "parse_multivector", "format_multivector", "canonical"]
