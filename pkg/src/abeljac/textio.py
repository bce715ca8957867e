"""Plain-text polynomial grammar: parsing and canonical printing.

Grammar (whitespace is ignored)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*      '/' only by a rational literal
    unary    := '-' unary | factor
    factor   := base ('^' int)?
    base     := rational | var | '(' expr ')'
    var      := x | y | mu0 | mu1 | mu2 | mu3 | r | lambda | lambda1
    int      := '-'? digits

Negative exponents are allowed on ``x`` and ``y`` (and on parenthesised
monomials), never on parameters.  Juxtaposition is not multiplication.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .laurent import LaurentPoly
from .params import DEFAULT, Context, ParamPoly


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, ctx: Context):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2], self.text)
        return tok

    def parse(self) -> LaurentPoly:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return result

    def expr(self) -> LaurentPoly:
        result = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> LaurentPoly:
        result = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            if op[1] == "*":
                result = result * self.unary()
            else:
                tok = self.peek()
                den = self.factor()
                if not den.is_constant() or den.is_zero():
                    raise ParseError("division only by a nonzero rational", tok[2], self.text)
                c = den.coeff(0, 0)
                if not c.is_constant():
                    raise ParseError("division only by a nonzero rational", tok[2], self.text)
                result = result.scale(1 / c.constant_value())
        return result

    def unary(self) -> LaurentPoly:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.unary()
        return self.factor()

    def factor(self) -> LaurentPoly:
        start = self.peek()[2]
        base, is_param = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok[0] != "num":
                raise ParseError("exponent must be an integer", tok[2], self.text)
            n = sign * int(tok[1])
            if n < 0:
                if is_param:
                    raise ParseError("negative exponent on a parameter", start, self.text)
                if not base.is_monomial():
                    raise ParseError("negative exponent on a non-monomial", start, self.text)
                c = base.coeff(*next(iter(base.terms)))
                if not c.is_constant():
                    raise ParseError("negative exponent on a parameter", start, self.text)
            return base ** n
        return base

    def base(self) -> tuple[LaurentPoly, bool]:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            num = int(val)
            return LaurentPoly.const(num, self.ctx), False
        if kind == "name":
            if val == "x":
                return LaurentPoly.x(self.ctx), False
            if val == "y":
                return LaurentPoly.y(self.ctx), False
            if val in self.ctx.symbols:
                return LaurentPoly.param(val, self.ctx), True
            raise ParseError(f"unknown variable {val!r}", pos, self.text)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            params_only = all(k == (0, 0) for k in inner.terms) and any(
                not c.is_constant() for c in inner.terms.values())
            return inner, params_only
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, self.text)


def parse_poly(text: str, ctx: Context = DEFAULT) -> LaurentPoly:
    """Parse grammar text into a LaurentPoly (exact; whitespace-insensitive)."""
    return _Parser(text, ctx).parse()


# ---------------------------------------------------------------------------
# printing


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _param_monomial(e: tuple[int, ...], ctx: Context) -> str:
    parts = []
    for name, k in zip(ctx.symbols, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _xy_monomial(i: int, j: int) -> str:
    parts = []
    for name, k in (("x", i), ("y", j)):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _signed_terms(coeff: Fraction, mono: str) -> tuple[int, str]:
    """Sign and unsigned text of ``coeff * mono``."""
    sign = -1 if coeff < 0 else 1
    a = abs(coeff)
    if not mono:
        return sign, _format_rational(a)
    if a == 1:
        return sign, mono
    return sign, f"{_format_rational(a)}*{mono}"


def _join(pieces: list[tuple[int, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for k, (sign, text) in enumerate(pieces):
        if k == 0:
            out.append(("-" if sign < 0 else "") + text)
        else:
            out.append((" - " if sign < 0 else " + ") + text)
    return "".join(out)


def format_param(p: ParamPoly) -> str:
    """Canonical text of a parameter polynomial (graded-lex, descending)."""
    keys = sorted(p.terms, key=lambda e: (sum(e), e), reverse=True)
    return _join([_signed_terms(p.terms[e], _param_monomial(e, p.ctx)) for e in keys])


def poly_order_key(k: tuple[int, int]):
    """Canonical term order: graded on i + j, then by i, descending."""
    return (k[0] + k[1], k[0], k[1])


def format_poly(p: LaurentPoly) -> str:
    """Canonical text: graded-lex on (i, j) descending, reduced rationals."""
    pieces = []
    for k in sorted(p.terms, key=poly_order_key, reverse=True):
        c = p.terms[k]
        mono = _xy_monomial(*k)
        if len(c.terms) == 1:
            (e, v), = c.terms.items()
            pm = _param_monomial(e, c.ctx)
            full = "*".join(s for s in (pm, mono) if s)
            pieces.append(_signed_terms(v, full))
        else:
            inner = format_param(c)
            pieces.append((1, f"({inner})*{mono}" if mono else f"({inner})"))
    return _join(pieces)
