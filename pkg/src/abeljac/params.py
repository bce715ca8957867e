"""Exact polynomials in a declared set of parameter symbols.

A ``ParamPoly`` maps exponent vectors (one entry per context symbol) to
``Fraction`` coefficients.  A context may carry a single monic relation in one
designated symbol; every product is then reduced modulo that relation, which is
how irrational constants such as the ``r`` of the homogeneous family are
represented exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]

DEFAULT_SYMBOLS = ("mu0", "mu1", "mu2", "mu3", "r", "lambda", "lambda1")


class ContextError(ValueError):
    """Operands live in different parameter contexts."""


@dataclass(frozen=True)
class Context:
    """Ordered parameter symbols plus an optional monic relation.

    ``relation`` holds the coefficients (low degree first, leading 1 omitted)
    of a monic polynomial in ``relation_symbol``.
    """

    symbols: tuple[str, ...] = DEFAULT_SYMBOLS
    relation_symbol: str | None = None
    relation: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbols in {self.symbols}")
        if self.relation_symbol is not None:
            if self.relation_symbol not in self.symbols:
                raise ValueError(f"relation symbol {self.relation_symbol!r} not in context")
            if not self.relation:
                raise ValueError("relation must have positive degree")
            object.__setattr__(self, "relation", tuple(Fraction(c) for c in self.relation))

    @classmethod
    def with_relation(cls, symbols: Iterable[str], symbol: str,
                      coeffs: Iterable[Number]) -> "Context":
        """Build a context reducing modulo the polynomial with ``coeffs`` (low first).

        The polynomial is made monic here, so ``3r^4 - 6r^2 - 5`` may be passed
        as ``[-5, 0, -6, 0, 3]``.
        """
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise ValueError("relation must have positive degree")
        lead = coeffs[-1]
        return cls(tuple(symbols), symbol, tuple(c / lead for c in coeffs[:-1]))

    @property
    def nvars(self) -> int:
        return len(self.symbols)

    def index(self, name: str) -> int:
        try:
            return self.symbols.index(name)
        except ValueError:
            raise KeyError(f"unknown parameter {name!r}") from None

    @property
    def relation_degree(self) -> int:
        return len(self.relation)


DEFAULT = Context()


def _reduce_terms(terms: dict, ctx: Context) -> dict:
    """Reduce the designated symbol's exponents below the relation degree."""
    if ctx.relation_symbol is None:
        return terms
    k = ctx.index(ctx.relation_symbol)
    deg = ctx.relation_degree
    rel = ctx.relation
    pending = [e for e in terms if e[k] >= deg]
    while pending:
        for e in pending:
            c = terms.pop(e, None)
            if c is None:
                continue
            # r^e = r^(e-deg) * r^deg and r^deg = -sum rel[i] r^i
            shift = e[k] - deg
            for i, ri in enumerate(rel):
                if ri == 0:
                    continue
                f = e[:k] + (shift + i,) + e[k + 1:]
                v = terms.get(f, 0) - c * ri
                if v:
                    terms[f] = v
                else:
                    terms.pop(f, None)
        pending = [e for e in terms if e[k] >= deg]
    return terms


class ParamPoly:
    """Immutable polynomial over Q in the symbols of a ``Context``."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], Number] | None = None,
                 ctx: Context = DEFAULT, *, _trusted: bool = False):
        self.ctx = ctx
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            n = ctx.nvars
            for e, c in (terms or {}).items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match context of {n} symbols")
                if any(v < 0 for v in e):
                    raise ValueError("parameters cannot carry negative exponents")
                c = Fraction(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
            self.terms = _reduce_terms(clean, ctx)
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def const(cls, c: Number, ctx: Context = DEFAULT) -> "ParamPoly":
        c = Fraction(c)
        return cls({(0,) * ctx.nvars: c} if c else {}, ctx, _trusted=True)

    @classmethod
    def var(cls, name: str, ctx: Context = DEFAULT) -> "ParamPoly":
        e = [0] * ctx.nvars
        e[ctx.index(name)] = 1
        return cls({tuple(e): Fraction(1)}, ctx)

    def _coerce(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            if other.ctx != self.ctx:
                raise ContextError(f"context mismatch: {self.ctx.symbols} vs {other.ctx.symbols}")
            return other
        if isinstance(other, (int, Fraction)):
            return ParamPoly.const(other, self.ctx)
        return NotImplemented

    # predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        """Rational value of a constant polynomial."""
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self!r} is not constant")
        return next(iter(self.terms.values()))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ctx.nvars, Fraction(0))

    def free_symbols(self) -> set[str]:
        used = set()
        for e in self.terms:
            for name, v in zip(self.ctx.symbols, e):
                if v:
                    used.add(name)
        return used

    def degree_in(self, name: str) -> int:
        k = self.ctx.index(name)
        return max((e[k] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                del out[e]
        return ParamPoly(out, self.ctx, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({e: -c for e, c in self.terms.items()}, self.ctx, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Number) -> "ParamPoly":
        c = Fraction(c)
        if not c:
            return ParamPoly({}, self.ctx, _trusted=True)
        return ParamPoly({e: v * c for e, v in self.terms.items()}, self.ctx, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return ParamPoly({}, self.ctx, _trusted=True)
        a, b = self.terms, other.terms
        if len(b) == 1:
            (eb, cb), = b.items()
            if not any(eb):
                return self.scale(cb)
        if len(a) == 1:
            (ea, ca), = a.items()
            if not any(ea):
                return other.scale(ca)
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    del out[e]
        return ParamPoly(_reduce_terms(out, self.ctx), self.ctx, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of parameter polynomials are not supported")
        result = ParamPoly.const(1, self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        other = self._coerce(other)
        q = self.exact_div(other)
        if q is None:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def exact_div(self, d: "ParamPoly") -> "ParamPoly | None":
        """Quotient ``q`` with ``self == q * d``, or None if there is none.

        Constant divisors always work; otherwise a lex division is run, which
        is decisive for a single divisor in a polynomial ring.  With a relation
        present only constant divisors are supported.
        """
        d = self._coerce(d)
        if not d.terms:
            raise ZeroDivisionError("division by zero parameter polynomial")
        if d.is_constant():
            return self.scale(1 / d.constant_value())
        if self.ctx.relation_symbol is not None:
            raise ArithmeticError("exact division by non-constant elements of a quotient ring")
        lead_d = max(d.terms)
        cd = d.terms[lead_d]
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            lead = max(rem)
            if any(a < b for a, b in zip(lead, lead_d)):
                return None
            qe = tuple(a - b for a, b in zip(lead, lead_d))
            qc = rem[lead] / cd
            quot[qe] = qc
            for e, c in d.terms.items():
                f = tuple(a + b for a, b in zip(qe, e))
                v = rem.get(f, 0) - qc * c
                if v:
                    rem[f] = v
                else:
                    rem.pop(f, None)
        return ParamPoly(quot, self.ctx, _trusted=True)

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, ParamPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    # evaluation -------------------------------------------------------

    def subs(self, assignment: Mapping[str, "Number | ParamPoly"]) -> "ParamPoly":
        """Substitute values (rationals or ParamPolys of this context) for symbols."""
        idx = {self.ctx.index(k): v for k, v in assignment.items()}
        out = ParamPoly.const(0, self.ctx)
        cache: dict = {}
        for e, c in self.terms.items():
            rest = list(e)
            factor = ParamPoly.const(c, self.ctx)
            for k, v in idx.items():
                if e[k]:
                    key = (k, e[k])
                    if key not in cache:
                        base = v if isinstance(v, ParamPoly) else ParamPoly.const(v, self.ctx)
                        cache[key] = base ** e[k]
                    factor = factor * cache[key]
                    rest[k] = 0
            mono = ParamPoly({tuple(rest): Fraction(1)}, self.ctx, _trusted=True)
            out = out + factor * mono
        return out

    def evaluate(self, assignment: Mapping[str, Number]) -> Fraction:
        """Exact value when every occurring symbol is assigned."""
        missing = self.free_symbols() - set(assignment)
        if missing:
            raise KeyError(f"unassigned parameters: {sorted(missing)}")
        total = Fraction(0)
        vals = [Fraction(assignment.get(s, 0)) for s in self.ctx.symbols]
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def embed(self, ctx: Context) -> "ParamPoly":
        """Re-express in a context whose symbols include all used symbols."""
        if ctx == self.ctx:
            return self
        pos = []
        for name in self.ctx.symbols:
            pos.append(ctx.symbols.index(name) if name in ctx.symbols else None)
        out = {}
        for e, c in self.terms.items():
            f = [0] * ctx.nvars
            for k, v in enumerate(e):
                if v:
                    if pos[k] is None:
                        raise ContextError(f"symbol {self.ctx.symbols[k]!r} missing from target context")
                    f[pos[k]] = v
            out[tuple(f)] = c
        return ParamPoly(out, ctx)

    def __repr__(self):
        from .textio import format_param
        return f"ParamPoly({format_param(self)!r})"

    def __str__(self):
        from .textio import format_param
        return format_param(self)
