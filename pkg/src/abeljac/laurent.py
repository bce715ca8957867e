"""Bivariate Laurent polynomials with parameter coefficients.

``LaurentPoly`` stores ``{(i, j): ParamPoly}`` for ``sum c_ij x^i y^j``; both
exponents may be negative.  Everything is exact and immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .params import DEFAULT, Context, ContextError, ParamPoly

Scalar = Union[int, Fraction, ParamPoly]


class IntegrationError(ValueError):
    """Antiderivative would need a logarithm (a y^-1 term)."""


def _scalar(c: Scalar, ctx: Context) -> ParamPoly:
    if isinstance(c, ParamPoly):
        if c.ctx != ctx:
            raise ContextError(f"context mismatch: {c.ctx.symbols} vs {ctx.symbols}")
        return c
    return ParamPoly.const(c, ctx)


class LaurentPoly:
    """Immutable finitely supported map (i, j) -> ParamPoly."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Scalar] | None = None,
                 ctx: Context = DEFAULT, *, _trusted: bool = False):
        self.ctx = ctx
        if _trusted:
            self.terms = terms
        else:
            clean: dict = {}
            for (i, j), c in (terms or {}).items():
                c = _scalar(c, ctx)
                if c.terms:
                    key = (int(i), int(j))
                    prev = clean.get(key)
                    c = c if prev is None else prev + c
                    if c.terms:
                        clean[key] = c
                    else:
                        del clean[key]
            self.terms = clean
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, ctx: Context = DEFAULT) -> "LaurentPoly":
        return cls({}, ctx, _trusted=True)

    @classmethod
    def const(cls, c: Scalar, ctx: Context = DEFAULT) -> "LaurentPoly":
        c = _scalar(c, ctx)
        return cls({(0, 0): c} if c.terms else {}, ctx, _trusted=True)

    @classmethod
    def monomial(cls, i: int, j: int, c: Scalar = 1, ctx: Context = DEFAULT) -> "LaurentPoly":
        c = _scalar(c, ctx)
        return cls({(i, j): c} if c.terms else {}, ctx, _trusted=True)

    @classmethod
    def x(cls, ctx: Context = DEFAULT) -> "LaurentPoly":
        return cls.monomial(1, 0, 1, ctx)

    @classmethod
    def y(cls, ctx: Context = DEFAULT) -> "LaurentPoly":
        return cls.monomial(0, 1, 1, ctx)

    @classmethod
    def param(cls, name: str, ctx: Context = DEFAULT) -> "LaurentPoly":
        return cls.const(ParamPoly.var(name, ctx), ctx)

    @classmethod
    def from_y_coeffs(cls, coeffs: Mapping[int, Scalar], ctx: Context = DEFAULT) -> "LaurentPoly":
        """Polynomial in y only, ``{j: c_j}``."""
        return cls({(0, j): c for j, c in coeffs.items()}, ctx)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.ctx != self.ctx:
                raise ContextError(f"context mismatch: {self.ctx.symbols} vs {other.ctx.symbols}")
            return other
        if isinstance(other, (int, Fraction, ParamPoly)):
            return LaurentPoly.const(other, self.ctx)
        return NotImplemented

    # predicates / accessors ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, i: int, j: int) -> ParamPoly:
        return self.terms.get((i, j)) or ParamPoly.const(0, self.ctx)

    def support(self) -> set[tuple[int, int]]:
        return set(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0)}

    def is_polynomial(self) -> bool:
        """True when no exponent is negative, i.e. the element lies in K[x, y]."""
        return all(i >= 0 and j >= 0 for i, j in self.terms)

    def is_y_only(self) -> bool:
        return all(i == 0 for i, _ in self.terms)

    def min_exponents(self) -> tuple[int, int]:
        if not self.terms:
            return (0, 0)
        return (min(i for i, _ in self.terms), min(j for _, j in self.terms))

    def max_exponents(self) -> tuple[int, int]:
        if not self.terms:
            return (0, 0)
        return (max(i for i, _ in self.terms), max(j for _, j in self.terms))

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return max(i + j for i, j in self.terms)

    def y_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return max(j for _, j in self.terms)

    def y_coeff(self, j: int) -> ParamPoly:
        """Coefficient of y^j in a y-only polynomial."""
        return self.coeff(0, j)

    def value_at_zero(self, order: int = 0) -> ParamPoly:
        """``d^order/dy^order`` at y = 0 for a polynomial in y."""
        p = self
        for _ in range(order):
            p = p.derive("y")
        return p.coeff(0, 0)

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
        for k, c in other.terms.items():
            prev = out.get(k)
            if prev is None:
                out[k] = c
            else:
                s = prev + c
                if s.terms:
                    out[k] = s
                else:
                    del out[k]
        return LaurentPoly(out, self.ctx, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()}, self.ctx, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "LaurentPoly":
        c = _scalar(c, self.ctx)
        if not c.terms:
            return LaurentPoly.zero(self.ctx)
        out = {}
        for k, v in self.terms.items():
            w = v * c
            if w.terms:
                out[k] = w
        return LaurentPoly(out, self.ctx, _trusted=True)

    def shift(self, di: int, dj: int) -> "LaurentPoly":
        """Multiply by the monomial x^di y^dj."""
        return LaurentPoly({(i + di, j + dj): c for (i, j), c in self.terms.items()},
                           self.ctx, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return LaurentPoly.zero(self.ctx)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                k = (i1 + i2, j1 + j2)
                prod = c1 * c2
                prev = out.get(k)
                out[k] = prod if prev is None else prev + prod
        return LaurentPoly({k: v for k, v in out.items() if v.terms}, self.ctx, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (i, j), c = next(iter(self.terms.items()))
            if not c.is_constant():
                raise ValueError("monomial coefficient is not an invertible constant")
            inv = 1 / c.constant_value()
            return LaurentPoly.monomial(-i, -j, inv, self.ctx) ** (-n)
        result = LaurentPoly.const(1, self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            other = LaurentPoly.const(other, self.ctx)
        if isinstance(other, LaurentPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .textio import format_poly
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self):
        from .textio import format_poly
        return format_poly(self)

    # calculus ---------------------------------------------------------

    def derive(self, var: str) -> "LaurentPoly":
        """Partial derivative in ``x`` or ``y``."""
        if var not in ("x", "y"):
            raise ValueError(f"unknown variable {var!r}")
        out = {}
        for (i, j), c in self.terms.items():
            e = i if var == "x" else j
            if e:
                key = (i - 1, j) if var == "x" else (i, j - 1)
                out[key] = c.scale(e)
        return LaurentPoly(out, self.ctx, _trusted=True)

    def integrate(self, var: str = "y") -> "LaurentPoly":
        """Antiderivative with zero constant."""
        if var not in ("x", "y"):
            raise ValueError(f"unknown variable {var!r}")
        out = {}
        for (i, j), c in self.terms.items():
            e = i if var == "x" else j
            if e == -1:
                raise IntegrationError(f"non-elementary term x^{i}*y^{j}: antiderivative needs a logarithm")
            key = (i + 1, j) if var == "x" else (i, j + 1)
            out[key] = c.scale(Fraction(1, e + 1))
        return LaurentPoly(out, self.ctx, _trusted=True)

    # parameters -------------------------------------------------------

    def specialize(self, assignment: Mapping[str, Fraction | int],
                   ctx: Context | None = None) -> "LaurentPoly":
        """Evaluate parameters exactly; every occurring symbol must be assigned.

        Symbols bound by the context relation are exempt.  The result lives in
        ``ctx`` (default: same context).
        """
        target = ctx or self.ctx
        bound = {self.ctx.relation_symbol} if self.ctx.relation_symbol else set()
        used = set()
        for c in self.terms.values():
            used |= c.free_symbols()
        missing = used - set(assignment) - bound
        if missing:
            raise KeyError(f"unassigned parameters: {sorted(missing)}")
        out = {}
        for k, c in self.terms.items():
            v = c.subs(assignment)
            if target != self.ctx:
                v = v.embed(target)
            if v.terms:
                out[k] = v
        return LaurentPoly(out, target, _trusted=True)

    def map_coeffs(self, fn) -> "LaurentPoly":
        return LaurentPoly({k: fn(c) for k, c in self.terms.items()}, self.ctx)

    def embed(self, ctx: Context) -> "LaurentPoly":
        if ctx == self.ctx:
            return self
        return LaurentPoly({k: c.embed(ctx) for k, c in self.terms.items()}, ctx, _trusted=True)

    def subs_params(self, assignment: Mapping[str, Scalar]) -> "LaurentPoly":
        """Partial substitution of parameters (no completeness requirement)."""
        out = {}
        for k, c in self.terms.items():
            v = c.subs(assignment)
            if v.terms:
                out[k] = v
        return LaurentPoly(out, self.ctx, _trusted=True)


# ---------------------------------------------------------------------------
# free-function spellings used throughout the package


def derive(p: LaurentPoly, var: str) -> LaurentPoly:
    return p.derive(var)


def integrate(p: LaurentPoly, var: str = "y") -> LaurentPoly:
    return p.integrate(var)


def specialize(p: LaurentPoly, assignment: Mapping[str, Fraction | int]) -> LaurentPoly:
    return p.specialize(assignment)


def exact_divide(n: LaurentPoly, d: LaurentPoly) -> LaurentPoly | None:
    """Exact quotient ``q`` with ``n == q * d`` in the Laurent ring, else None.

    Both operands are shifted by monomials (units) to have non-negative
    exponents and then divided in the polynomial ring with the lex order
    y > x.  Leading coefficients are divided in the parameter ring.
    """
    n = d._coerce(n)
    if not d.terms:
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if not n.terms:
        return LaurentPoly.zero(d.ctx)
    ni, nj = n.min_exponents()
    di, dj = d.min_exponents()
    rem = {(i - ni, j - nj): c for (i, j), c in n.terms.items()}
    dd = {(i - di, j - dj): c for (i, j), c in d.terms.items()}
    key = lambda m: (m[1], m[0])  # noqa: E731  lex with y > x
    lead_d = max(dd, key=key)
    cd = dd[lead_d]
    quot: dict = {}
    while rem:
        lead = max(rem, key=key)
        qi, qj = lead[0] - lead_d[0], lead[1] - lead_d[1]
        if qi < 0 or qj < 0:
            return None
        qc = rem[lead].exact_div(cd)
        if qc is None:
            return None
        quot[(qi, qj)] = qc
        for (i, j), c in dd.items():
            k = (i + qi, j + qj)
            prev = rem.get(k)
            v = -(qc * c) if prev is None else prev - qc * c
            if v.terms:
                rem[k] = v
            else:
                rem.pop(k, None)
    q = LaurentPoly(quot, d.ctx, _trusted=True)
    return q.shift(ni - di, nj - dj)


def y_poly(coeffs: Iterable[Scalar], ctx: Context = DEFAULT) -> LaurentPoly:
    """``sum coeffs[k] * y^k`` (low degree first)."""
    return LaurentPoly({(0, k): c for k, c in enumerate(coeffs)}, ctx)
