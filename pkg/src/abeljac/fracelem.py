"""Fractions with factored denominators, and substitution maps.

The pipeline's shifts ``y -> y - f(x)`` send negative powers of ``y`` outside
the Laurent ring.  A ``FracElem`` keeps such results as a Laurent numerator
over a product of named, non-monomial factors.  Factors are compared
syntactically after normalisation; no bivariate gcd is ever computed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .laurent import LaurentPoly, exact_divide
from .params import Context, ContextError, ParamPoly
from .textio import format_poly, poly_order_key


class UnsupportedInversion(ArithmeticError):
    """A negative power hit an image that cannot be inverted."""


def _factor_key(f: LaurentPoly):
    return tuple(sorted(((k, tuple(sorted(c.terms.items()))) for k, c in f.terms.items())))


def normalize_factor(f: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Split ``f`` as ``unit * g``: ``unit`` a monomial, ``g`` the normalized factor.

    ``g`` has minimal exponents (0, 0) and, when its leading coefficient (in
    canonical order) is a rational constant, that coefficient is 1.
    """
    if f.is_zero():
        raise ZeroDivisionError("zero denominator factor")
    i0, j0 = f.min_exponents()
    g = f.shift(-i0, -j0)
    lead = max(g.terms, key=poly_order_key)
    c = g.terms[lead]
    scale = ParamPoly.const(1, f.ctx)
    if c.is_constant():
        scale = c
        g = g.scale(1 / c.constant_value())
    return LaurentPoly.monomial(i0, j0, scale, f.ctx), g


class FracElem:
    """``numerator / prod(factor ** exp)`` with normalized, distinct factors."""

    __slots__ = ("num", "den", "ctx")

    def __init__(self, num: LaurentPoly, den: Iterable[tuple[LaurentPoly, int]] = ()):
        self.ctx = num.ctx
        collected: dict = {}
        order: dict = {}
        for f, e in den:
            if f.ctx != self.ctx:
                raise ContextError("denominator factor context differs from numerator")
            if e <= 0:
                raise ValueError("denominator exponents must be positive")
            unit, g = normalize_factor(f)
            # 1 / (unit * g)^e = unit^-e / g^e
            if g.is_monomial():
                num = num * (unit * g) ** (-e)
                continue
            num = num * unit ** (-e)
            key = _factor_key(g)
            collected[key] = collected.get(key, 0) + e
            order[key] = g
        self.num = num
        self.den = tuple((order[k], collected[k]) for k in sorted(collected))

    @classmethod
    def of(cls, p: "LaurentPoly | FracElem | int | Fraction | ParamPoly", ctx: Context | None = None) -> "FracElem":
        if isinstance(p, FracElem):
            return p
        if isinstance(p, LaurentPoly):
            return cls(p)
        if ctx is None:
            raise TypeError("a context is needed to lift a scalar")
        return cls(LaurentPoly.const(p, ctx))

    # predicates -------------------------------------------------------

    def is_laurent(self) -> bool:
        return not self.den

    def is_polynomial(self) -> bool:
        """Element of K[x, y]: no denominator and no negative exponent."""
        return not self.den and self.num.is_polynomial()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def as_laurent(self) -> LaurentPoly:
        if self.den:
            raise ValueError("element still has a non-monomial denominator")
        return self.num

    def _dmap(self) -> dict:
        return {_factor_key(f): (f, e) for f, e in self.den}

    # arithmetic -------------------------------------------------------

    def _lift(self, other) -> "FracElem":
        if isinstance(other, FracElem):
            return other
        if isinstance(other, (LaurentPoly, int, Fraction, ParamPoly)):
            return FracElem.of(other, self.ctx)
        return NotImplemented

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return FracElem(self.num * other.num, list(self.den) + list(other.den))

    __rmul__ = __mul__

    def __neg__(self):
        return FracElem(-self.num, self.den)

    def _common(self, other: "FracElem"):
        a, b = self._dmap(), other._dmap()
        keys = set(a) | set(b)
        top = {}
        for k in keys:
            f = (a.get(k) or b.get(k))[0]
            top[k] = (f, max(a.get(k, (f, 0))[1], b.get(k, (f, 0))[1]))

        def lift(x: FracElem, m: dict) -> LaurentPoly:
            n = x.num
            for k, (f, e) in top.items():
                missing = e - m.get(k, (f, 0))[1]
                if missing:
                    n = n * f ** missing
            return n

        return lift(self, a), lift(other, b), list(top.values())

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.den and not other.den:
            return FracElem(self.num + other.num)
        na, nb, den = self._common(other)
        return FracElem(na + nb, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def inverse(self) -> "FracElem":
        """Multiplicative inverse; a non-monomial numerator becomes a factor."""
        if self.num.is_zero():
            raise UnsupportedInversion("inverse of zero")
        top = LaurentPoly.const(1, self.ctx)
        for f, e in self.den:
            top = top * f ** e
        return FracElem(top, [(self.num, 1)])

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        num = self.num ** n
        return FracElem(num, [(f, e * n) for f, e in self.den]) if n else FracElem(num)

    def __truediv__(self, other):
        other = self._lift(other)
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, (LaurentPoly, int, Fraction, ParamPoly)):
            other = FracElem.of(other, self.ctx)
        if not isinstance(other, FracElem):
            return NotImplemented
        na, nb, _ = self._common(other)
        return na == nb

    __hash__ = None  # equality is not syntactic

    # calculus ---------------------------------------------------------

    def derive(self, var: str) -> "FracElem":
        """Quotient rule over the factored denominator."""
        if not self.den:
            return FracElem(self.num.derive(var))
        # (n / prod f^e)' = (n' * prod f - n * sum e f' prod_{other} f) / (prod f^e * prod f)
        fs = [f for f, _ in self.den]
        prod_all = LaurentPoly.const(1, self.ctx)
        for f in fs:
            prod_all = prod_all * f
        top = self.num.derive(var) * prod_all
        for k, (f, e) in enumerate(self.den):
            others = LaurentPoly.const(1, self.ctx)
            for m, g in enumerate(fs):
                if m != k:
                    others = others * g
            top = top - self.num * f.derive(var) * others * e
        return FracElem(top, [(f, e + 1) for f, e in self.den])

    # presentation -----------------------------------------------------

    def __repr__(self):
        return f"FracElem({self})"

    def __str__(self):
        if not self.den:
            return format_poly(self.num)
        den = " * ".join(f"({format_poly(f)})^{e}" if e > 1 else f"({format_poly(f)})"
                         for f, e in self.den)
        return f"({format_poly(self.num)}) / ({den})"


def reduce_fraction(f: FracElem) -> FracElem:
    """Cancel denominator factors that exactly divide the numerator."""
    num = f.num
    left = []
    for g, e in f.den:
        k = e
        while k:
            q = exact_divide(num, g)
            if q is None:
                break
            num = q
            k -= 1
        if k:
            left.append((g, k))
    return FracElem(num, left)


# ---------------------------------------------------------------------------
# substitution maps


class RingMap:
    """Ring map determined by the images of ``x`` and ``y``."""

    def __init__(self, x_image, y_image, name: str = "phi"):
        self.x_image = FracElem.of(x_image)
        self.y_image = FracElem.of(y_image)
        if self.x_image.ctx != self.y_image.ctx:
            raise ContextError("images live in different contexts")
        self.ctx = self.x_image.ctx
        self.name = name

    def _powers(self, image: FracElem, exps: set[int], label: str) -> dict:
        out = {0: FracElem(LaurentPoly.const(1, self.ctx))}
        if not exps:
            return out
        pos = sorted(e for e in exps if e > 0)
        neg = sorted(-e for e in exps if e < 0)
        acc, k = out[0], 0
        for e in pos:
            while k < e:
                acc = acc * image
                k += 1
            out[e] = acc
        if neg:
            if image.is_zero():
                raise UnsupportedInversion(f"{self.name}({label}) = 0 cannot be inverted")
            inv = image.inverse()
            acc, k = out[0], 0
            for e in neg:
                while k < e:
                    acc = acc * inv
                    k += 1
                out[-e] = acc
        return out

    def __call__(self, p) -> FracElem:
        return substitute(p, self)

    def jacobian(self) -> FracElem:
        """``[phi(x), phi(y)]``."""
        from .jacobian import bracket
        return bracket(self.x_image, self.y_image)

    def __repr__(self):
        return f"RingMap({self.name}: x -> {self.x_image}, y -> {self.y_image})"


def substitute(p, phi: RingMap) -> FracElem:
    """Image of a LaurentPoly or FracElem under the ring map ``phi``."""
    if isinstance(p, FracElem):
        out = substitute(p.num, phi)
        for f, e in p.den:
            out = out * substitute(f, phi) ** (-e)
        return out
    if p.ctx != phi.ctx:
        raise ContextError("polynomial and map live in different contexts")
    xs = {i for i, _ in p.terms}
    ys = {j for _, j in p.terms}
    xp = phi._powers(phi.x_image, xs, "x")
    yp = phi._powers(phi.y_image, ys, "y")
    # group by denominator structure: Laurent parts summed directly
    lau = LaurentPoly.zero(p.ctx)
    frac = None
    for (i, j), c in p.terms.items():
        a, b = xp[i], yp[j]
        if not a.den and not b.den:
            lau = lau + (a.num * b.num).scale(c)
        else:
            t = (a * b) * c
            frac = t if frac is None else frac + t
    if frac is None:
        return FracElem(lau)
    return frac + lau


def psi1(ctx: Context) -> RingMap:
    """x -> y, y -> -x."""
    return RingMap(LaurentPoly.y(ctx), -LaurentPoly.x(ctx), "psi1")


def psi3(ctx: Context) -> RingMap:
    """x -> x^-1, y -> x^3 y."""
    return RingMap(LaurentPoly.monomial(-1, 0, 1, ctx), LaurentPoly.monomial(3, 1, 1, ctx), "psi3")


def y_shift(g: LaurentPoly, name: str = "phi") -> RingMap:
    """x -> x, y -> y - g(x)."""
    return RingMap(LaurentPoly.x(g.ctx), LaurentPoly.y(g.ctx) - g, name)


def phi0(mu: tuple, ctx: Context) -> RingMap:
    """y -> y - (mu0 x + mu1 + mu2 x^-1 + mu3 x^-2)."""
    m0, m1, m2, m3 = mu
    g = LaurentPoly({(1, 0): m0, (0, 0): m1, (-1, 0): m2, (-2, 0): m3}, ctx)
    return y_shift(g, "phi0")


def identity_map(ctx: Context) -> RingMap:
    return RingMap(LaurentPoly.x(ctx), LaurentPoly.y(ctx), "id")
