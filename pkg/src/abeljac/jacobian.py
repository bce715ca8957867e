"""Jacobian bracket, the four-equation system and the EDPol reformulation.

Pairs have the shape ``P = x^3 y + x^2 p2 + x p1 + p0`` and
``Q = x^2 y + x q1 + q0`` with ``p_i, q_i`` in ``y`` alone.  Every y-only
polynomial here is a ``LaurentPoly`` supported on ``x^0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .fracelem import FracElem, RingMap, substitute
from .laurent import LaurentPoly
from .params import DEFAULT, Context, ParamPoly

Elem = Union[LaurentPoly, FracElem]
Mu = tuple  # (mu0, mu1, mu2, mu3), each int | Fraction | ParamPoly


class DivisibilityError(ValueError):
    """A quotient required by the reconstruction is not exact."""


def _D(p: LaurentPoly) -> LaurentPoly:
    return p.derive("y")


def bracket(p: Elem, q: Elem) -> Elem:
    """``[p, q] = p_x q_y - p_y q_x``."""
    if isinstance(p, LaurentPoly) and isinstance(q, LaurentPoly):
        return p.derive("x") * q.derive("y") - p.derive("y") * q.derive("x")
    p, q = FracElem.of(p), FracElem.of(q)
    return p.derive("x") * q.derive("y") - p.derive("y") * q.derive("x")


def bracket_functoriality_check(phi: RingMap, p: Elem, q: Elem) -> bool:
    """``[phi(p), phi(q)] == phi([p, q]) * Jac(phi)``."""
    lhs = bracket(substitute(p, phi), substitute(q, phi))
    rhs = substitute(bracket(p, q), phi) * phi.jacobian()
    return FracElem.of(lhs) == rhs


def x_power_bracket(k: int, pk: LaurentPoly, j: int, qj: LaurentPoly) -> LaurentPoly:
    """``[x^k pk(y), x^j qj(y)]`` by the one-variable formula."""
    inner = pk * _D(qj) * k - _D(pk) * qj * j
    return inner.shift(k + j - 1, 0)


def bracket_coefficient(p: LaurentPoly, q: LaurentPoly, i: int, j: int) -> ParamPoly:
    """``c_ij = sum (k t - l s) a_kl b_st`` over ``(k,l) + (s,t) = (i+1, j+1)``."""
    total = ParamPoly.const(0, p.ctx)
    for (k, l), a in p.terms.items():
        b = q.terms.get((i + 1 - k, j + 1 - l))
        if b is not None:
            s, t = i + 1 - k, j + 1 - l
            w = k * t - l * s
            if w:
                total = total + (a * b).scale(w)
    return total


def _mu(mu: Mu, ctx: Context) -> tuple[ParamPoly, ...]:
    return tuple(m if isinstance(m, ParamPoly) else ParamPoly.const(m, ctx) for m in mu)


def shape_bracket(mu: Mu, ctx: Context = DEFAULT) -> LaurentPoly:
    """``x^4 y + mu0 + mu1 x + mu2 x^2 + mu3 x^3``."""
    m0, m1, m2, m3 = _mu(mu, ctx)
    return LaurentPoly({(4, 1): 1, (0, 0): m0, (1, 0): m1, (2, 0): m2, (3, 0): m3}, ctx)


# ---------------------------------------------------------------------------
# the four-equation system


def assemble(p0, p1, p2, q0, q1) -> tuple[LaurentPoly, LaurentPoly]:
    ctx = q1.ctx
    P = LaurentPoly.monomial(3, 1, 1, ctx) + p2.shift(2, 0) + p1.shift(1, 0) + p0
    Q = LaurentPoly.monomial(2, 1, 1, ctx) + q1.shift(1, 0) + q0
    return P, Q


def split_pair(P: LaurentPoly, Q: LaurentPoly):
    """Inverse of ``assemble``: ``(p0, p1, p2, q0, q1)``; raises on wrong shape."""
    def column(p: LaurentPoly, i: int) -> LaurentPoly:
        return LaurentPoly({(0, j): c for (a, j), c in p.terms.items() if a == i}, p.ctx)

    xs = {i for i, _ in P.terms} | {i for i, _ in Q.terms}
    if any(i < 0 for i in xs):
        raise ValueError("pair has negative x-exponents")
    top_P = P - LaurentPoly.monomial(3, 1, 1, P.ctx)
    top_Q = Q - LaurentPoly.monomial(2, 1, 1, Q.ctx)
    if any(i >= 3 for i, _ in top_P.terms) or any(i >= 2 for i, _ in top_Q.terms):
        raise ValueError("pair is not of the form x^3 y + ..., x^2 y + ...")
    return column(P, 0), column(P, 1), column(P, 2), column(Q, 0), column(Q, 1)


@dataclass(frozen=True)
class SystemData:
    p0: LaurentPoly
    p1: LaurentPoly
    p2: LaurentPoly
    q0: LaurentPoly
    q1: LaurentPoly
    mu: Mu
    F: LaurentPoly | None = None

    @property
    def ctx(self) -> Context:
        return self.q1.ctx

    @property
    def G(self) -> LaurentPoly | None:
        if self.F is None:
            return None
        return self.F + _D(self.F).shift(0, 1).scale(Fraction(3, 2))

    def pair(self) -> tuple[LaurentPoly, LaurentPoly]:
        return assemble(self.p0, self.p1, self.p2, self.q0, self.q1)


def system_residuals(s: SystemData) -> tuple[LaurentPoly, ...]:
    """Displayed right-hand side minus mu_i, for the mu3, mu2, mu1, mu0 equations."""
    m0, m1, m2, m3 = _mu(s.mu, s.ctx)
    p0, p1, p2, q0, q1 = s.p0, s.p1, s.p2, s.q0, s.q1
    y = LaurentPoly.y(s.ctx)
    r3 = y * _D(q1) * 3 - q1 + p2 * 2 - y * _D(p2) * 2 - m3
    r2 = y * _D(q0) * 3 + p2 * _D(q1) * 2 - _D(p2) * q1 + p1 - y * _D(p1) * 2 - m2
    r1 = p2 * _D(q0) * 2 + p1 * _D(q1) - _D(p1) * q1 - y * _D(p0) * 2 - m1
    r0 = p1 * _D(q0) - _D(p0) * q1 - m0
    return r3, r2, r1, r0


def from_F(F: LaurentPoly, mu3) -> tuple[LaurentPoly, LaurentPoly]:
    """``q1 = mu3 + y^2 F'``, ``p2 = mu3 + y F + (3/2) y^2 F'``."""
    ctx = F.ctx
    m3 = LaurentPoly.const(mu3, ctx)
    Fp = _D(F).shift(0, 2)
    return m3 + Fp, m3 + F.shift(0, 1) + Fp.scale(Fraction(3, 2))


def to_F(q1: LaurentPoly, p2: LaurentPoly | None, mu3) -> LaurentPoly:
    """Recover ``F`` with ``F(0) = 0`` from ``q1`` (and check ``p2`` if given)."""
    ctx = q1.ctx
    rest = q1 - LaurentPoly.const(mu3, ctx)
    if any(i != 0 or j < 2 for i, j in rest.terms):
        raise DivisibilityError("q1 - mu3 is not divisible by y^2 (need q1(0) = mu3, q1'(0) = 0)")
    F = rest.shift(0, -2).integrate("y")
    if p2 is not None and from_F(F, mu3)[1] != p2:
        raise DivisibilityError("p2 is inconsistent with q1 under the first equation")
    return F


def _is_y_polynomial(p: LaurentPoly) -> bool:
    return all(i == 0 and j >= 0 for i, j in p.terms)


def q0_prime(F: LaurentPoly, p1: LaurentPoly, mu: Mu) -> tuple[LaurentPoly, bool]:
    """q0' from the second equation, with a flag telling whether it is a polynomial."""
    ctx = F.ctx
    m0, m1, m2, m3 = _mu(mu, ctx)
    y = LaurentPoly.y(ctx)
    F1, F2 = _D(F), _D(_D(F))
    num = (-p1 * 2 + LaurentPoly.const(m2 * 2, ctx) + F * m3 * 2 + y * _D(p1) * 4
           - (y ** 2) * F * F1 * 6 - (y ** 2) * F2 * m3 - (y ** 3) * F1 * F1 * 4
           - (y ** 3) * F * F2 * 4 - (y ** 4) * F1 * F2 * 3)
    out = num.shift(0, -1).scale(Fraction(1, 6))
    return out, _is_y_polynomial(out)


def p0_prime(F: LaurentPoly, p1: LaurentPoly, q0p: LaurentPoly, mu: Mu) -> tuple[LaurentPoly, bool]:
    """p0' from the third equation, with a polynomial flag."""
    ctx = F.ctx
    m0, m1, m2, m3 = _mu(mu, ctx)
    y = LaurentPoly.y(ctx)
    F1, F2 = _D(F), _D(_D(F))
    num = (y * p1 * (F1 * 2 + y * F2) - m1 - _D(p1) * (y ** 2 * F1 + m3)
           + (y * (F * 2 + y * F1 * 3) + m3 * 2) * q0p)
    out = num.shift(0, -1).scale(Fraction(1, 2))
    return out, _is_y_polynomial(out)


def compute_A(s: SystemData) -> LaurentPoly:
    """``A = y p1 - q1 p2 + (3/4) q1^2``."""
    return s.p1.shift(0, 1) - s.q1 * s.p2 + (s.q1 * s.q1).scale(Fraction(3, 4))


# ---------------------------------------------------------------------------
# EDPol


@dataclass(frozen=True)
class EdpolInstance:
    A: LaurentPoly
    q1: LaurentPoly
    mu: Mu

    @property
    def ctx(self) -> Context:
        return self.A.ctx


def edpol_sides(e: EdpolInstance) -> tuple[LaurentPoly, LaurentPoly]:
    ctx = e.ctx
    m0, m1, m2, m3 = _mu(e.mu, ctx)
    A, q1 = e.A, e.q1
    y = LaurentPoly.y(ctx)
    lin = q1 * m3.scale(Fraction(1, 4)) - y * m2.scale(Fraction(1, 6))
    inner = A - (q1 * q1).scale(Fraction(1, 4)) + lin
    lhs = (inner * inner).scale(6)
    rhs = (y * A * _D(A)).scale(4) + (lin * lin).scale(6) - y * q1 * q1 * m2 \
        + (y ** 2) * q1 * m1 * 3 - (y ** 3) * m0 * 6
    return lhs, rhs


def edpol_residual(e: EdpolInstance) -> LaurentPoly:
    """LHS - RHS of the EDPol equation."""
    lhs, rhs = edpol_sides(e)
    return lhs - rhs


def check_conditions(e: EdpolInstance) -> tuple[bool, bool, bool]:
    """``A(0) = -mu3^2/4``, ``A'(0) = mu2``, ``mu3 A''(0) = -6 mu1 - 2 mu3 q1''(0)``."""
    m0, m1, m2, m3 = _mu(e.mu, e.ctx)
    a0 = e.A.value_at_zero(0) == (m3 * m3).scale(Fraction(-1, 4))
    a1 = e.A.value_at_zero(1) == m2
    a2 = m3 * e.A.value_at_zero(2) == m1.scale(-6) - (m3 * e.q1.value_at_zero(2)).scale(2)
    return a0, a1, a2


@dataclass(frozen=True)
class Reconstruction:
    P: LaurentPoly
    Q: LaurentPoly
    system: SystemData
    bracket: LaurentPoly
    flags: dict = field(default_factory=dict)

    @property
    def all_polynomial(self) -> bool:
        return all(self.flags.values())


def reconstruct(e: EdpolInstance) -> Reconstruction:
    """Recover ``P, Q`` from ``(A, q1, mu)``; integration constants are zero."""
    ctx = e.ctx
    m0, m1, m2, m3 = _mu(e.mu, ctx)
    F = to_F(e.q1, None, m3)
    q1, p2 = from_F(F, m3)
    num = e.A + q1 * p2 - (q1 * q1).scale(Fraction(3, 4))
    p1 = num.shift(0, -1)
    q0p, _ = q0_prime(F, p1, e.mu)
    p0p, _ = p0_prime(F, p1, q0p, e.mu)
    q0 = q0p.integrate("y")
    p0 = p0p.integrate("y")
    s = SystemData(p0, p1, p2, q0, q1, e.mu, F)
    P, Q = s.pair()
    flags = {"p1": _is_y_polynomial(p1), "q0": _is_y_polynomial(q0), "p0": _is_y_polynomial(p0)}
    return Reconstruction(P, Q, s, bracket(P, Q), flags)


# ---------------------------------------------------------------------------
# Abel reformulations


@dataclass(frozen=True)
class AbelForms:
    """``F1 = F1_num * y^(F1_shift/2)`` and ``F0 = F0_num * y^(F0_shift/2)``."""

    F1_num: LaurentPoly
    F0_num: LaurentPoly
    F1_shift: int = -5
    F0_shift: int = -8


def _abel_parts(q1: LaurentPoly, mu: Mu):
    ctx = q1.ctx
    m0, m1, m2, m3 = _mu(mu, ctx)
    y = LaurentPoly.y(ctx)
    lin = (q1 * q1).scale(3) - q1 * m3 * 3 + y * m2 * 2
    quart = (q1 ** 4 - (q1 ** 3) * m3 * 2 + y * (q1 ** 2) * m2 * 4
             - (y ** 2) * q1 * m1 * 8 + (y ** 3) * m0 * 16)
    return lin, quart


def abel_forms(q1: LaurentPoly, mu: Mu) -> AbelForms:
    lin, quart = _abel_parts(q1, mu)
    return AbelForms(lin.scale(Fraction(-1, 4)), quart.scale(Fraction(3, 32)))


def abel_equivalence_residual(e: EdpolInstance) -> LaurentPoly:
    """Cleared-denominator form of ``T T' = F1 T + F0`` with ``A = y^(3/2) T``.

    ``y A A' - (3/2) A^2 - y^(5/2) F1 A - y^4 F0``; a fixed multiple of the
    EDPol residual (pinned in the tests).
    """
    lin, quart = _abel_parts(e.q1, e.mu)
    A = e.A
    return (A.shift(0, 1) * _D(A) - (A * A).scale(Fraction(3, 2))
            + (lin * A).scale(Fraction(1, 4)) - quart.scale(Fraction(3, 32)))


ABEL_RATIO = Fraction(-1, 4)  # abel_equivalence_residual / edpol_residual


def special_case_residual(A: LaurentPoly, q1: LaurentPoly, mu0, mu2) -> LaurentPoly:
    """``3(A - S)^2 - (2yAA' - 2 mu2 y S + (5/12) mu2^2 y^2 - 3 mu0 y^3)``, ``S = q1^2/4 + mu2 y/6``."""
    ctx = A.ctx
    m0, m2 = _mu((mu0, mu2), ctx)
    y = LaurentPoly.y(ctx)
    S = (q1 * q1).scale(Fraction(1, 4)) + y * m2.scale(Fraction(1, 6))
    lhs = ((A - S) * (A - S)).scale(3)
    rhs = (y * A * _D(A)).scale(2) - y * S * m2 * 2 + (y ** 2) * (m2 * m2).scale(Fraction(5, 12)) \
        - (y ** 3) * m0 * 3
    return lhs - rhs


SPECIAL_RATIO = Fraction(2)  # edpol_residual / special_case_residual when mu1 = mu3 = 0
