from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from abeljac import jacobian as jb
from abeljac.fracelem import phi0, psi1, psi3, y_shift
from abeljac.jacobian import EdpolInstance, SystemData
from abeljac.laurent import LaurentPoly
from abeljac.params import DEFAULT, ParamPoly
from abeljac.textio import parse_poly as pp
from conftest import read_data
from strategies import laurent_polys, nonzero_rationals, rationals, structured_pairs, y_polys

MU3 = ParamPoly.var("mu3")
FAMILY = EdpolInstance(pp("-y^6/4 - mu3*y^3/2 - mu3^2/4"), pp("y^3 + mu3"), (0, 0, 0, MU3))


def test_bracket_examples():
    assert jb.bracket(pp("x"), pp("y")) == pp("1")
    assert jb.bracket(pp("x^3*y"), pp("x^2*y")) == pp("x^4*y")
    assert jb.bracket(pp("y"), pp("y^2 + 7")).is_zero()
    assert jb.bracket(pp("x^-1"), pp("x^3*y")) == pp("-x")


@given(laurent_polys(max_terms=3), laurent_polys(max_terms=3), laurent_polys(max_terms=3))
@settings(max_examples=60)
def test_bracket_algebra(p, q, r):
    assert jb.bracket(p, q) == -jb.bracket(q, p)
    assert jb.bracket(p + r, q) == jb.bracket(p, q) + jb.bracket(r, q)
    assert jb.bracket(p * q, r) == p * jb.bracket(q, r) + q * jb.bracket(p, r)


@given(st.integers(0, 4), y_polys(), st.integers(0, 4), y_polys())
def test_x_power_bracket(k, pk, j, qj):
    direct = jb.bracket(pk.shift(k, 0), qj.shift(j, 0))
    assert jb.x_power_bracket(k, pk, j, qj) == direct


@given(laurent_polys(lo=0, max_terms=4), laurent_polys(lo=0, max_terms=4),
       st.integers(-1, 4), st.integers(-1, 4))
@settings(max_examples=80)
def test_bracket_coefficient_formula(p, q, i, j):
    assert jb.bracket_coefficient(p, q, i, j) == jb.bracket(p, q).coeff(i, j)


MAPS = {
    "psi1": psi1(DEFAULT),
    "psi3": psi3(DEFAULT),
    "phi0": phi0((2, 0, 0, 2), DEFAULT),
    "phi1": y_shift(LaurentPoly.monomial(-4, 0, Fraction(1, 2)), "phi1"),
}


@pytest.mark.parametrize("name", sorted(MAPS))
@given(p=laurent_polys(max_terms=3), q=laurent_polys(max_terms=3))
@settings(max_examples=200)
def test_bracket_functoriality(name, p, q):
    assert jb.bracket_functoriality_check(MAPS[name], p, q)


def test_map_jacobians():
    assert MAPS["psi1"].jacobian().as_laurent() == pp("1")
    assert MAPS["psi3"].jacobian().as_laurent() == pp("-x")
    assert MAPS["phi0"].jacobian().as_laurent() == pp("1")


# --- coupling between the x^3 and x coefficients ---------------------------


@given(structured_pairs())
@settings(max_examples=200)
def test_coupling_expanded(pair):
    P, Q, m = pair
    a, b = P.coeff, Q.coeff
    c10 = jb.bracket_coefficient(P, Q, 1, 0)
    assert jb.bracket_coefficient(P, Q, 3, 1) == (a(3, 1) * b(1, 1)).scale(2)
    assert c10 == (a(2, 0) * b(0, 1)).scale(2) - a(1, 1) * b(1, 0)
    assert c10 == (b(0, 1).scale(2) - a(1, 1)).scale(m)
    assert jb.bracket_coefficient(P, Q, 3, 0) == ParamPoly.const(m)
    if m == 0:
        assert c10.is_zero()


def test_coupling_short_form_needs_a11_b10_zero():
    # P has a11 = 1 and b10 = 2: the short form with a11*b11 misses -2
    P, Q = jb.assemble(pp("0"), pp("y"), pp("2"), pp("0"), pp("2"))
    a, b = P.coeff, Q.coeff
    short = (a(2, 0) * b(0, 1)).scale(2) - a(1, 1) * b(1, 1)
    assert jb.bracket_coefficient(P, Q, 1, 0) == short - ParamPoly.const(2)


# --- four-equation system and EDPol ----------------------------------------


def test_shape_bracket():
    assert jb.shape_bracket((1, 0, 0, 2)) == pp("x^4*y + 2*x^3 + 1")


def test_split_assemble_round_trip():
    P = pp(read_data("cubic_family", "P.txt"))
    Q = pp(read_data("cubic_family", "Q.txt"))
    parts = jb.split_pair(P, Q)
    assert jb.assemble(*parts) == (P, Q)
    with pytest.raises(ValueError):
        jb.split_pair(pp("x^4"), Q)


def test_family_system_and_reconstruct():
    P = pp(read_data("cubic_family", "P.txt"))
    Q = pp(read_data("cubic_family", "Q.txt"))
    p0, p1, p2, q0, q1 = jb.split_pair(P, Q)
    s = SystemData(p0, p1, p2, q0, q1, (0, 0, 0, MU3))
    assert all(r.is_zero() for r in jb.system_residuals(s))
    assert jb.compute_A(s) == FAMILY.A
    assert jb.edpol_residual(FAMILY).is_zero()
    assert jb.check_conditions(FAMILY) == (True, True, True)
    rec = jb.reconstruct(FAMILY)
    assert (rec.P, rec.Q) == (P, Q)
    assert rec.bracket == pp("x^4*y + mu3*x^3")
    assert rec.all_polynomial


def test_laurent_example_residual_and_bracket():
    A, q1 = pp(read_data("laurent_example", "A.txt")), pp(read_data("laurent_example", "q1.txt"))
    P = pp(read_data("laurent_example", "P.txt"))
    Q = pp(read_data("laurent_example", "Q.txt"))
    assert jb.edpol_residual(EdpolInstance(A, q1, (2, 0, 0, 2))).is_zero()
    assert jb.edpol_residual(EdpolInstance(A, q1, (1, 0, 0, 2))) == pp("-6*y^3")
    assert jb.check_conditions(EdpolInstance(A, q1, (1, 0, 0, 2))) == (False, True, True)
    assert jb.bracket(P, Q) == pp("x^4*y + 2*x^3 + 2")


def test_F_round_trip():
    F = pp("y^4/4")
    q1, p2 = jb.from_F(F, MU3)
    assert q1 == pp("y^5 + mu3") and jb.to_F(q1, p2, MU3) == F
    with pytest.raises(jb.DivisibilityError):
        jb.to_F(pp("y + mu3"), None, MU3)


@given(y_polys(hi=3, ylo=2), y_polys(hi=3, ylo=1), rationals, rationals)
@settings(max_examples=60)
def test_reconstruct_retraction(extra, p1, m2, m3):
    """A consistent system is recovered from (compute_A, q1, mu)."""
    F = extra.shift(0, -1)
    q1, p2 = jb.from_F(F, m3)
    p1 = p1 + LaurentPoly.const(m2)
    q0p, ok = jb.q0_prime(F, p1, (0, 0, m2, m3))
    assert ok
    # mu1 is whatever makes p0' a polynomial
    m1 = (q0p.value_at_zero() * 2 - p1.value_at_zero(1)) * m3
    mu = (0, m1, m2, m3)
    p0p, ok = jb.p0_prime(F, p1, q0p, mu)
    assert ok
    s = SystemData(p0p.integrate("y"), p1, p2, q0p.integrate("y"), q1, mu, F)
    rec = jb.reconstruct(EdpolInstance(jb.compute_A(s), q1, mu))
    assert (rec.P, rec.Q) == s.pair()


@given(y_polys(hi=4), y_polys(hi=4, ylo=2), rationals, rationals, rationals, rationals)
@settings(max_examples=100)
def test_abel_equivalence_ratio(A, extra, m0, m1, m2, m3):
    e = EdpolInstance(A, extra + LaurentPoly.const(m3), (m0, m1, m2, m3))
    assert jb.abel_equivalence_residual(e) == jb.edpol_residual(e).scale(jb.ABEL_RATIO)


@given(y_polys(hi=4), y_polys(hi=4), rationals, rationals)
@settings(max_examples=60)
def test_special_case_ratio(A, q1, m0, m2):
    e = EdpolInstance(A, q1, (m0, 0, m2, 0))
    assert jb.edpol_residual(e) == jb.special_case_residual(A, q1, m0, m2).scale(jb.SPECIAL_RATIO)


def test_abel_forms_pinned():
    # the quartic uses 4*mu2*y*q1^2 and -8*mu1*y^2*q1; these are the values that make
    # the ratio above exact
    f = jb.abel_forms(pp("y"), (1, 1, 1, 0))
    assert f.F0_num == pp("3*y^4/32 + 3*y^3/8 - 3*y^3/4 + 3*y^3/2")
    assert f.F1_num == pp("-3*y^2/4 - y/2")


@given(nonzero_rationals)
def test_leading_form_of_bracket_fixes_mu3(m):
    P, Q = jb.assemble(pp("0"), pp("0"), LaurentPoly.const(m), pp("0"), LaurentPoly.const(m))
    assert jb.bracket(P, Q) == pp("x^4*y") + LaurentPoly.monomial(3, 0, m)
