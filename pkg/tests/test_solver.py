from fractions import Fraction

import pytest
import sympy

from abeljac import solver as sv
from abeljac.groebner import Budget
from abeljac.jacobian import EdpolInstance, edpol_residual
from abeljac.params import Context, ParamPoly
from abeljac.textio import parse_poly

BUDGET = Budget(seconds=120)


@pytest.fixture(scope="module")
def d3():
    return sv.solve_system(sv.generate_system(3), BUDGET)


@pytest.fixture(scope="module")
def d3_restricted():
    return sv.solve_system(sv.generate_system(3).restricted(mu1=0, mu2=0), BUDGET)


@pytest.mark.parametrize("d", range(2, 7))
def test_leading_law(d):
    cs = sv.generate_system(d)
    top = cs.equations[-1]
    k = cs.unknowns.index(f"A{2 * d}")
    assert all(e == 0 or i == k for m in top.terms for i, e in enumerate(m))
    as_law = {(m[k],): c for m, c in top.terms.items()}
    assert ParamPoly(as_law, Context(("A",))) == sv.leading_law(d)
    # independent route: expand the leading terms by hand in sympy
    a, y = sympy.symbols("a y")
    A, q1 = a * y ** (2 * d), y ** d
    lhs = 6 * (A - q1 ** 2 / 4) ** 2
    rhs = 4 * y * A * sympy.diff(A, y)
    law = sympy.Poly(sympy.expand(lhs - rhs), y).coeff_monomial(y ** (4 * d))
    ours = sympy.sympify(str(sv.leading_law(d)).replace("^", "**").replace("A", "a"))
    assert sympy.expand(law - ours) == 0


def test_leading_law_has_no_rational_root_at_2():
    # 6(a - 1/4)^2 - 16 a^2 = -10a^2 - 3a + 3/8, discriminant 24 is not a square
    a = sympy.symbols("a")
    law = sympy.sympify(str(sv.leading_law(2)).replace("^", "**").replace("A", "a"))
    assert all(not r.is_rational for r in sympy.solve(law, a))


def test_generate_system_shape():
    cs = sv.generate_system(3)
    assert cs.unknowns == ("a2", "A2", "A3", "A4", "A5", "A6", "mu3", "mu2", "mu1", "mu0")
    assert len(cs.conditions) == 1
    for eq in cs.equations:
        assert sv.is_weighted_homogeneous(dict(eq.terms), cs.weights)
    assert not sv.is_weighted_homogeneous(dict(cs.conditions[0].terms), cs.weights)
    with pytest.raises(ValueError):
        sv.generate_system(1)


def test_d3_family(d3):
    assert d3.status == "complete"
    fam = [s for s in d3.solutions if s.family]
    assert len(fam) == 1
    f = fam[0]
    assert parse_poly(f.A) == parse_poly("-y^6/4 - mu3*y^3/2 - mu3^2/4")
    assert parse_poly(f.q1) == parse_poly("y^3 + mu3")
    assert f.verified


def test_d3_other_solutions_have_vanishing_mu(d3):
    assert all(s.verified for s in d3.solutions)
    others = [s for s in d3.solutions if not s.family]
    assert others
    assert all(s.mu2_mu1_zero and s.mu0_zero for s in others)
    for name in ("mu0", "mu1", "mu2"):
        assert d3.certified(name) is True


def test_d3_restricted_certifies_mu0(d3_restricted):
    assert d3_restricted.status == "complete"
    assert d3_restricted.certified("mu0") is True
    assert all(s.mu0_zero for s in d3_restricted.solutions)


def test_d2_has_no_rational_solutions():
    rep = sv.solve_system(sv.generate_system(2), BUDGET)
    assert rep.no_rational_solutions
    assert any("A4" in a for s in rep.slices for a in s.algebraic)


def test_solutions_satisfy_generated_equations(d3):
    cs = sv.generate_system(3)
    for s in d3.solutions:
        if s.family:
            continue
        vals = {k: Fraction(v) for k, v in s.values.items()}
        point = {i: vals.get(k, Fraction(0)) for i, k in enumerate(cs.unknowns)}
        for eq in cs.equations + cs.conditions:
            assert sv._eval(dict(eq.terms), point) == 0


def test_budget_exhaustion_is_reported():
    rep = sv.solve_system(sv.generate_system(3), Budget(max_pairs=1))
    assert rep.status == "budget-exhausted"


def test_empty_system():
    cs = sv.CoefficientSystem(0, ("u",), (1,), [], [], ())
    rep = sv.solve_system(cs)
    assert "every point" in rep.note


def test_minimal_polynomial_small():
    # ideal (u^2 - 2) in one variable; minimal polynomial of u is t^2 - 2
    G = [{(2,): Fraction(1), (0,): Fraction(-2)}]
    assert sv.minimal_polynomial({(1,): Fraction(1)}, G, 1) == [Fraction(-2), Fraction(0), Fraction(1)]


@pytest.mark.parametrize("j", [1, 2, 3])
def test_homogeneous_family(j):
    h = sv.homogeneous_family_check(j)
    assert h.edpol_zero and h.square_identity and h.rational_control_nonzero
    assert h.homogeneous
    assert all(h.derived_residuals_zero)


def test_homogeneous_reference_coefficients_fail_two_equations():
    # the reference p2 is half the value forced by the mu3 equation
    h = sv.homogeneous_family_check(2)
    assert h.reference_residuals_zero == (False, True, True, False)
    assert not h.reference_passed


def test_homogeneous_rejects_bad_j():
    with pytest.raises(ValueError):
        sv.homogeneous_context(0)


def test_d3_homogeneous_point():
    e = EdpolInstance(parse_poly("y^6/12"), parse_poly("y^3"), (0, 0, 0, 0))
    assert edpol_residual(e).is_zero()
