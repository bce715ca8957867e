"""Acceptance gate: one test per criterion, one PASS/FAIL line each in the summary.

Criteria that cannot hold as stated are still checked as stated and left red;
see the detail text for what differs.
"""

import time

import sympy
from hypothesis import Phase, given, settings

import test_grading
import test_jacobian
from abeljac import jacobian as jb
from abeljac import solver as sv
from abeljac.groebner import Budget
from abeljac.jacobian import EdpolInstance
from abeljac.params import ParamPoly
from abeljac.pipeline import run_pipeline
from abeljac.textio import parse_poly as pp
from conftest import read_data
from strategies import structured_pairs

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, checks: dict[str, bool], elapsed: float, limit: float):
    checks = {**checks, f"runtime < {limit:g}s ({elapsed:.2f}s)": elapsed < limit}
    failed = [k for k, ok in checks.items() if not ok]
    ok = not failed
    RESULTS[n] = (ok, "all checks hold" if ok else "failed: " + "; ".join(failed))
    assert ok, RESULTS[n][1]


def test_criterion_1_laurent_example():
    t0 = time.monotonic()
    mu = (1, 0, 0, 2)
    e = EdpolInstance(pp(read_data("laurent_example", "A.txt")), pp(read_data("laurent_example", "q1.txt")), mu)
    res = jb.edpol_residual(e)
    br = jb.bracket(pp(read_data("laurent_example", "P.txt")), pp(read_data("laurent_example", "Q.txt")))
    record(1, {
        f"edpol residual = 0 (got {res})": res.is_zero(),
        "conditions = (false, true, true)": jb.check_conditions(e) == (False, True, True),
        f"bracket = x^4*y + 2*x^3 + 1 (got {br})": br == pp("x^4*y + 1 + 2*x^3"),
    }, time.monotonic() - t0, 1)


def test_criterion_2_cubic_family():
    t0 = time.monotonic()
    mu3 = ParamPoly.var("mu3")
    mu = (0, 0, 0, mu3)
    P, Q = pp(read_data("cubic_family", "P.txt")), pp(read_data("cubic_family", "Q.txt"))
    p0, p1, p2, q0, q1 = jb.split_pair(P, Q)
    s = jb.SystemData(p0, p1, p2, q0, q1, mu)
    A = jb.compute_A(s)
    rec = jb.reconstruct(EdpolInstance(A, q1, mu))
    record(2, {
        "system residuals = (0,0,0,0)": all(r.is_zero() for r in jb.system_residuals(s)),
        "A = -y^6/4 - mu3*y^3/2 - mu3^2/4": A == pp("-y^6/4 - mu3*y^3/2 - mu3^2/4"),
        "reconstruct gives the given P, Q": (rec.P, rec.Q) == (P, Q),
        "bracket = x^4*y + mu3*x^3": rec.bracket == pp("x^4*y + mu3*x^3"),
    }, time.monotonic() - t0, 1)


def test_criterion_3_pipeline():
    t0 = time.monotonic()
    P, Q = pp(read_data("cubic_family_mu3_2", "P.txt")), pp(read_data("cubic_family_mu3_2", "Q.txt"))
    state = run_pipeline(P, Q, (1, 0, 0, 2), 2, strict=False)
    f = state.final or {}
    failed = [f"{s}: {c.name}" for s, c in state.failed_checks()]
    record(3, {
        "final pair in L": bool(f.get("in_L")),
        f"deg = (112, 80) (got ({f.get('deg_P')}, {f.get('deg_Q')}))": (f.get("deg_P"), f.get("deg_Q")) == (112, 80),
        f"bracket = 2*x^3 + x^4*y (got {f.get('bracket')})": pp(f.get("bracket", "0")) == pp("2*x^3 + x^4*y"),
        f"every stage check passes ({', '.join(failed)})": not failed,
    }, time.monotonic() - t0, 300)


def test_criterion_4_grading_transform_laws():
    t0 = time.monotonic()
    ok = {}
    for name in ("test_psi1_transform_law", "test_psi3_transform_law_low_branch",
                 "test_psi3_transform_law_high_branch"):
        try:
            getattr(test_grading, name)()
            ok[name] = True
        except AssertionError:
            ok[name] = False
    record(4, ok, time.monotonic() - t0, 30)


def test_criterion_5_functoriality():
    t0 = time.monotonic()
    ok = {}
    for name in ("psi1", "psi3", "phi0", "phi1"):
        try:
            test_jacobian.test_bracket_functoriality(name=name)
            ok[name] = True
        except AssertionError:
            ok[name] = False
    record(5, ok, time.monotonic() - t0, 30)


def _abel_ratio_symbolic() -> sympy.Expr:
    """Substitute A = y^(3/2) T into the Abel form and divide by the EDPol residual."""
    y = sympy.symbols("y", positive=True)
    cs = sympy.symbols("c0:3")
    ks = sympy.symbols("k0:3")
    m0, m1, m2, m3 = sympy.symbols("m0:4")
    A = sum(c * y ** i for i, c in enumerate(cs))
    q1 = m3 + sum(k * y ** (i + 2) for i, k in enumerate(ks))
    lin = 3 * q1 ** 2 - 3 * m3 * q1 + 2 * m2 * y
    quart = q1 ** 4 - 2 * m3 * q1 ** 3 + 4 * m2 * y * q1 ** 2 - 8 * m1 * y ** 2 * q1 + 16 * m0 * y ** 3
    F1 = -lin / (4 * y ** sympy.Rational(5, 2))
    F0 = 3 * quart / (32 * y ** 4)
    T = A / y ** sympy.Rational(3, 2)
    abel = T * sympy.diff(T, y) - F1 * T - F0
    # cleared form used by the package: multiply through by y^4
    cleared = sympy.expand(abel * y ** 4)
    L = m3 * q1 / 4 - m2 * y / 6
    edpol = 6 * (A - q1 ** 2 / 4 + L) ** 2 - (4 * y * A * sympy.diff(A, y) + 6 * L ** 2
                                                 - m2 * y * q1 ** 2 + 3 * m1 * y ** 2 * q1 - 6 * m0 * y ** 3)
    return sympy.cancel(cleared / sympy.expand(edpol))


def test_criterion_6_abel_equivalence():
    t0 = time.monotonic()
    derived = _abel_ratio_symbolic()
    ok = {f"symbolic ratio {derived} equals pinned {jb.ABEL_RATIO}":
          derived == sympy.Rational(jb.ABEL_RATIO.numerator, jb.ABEL_RATIO.denominator)}
    try:
        test_jacobian.test_abel_equivalence_ratio()
        ok["ratio holds on 100 random instances"] = True
    except AssertionError:
        ok["ratio holds on 100 random instances"] = False
    record(6, ok, time.monotonic() - t0, 30)


def test_criterion_7_solver():
    t0 = time.monotonic()
    budget = Budget(seconds=240)
    ok = {}
    for d in range(2, 7):
        top = sv.generate_system(d).equations[-1]
        k = sv.system_unknowns(d)[0].index(f"A{2 * d}")
        law = ParamPoly({(m[k],): c for m, c in top.terms.items()}, sv.leading_law(d).ctx)
        ok[f"(a) leading law d={d}"] = law == sv.leading_law(d)
    r3 = sv.solve_system(sv.generate_system(3), budget)
    fam = [s for s in r3.solutions if s.family]
    ok["(b) d=3 complete"] = r3.status == "complete"
    ok["(b) family found"] = any(pp(s.A) == pp("-y^6/4 - mu3*y^3/2 - mu3^2/4") and s.verified for s in fam)
    ok["(b) every other solution has mu2=mu1=mu0=0"] = all(
        s.mu2_mu1_zero and s.mu0_zero for s in r3.solutions if not s.family)
    ok["(b) mu0, mu1, mu2 certified zero"] = all(r3.certified(n) for n in ("mu0", "mu1", "mu2"))
    r2 = sv.solve_system(sv.generate_system(2), budget)
    ok["(c) d=2 no rational solutions"] = r2.no_rational_solutions
    rr = sv.solve_system(sv.generate_system(3).restricted(mu1=0, mu2=0), budget)
    ok["(d) restricted d=3 certifies mu0=0"] = rr.status == "complete" and rr.certified("mu0") is True
    record(7, ok, time.monotonic() - t0, 600)


def test_criterion_8_homogeneous_family():
    t0 = time.monotonic()
    ok = {}
    for j in (1, 2, 3):
        h = sv.homogeneous_family_check(j)
        ok[f"j={j} edpol in quotient ring"] = h.edpol_zero
        ok[f"j={j} stated p2, p1 satisfy the four equations {h.reference_residuals_zero}"] = \
            all(h.reference_residuals_zero)
        ok[f"j={j} P, Q homogeneous under (j,1)"] = h.homogeneous
    record(8, ok, time.monotonic() - t0, 60)


def test_criterion_9_coupling():
    t0 = time.monotonic()
    stats = {"n": 0, "stated": 0, "implication": 0}

    @given(structured_pairs())
    @settings(max_examples=200, phases=[Phase.generate], database=None)
    def sample(pair):
        P, Q, m = pair
        a, b = P.coeff, Q.coeff
        c10 = jb.bracket_coefficient(P, Q, 1, 0)
        stats["n"] += 1
        stats["stated"] += c10 == (a(2, 0) * b(0, 1)).scale(2) - a(1, 1) * b(1, 1)
        stats["implication"] += m != 0 or c10.is_zero()

    sample()
    n = stats["n"]
    record(9, {
        f">= 200 pairs (got {n})": n >= 200,
        f"c10 = 2 a20 b01 - a11 b11 ({stats['stated']}/{n})": stats["stated"] == n,
        f"mu3 = 0 implies mu1 = 0 ({stats['implication']}/{n})": stats["implication"] == n,
    }, time.monotonic() - t0, 30)
