"""Six-stage automorphism pipeline turning a shaped pair into a pair in K[x, y].

Stage maps, in order: psi3, phi0, psi1, psi3, phi1, then shifts
``y -> y - lambda_k x^-k`` until the pair is polynomial.  Every stage
records exact ``StageCheck`` results; with ``strict=True`` the first failing
check stops the run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import grading as gr
from .fracelem import FracElem, RingMap, phi0, psi1, psi3, reduce_fraction, substitute, y_shift
from .jacobian import bracket, shape_bracket
from .laurent import LaurentPoly, exact_divide
from .params import Context, ParamPoly
from .textio import format_poly

MAX_CORRECTIONS = 3


class PipelineError(RuntimeError):
    """The run cannot continue; ``state`` holds the trace so far."""

    def __init__(self, message: str, state: "PipelineState | None" = None):
        super().__init__(message)
        self.state = state


class ShapeError(PipelineError):
    pass


class MuNotInvertible(PipelineError):
    pass


@dataclass(frozen=True)
class StageCheck:
    name: str
    expected: str
    actual: str
    passed: bool
    reference: str | None = None  # alternative expected value, kept for comparison

    def to_dict(self) -> dict:
        d = {"name": self.name, "expected": self.expected, "actual": self.actual, "pass": self.passed}
        if self.reference is not None:
            d["reference"] = self.reference
        return d


@dataclass
class Stage:
    index: int
    name: str
    P: FracElem
    Q: FracElem
    checks: list[StageCheck] = field(default_factory=list)
    scalars: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass
class PipelineState:
    mu: tuple
    j: int
    stages: list[Stage] = field(default_factory=list)
    final: dict | None = None

    @property
    def m(self) -> int:
        return 3 * self.j + 1

    @property
    def n(self) -> int:
        return 2 * self.j + 1

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.stages)

    def failed_checks(self) -> list[tuple[str, StageCheck]]:
        return [(s.name, c) for s in self.stages for c in s.checks if not c.passed]

    @property
    def current(self) -> Stage:
        return self.stages[-1]


# ---------------------------------------------------------------------------
# helpers


def _text(p) -> str:
    if isinstance(p, FracElem):
        return str(p)
    if isinstance(p, LaurentPoly):
        return format_poly(p)
    return str(p)


def _laurent(p: FracElem) -> LaurentPoly | None:
    p = reduce_fraction(p)
    return p.num if p.is_laurent() else None


def _eq(a, b) -> bool:
    return FracElem.of(a) == FracElem.of(b)


def proportional_scalar(form: LaurentPoly, base: LaurentPoly, power: int) -> ParamPoly | None:
    """``c`` with ``form == c * base^power``, else None."""
    target = base ** power
    q = exact_divide(form, target)
    if q is None or not q.is_constant():
        return None
    return q.coeff(0, 0)


def proportional_up_to_monomial(form: LaurentPoly, base: LaurentPoly, power: int):
    """``(c, (a, b))`` with ``form == c x^a y^b base^power``, else None."""
    q = exact_divide(form, base ** power)
    if q is None or not q.is_monomial():
        return None
    (k, c), = q.terms.items()
    return c, k


def extract_lambda(form: LaurentPoly, k: int, power: int) -> ParamPoly | None:
    """``lambda`` with ``form`` proportional to ``(y + lambda x^-k)^power`` times a monomial.

    On a (-1, k)-edge every term is ``x^-v t^e`` with ``t = x^k y``; the top two
    coefficients of the polynomial in ``t`` give ``power * lambda``.
    """
    by_e = {j: c for (i, j), c in form.terms.items()}
    if len(by_e) != len(form.terms):
        return None
    e = max(by_e)
    top, nxt = by_e[e], by_e.get(e - 1)
    if nxt is None:
        return None
    lam = nxt.exact_div(top.scale(power)) if not top.is_constant() else nxt.scale(1 / (power * top.constant_value()))
    return lam


def _mu0_inverse(mu: tuple, ctx: Context) -> Fraction:
    m0 = mu[0]
    if isinstance(m0, ParamPoly):
        if not m0.is_constant():
            raise MuNotInvertible("mu0 must be invertible: specialize it to a nonzero rational")
        m0 = m0.constant_value()
    if m0 == 0:
        raise MuNotInvertible("mu0 must be invertible (mu0 = 0)")
    return 1 / Fraction(m0)


class _Recorder:
    def __init__(self, stage: Stage):
        self.stage = stage

    def check(self, name: str, expected, actual, passed: bool | None = None, reference=None):
        if passed is None:
            passed = _eq(expected, actual) if isinstance(expected, (LaurentPoly, FracElem)) \
                else expected == actual
        self.stage.checks.append(StageCheck(name, _fmt(expected), _fmt(actual), bool(passed),
                                            None if reference is None else _fmt(reference)))
        return passed


def _fmt(v) -> str:
    if isinstance(v, (LaurentPoly, FracElem)):
        return _text(v)
    if isinstance(v, (list, tuple)) and v and isinstance(v[0], gr.Direction):
        return "{" + ", ".join(str(d) for d in v) + "}"
    if isinstance(v, gr.Direction):
        return str(v)
    return str(v)


def _dirs(p: FracElem):
    lp = _laurent(p)
    return None if lp is None else gr.directions(lp)


def _check_dirs(rec: _Recorder, label: str, p: FracElem, expected: list[gr.Direction]):
    got = _dirs(p)
    rec.check(f"Dir({label})", sorted(expected), "not Laurent" if got is None else got,
              passed=got is not None and got == sorted(expected))


def _check_en(rec: _Recorder, label: str, p: FracElem, d, expected: tuple, reference=None):
    lp = _laurent(p)
    got = None if lp is None else gr.edge_endpoints(lp, d).en
    rec.check(f"en_{gr._dir(d)}({label})", expected, "not Laurent" if got is None else got,
              passed=got == expected, reference=reference)


def _check_st(rec: _Recorder, label: str, p: FracElem, d, expected: tuple):
    lp = _laurent(p)
    got = None if lp is None else gr.edge_endpoints(lp, d).st
    rec.check(f"st_{gr._dir(d)}({label})", expected, "not Laurent" if got is None else got,
              passed=got == expected)


def _check_prop(rec: _Recorder, label: str, p: FracElem, d, base: LaurentPoly, power: int, key: str):
    lp = _laurent(p)
    c = None
    if lp is not None:
        c = proportional_scalar(gr.leading_form(lp, d), base, power)
    rec.check(f"l_{gr._dir(d)}({label}) = c*R^{power}", f"c*({format_poly(base)})^{power}",
              "not proportional" if c is None else f"c = {c}", passed=c is not None)
    if c is not None:
        rec.stage.scalars[key] = c
    return c


def _apply(phi: RingMap, stage: Stage, name: str, index: int) -> Stage:
    return Stage(index, name, substitute(stage.P, phi), substitute(stage.Q, phi))


def _bracket_check(rec: _Recorder, prev_bracket, phi: RingMap, reference=None):
    """Composition law: [phi(P), phi(Q)] = phi([P, Q]) * Jac(phi)."""
    actual = reduce_fraction(FracElem.of(bracket(rec.stage.P, rec.stage.Q)))
    expected = reduce_fraction(substitute(prev_bracket, phi) * phi.jacobian())
    rec.check("bracket", expected, actual, reference=reference)
    rec.stage.scalars["bracket"] = actual
    return actual


# ---------------------------------------------------------------------------
# stages


def step0(P: LaurentPoly, Q: LaurentPoly, mu: tuple, j: int) -> PipelineState:
    """Verify the input shape: leading forms, (j,1)-edge endpoints, bracket."""
    ctx = P.ctx
    state = PipelineState(tuple(mu), j)
    st = Stage(0, "input", FracElem.of(P), FracElem.of(Q))
    rec = _Recorder(st)
    m3 = mu[3]
    x, y = LaurentPoly.x(ctx), LaurentPoly.y(ctx)
    rec.check("l_(1,-1)(P)", x ** 3 * y + (x ** 2) * m3, gr.leading_form(P, (1, -1)))
    rec.check("l_(1,-1)(Q)", x ** 2 * y + x * m3, gr.leading_form(Q, (1, -1)))
    d = gr.Direction(j, 1)
    rec.check("(j,1) in Dir(P) and Dir(Q)", True, d in gr.directions(P) and d in gr.directions(Q))
    eP, eQ = gr.edge_endpoints(P, d), gr.edge_endpoints(Q, d)
    rec.check(f"st_{d}(P)", (3, 1), eP.st)
    rec.check(f"st_{d}(Q)", (2, 1), eQ.st)
    rec.check(f"en_{d}(P)", (0, state.m), eP.en)
    rec.check(f"en_{d}(Q)", (0, state.n), eQ.en)
    br = bracket(P, Q)
    rec.check("bracket", shape_bracket(mu, ctx), br)
    st.scalars["bracket"] = FracElem.of(br)
    st.scalars["in_L"] = P.is_polynomial() and Q.is_polynomial()
    state.stages.append(st)
    return state


def step1(state: PipelineState) -> PipelineState:
    prev = state.current
    ctx = prev.P.ctx
    phi = psi3(ctx)
    st = _apply(phi, prev, "psi3", 1)
    rec = _Recorder(st)
    j, m, n = state.j, state.m, state.n
    m0, m1, m2, m3 = state.mu
    tilde = gr.Direction(-j, 3 * j + 1)
    _check_en(rec, "P1", st.P, tilde, (0, 1))
    _check_en(rec, "Q1", st.Q, tilde, (1, 1))
    P1, Q1 = _laurent(st.P), _laurent(st.Q)
    x, y = LaurentPoly.x(ctx), LaurentPoly.y(ctx)
    xi = LaurentPoly.monomial(-1, 0, 1, ctx)
    if P1 is not None and Q1 is not None:
        rec.check("l_(-1,2)(P1)", y + (xi ** 2) * m3, gr.leading_form(P1, (-1, 2)))
        rec.check("l_(-1,2)(Q1)", x * y + xi * m3, gr.leading_form(Q1, (-1, 2)))
        rec.check("Pred_P1(tilde)", gr.Direction(1, -1), gr.pred_dir(P1, tilde))
        rec.check("Pred_Q1(tilde)", gr.Direction(1, -1), gr.pred_dir(Q1, tilde))
        # the trailing (-1,3)-form sits on the ray through (3,1); its far end is m(3,1)
        rec.check("w(ll_(-1,3)(P1))", (3 * m, m),
                  gr.edge_endpoints(gr.trailing_form(P1, (-1, 3)), (1, -3)).en)
        rec.check("w(ll_(-1,3)(Q1))", (3 * n, n),
                  gr.edge_endpoints(gr.trailing_form(Q1, (-1, 3)), (1, -3)).en)
    expected = -(y + x * m0 + LaurentPoly.const(m1, ctx) + xi * m2 + (xi ** 2) * m3)
    actual = _bracket_check(rec, prev.scalars["bracket"], phi)
    rec.check("bracket vs input shape", expected, actual)
    state.stages.append(st)
    return state


def step2(state: PipelineState) -> PipelineState:
    prev = state.current
    ctx = prev.P.ctx
    phi = phi0(state.mu, ctx)
    st = _apply(phi, prev, "phi0", 2)
    st.P, st.Q = reduce_fraction(st.P), reduce_fraction(st.Q)
    rec = _Recorder(st)
    j, m, n = state.j, state.m, state.n
    y = LaurentPoly.y(ctx)
    in_L = st.P.is_polynomial() and st.Q.is_polynomial()
    st.scalars["in_L"] = in_L
    rec.check("P2, Q2 in L", True, in_L)
    _bracket_check(rec, prev.scalars["bracket"], phi)
    rec.check("bracket = -y", -y, st.scalars["bracket"])
    tilde = gr.Direction(-j, 3 * j + 1)
    _check_dirs(rec, "P2", st.P, [tilde, gr.Direction(1, 1)])
    _check_dirs(rec, "Q2", st.Q, [tilde, gr.Direction(1, 1)])
    _check_en(rec, "P2", st.P, tilde, (0, 1))
    _check_en(rec, "Q2", st.Q, tilde, (1, 1))
    R2 = LaurentPoly.monomial(3, 0, 1, ctx) * (y - LaurentPoly.monomial(1, 0, state.mu[0], ctx))
    _check_prop(rec, "P2", st.P, (1, 1), R2, m, "lambda_P")
    _check_prop(rec, "Q2", st.Q, (1, 1), R2, n, "lambda_Q")
    state.stages.append(st)
    return state


def step3(state: PipelineState) -> PipelineState:
    prev = state.current
    ctx = prev.P.ctx
    if not prev.scalars.get("in_L"):
        raise PipelineError("psi1 needs P2, Q2 in L; the pair still has denominators or negative exponents",
                            state)
    inv = _mu0_inverse(state.mu, ctx)
    phi = psi1(ctx)
    st = _apply(phi, prev, "psi1", 3)
    rec = _Recorder(st)
    j, m, n = state.j, state.m, state.n
    x, y = LaurentPoly.x(ctx), LaurentPoly.y(ctx)
    _bracket_check(rec, prev.scalars["bracket"], phi, reference=-x)
    bar = gr.Direction(3 * j + 1, -j)
    _check_dirs(rec, "P3", st.P, [bar, gr.Direction(1, 1)])
    _check_dirs(rec, "Q3", st.Q, [bar, gr.Direction(1, 1)])
    # psi1 reverses orientation, so the (bar)-edge runs from the image of
    # en_tilde(P2) to the image of its far end
    _check_en(rec, "P3", st.P, bar, (m, 3 * m), reference=(1, 0))
    _check_en(rec, "Q3", st.Q, bar, (n, 3 * n), reference=(1, 1))
    _check_st(rec, "P3", st.P, bar, (1, 0))
    _check_st(rec, "Q3", st.Q, bar, (1, 1))
    R3 = LaurentPoly.monomial(0, 3, 1, ctx) * (y + x * inv)
    _check_prop(rec, "P3", st.P, (1, 1), R3, m, "tilde_lambda_P")
    _check_prop(rec, "Q3", st.Q, (1, 1), R3, n, "tilde_lambda_Q")
    state.stages.append(st)
    return state


def step4(state: PipelineState) -> PipelineState:
    prev = state.current
    ctx = prev.P.ctx
    inv = _mu0_inverse(state.mu, ctx)
    phi = psi3(ctx)
    st = _apply(phi, prev, "psi3", 4)
    rec = _Recorder(st)
    j, m, n = state.j, state.m, state.n
    y = LaurentPoly.y(ctx)
    _bracket_check(rec, prev.scalars["bracket"], phi, reference=LaurentPoly.const(1, ctx))
    hat = gr.Direction(-3 * j - 1, 8 * j + 3)
    _check_dirs(rec, "P4", st.P, [hat, gr.Direction(-1, 4)])
    _check_dirs(rec, "Q4", st.Q, [hat, gr.Direction(-1, 4)])
    _check_en(rec, "P4", st.P, hat, (-1, 0))
    _check_en(rec, "Q4", st.Q, hat, (2, 1))
    R4 = LaurentPoly.monomial(12, 3, 1, ctx) * (y + LaurentPoly.monomial(-4, 0, inv, ctx))
    _check_prop(rec, "P4", st.P, (-1, 4), R4, m, "tilde_lambda_P")
    _check_prop(rec, "Q4", st.Q, (-1, 4), R4, n, "tilde_lambda_Q")
    state.stages.append(st)
    return state


def step5(state: PipelineState) -> PipelineState:
    prev = state.current
    ctx = prev.P.ctx
    inv = _mu0_inverse(state.mu, ctx)
    phi = y_shift(LaurentPoly.monomial(-4, 0, inv, ctx), "phi1")
    st = _apply(phi, prev, "phi1", 5)
    rec = _Recorder(st)
    m, n = state.m, state.n
    y = LaurentPoly.y(ctx)
    _bracket_check(rec, prev.scalars["bracket"], phi)
    R5 = LaurentPoly.monomial(12, 1, 1, ctx) * (y - LaurentPoly.monomial(-4, 0, inv, ctx)) ** 3
    _check_prop(rec, "P5", st.P, (-1, 4), R5, m, "tilde_lambda_P")
    _check_prop(rec, "Q5", st.Q, (-1, 4), R5, n, "tilde_lambda_Q")
    state.stages.append(st)
    return state


def step6(state: PipelineState) -> PipelineState:
    """Shift away the remaining (-1, k) edges, then report degrees and bracket."""
    prev = state.current
    ctx = prev.P.ctx
    m, n = state.m, state.n
    P, Q = _laurent(prev.P), _laurent(prev.Q)
    if P is None or Q is None:
        raise PipelineError("P5, Q5 have non-monomial denominators", state)
    br = prev.scalars["bracket"]
    corrections = []
    st = Stage(6, "phi^(k)", prev.P, prev.Q)
    rec = _Recorder(st)
    y = LaurentPoly.y(ctx)
    while not (P.is_polynomial() and Q.is_polynomial()):
        if len(corrections) == MAX_CORRECTIONS:
            raise PipelineError(f"pair not in L after {MAX_CORRECTIONS} corrections", state)
        d = gr.succ_dir(P, (-1, 4))
        if d.rho != -1 or d.sigma not in (1, 2, 3):
            raise PipelineError(f"Succ_P(-1,4) = {d} is not of the form (-1,k), k in 1..3", state)
        k = d.sigma
        lfP, lfQ = gr.leading_form(P, d), gr.leading_form(Q, d)
        rec.check(f"[l_{d}(P), l_{d}(Q)] = 0", 0, bracket(lfP, lfQ))
        lam = extract_lambda(lfP, k, m)
        if lam is None or not lam.is_constant():
            raise PipelineError(f"no rational lambda_{k} on the {d} edge", state)
        R6 = y + LaurentPoly.monomial(-k, 0, lam, ctx)
        okP = proportional_up_to_monomial(lfP, R6, m) is not None
        okQ = proportional_up_to_monomial(lfQ, R6, n) is not None
        rec.check(f"l_{d}(P) ~ R6^m", True, okP)
        rec.check(f"l_{d}(Q) ~ R6^n", True, okQ)
        if not (okP and okQ):
            raise PipelineError(f"leading forms on {d} are not powers of y + lambda x^-{k}", state)
        phi = y_shift(LaurentPoly.monomial(-k, 0, lam, ctx), f"phi^({k})")
        P, Q = substitute(P, phi).as_laurent(), substitute(Q, phi).as_laurent()
        br = reduce_fraction(substitute(br, phi) * phi.jacobian())
        corrections.append({"k": k, "lambda": str(lam)})
    st.P, st.Q = FracElem.of(P), FracElem.of(Q)
    st.scalars["corrections"] = corrections
    final_br = bracket(P, Q)
    rec.check("bracket (composition law)", br, final_br)
    degP, degQ = P.total_degree(), Q.total_degree()
    constant = final_br.is_constant() and not final_br.is_zero()
    state.final = {
        "in_L": True,
        "deg_P": degP,
        "deg_Q": degQ,
        "bracket": format_poly(final_br),
        "bracket_is_nonzero_constant": constant,
        "verdict": "counterexample" if constant else "not a counterexample",
        "corrections": corrections,
    }
    if constant:
        rec.check("deg(P) = 16m", 16 * m, degP)
        rec.check("deg(Q) = 16n", 16 * n, degQ)
    state.stages.append(st)
    return state


STEPS = (step1, step2, step3, step4, step5, step6)


def run_pipeline(P: LaurentPoly, Q: LaurentPoly, mu: tuple, j: int,
                 strict: bool = True) -> PipelineState:
    """Run all stages; with ``strict`` a failing check raises PipelineError."""
    state = step0(P, Q, mu, j)
    if strict and not state.passed:
        raise ShapeError("input does not have the required shape", state)
    for step in STEPS:
        state = step(state)
        if strict and not state.current.passed:
            bad = "; ".join(f"{c.name}: expected {c.expected}, got {c.actual}"
                            for c in state.current.checks if not c.passed)
            raise PipelineError(f"stage {state.current.index} ({state.current.name}) failed: {bad}",
                                state)
    return state


def trace_dict(state: PipelineState, with_polys: bool = True) -> dict:
    out = {"mu": [str(m) for m in state.mu], "j": state.j, "m": state.m, "n": state.n,
           "stages": []}
    for s in state.stages:
        d = {"index": s.index, "map": s.name, "pass": s.passed,
             "checks": [c.to_dict() for c in s.checks],
             "scalars": {k: _fmt(v) if not isinstance(v, (bool, list)) else v
                         for k, v in s.scalars.items()}}
        if with_polys:
            d["P"], d["Q"] = _text(s.P), _text(s.Q)
        out["stages"].append(d)
    out["final"] = state.final
    return out
