import pytest

from abeljac import pipeline as pl
from abeljac.fracelem import FracElem
from abeljac.textio import parse_poly as pp
from conftest import read_data


@pytest.fixture(scope="module")
def cubic_run():
    P = pp(read_data("cubic_family_mu3_2", "P.txt"))
    Q = pp(read_data("cubic_family_mu3_2", "Q.txt"))
    return pl.run_pipeline(P, Q, (1, 0, 0, 2), 2, strict=False)


def test_final_pair(cubic_run):
    f = cubic_run.final
    assert f["in_L"] and (f["deg_P"], f["deg_Q"]) == (112, 80)
    assert pp(f["bracket"]) == pp("-x^4*y + 2*x^3")
    assert f["verdict"] == "not a counterexample"
    assert f["corrections"] == [{"k": 1, "lambda": "2"}]


def test_late_stages_pass(cubic_run):
    by_name = {s.index: s for s in cubic_run.stages}
    assert [s.name for s in cubic_run.stages] == ["input", "psi3", "phi0", "psi1", "psi3", "phi1", "phi^(k)"]
    for k in (3, 4, 5, 6):
        assert by_name[k].passed, by_name[k].checks


def test_mu0_mismatch_shows_in_early_brackets(cubic_run):
    failed = {(s, c.name) for s, c in cubic_run.failed_checks()}
    assert failed == {("input", "bracket"), ("psi3", "bracket vs input shape"), ("phi0", "bracket = -y")}


def test_geometry_checks_pass(cubic_run):
    s1, s2 = cubic_run.stages[1], cubic_run.stages[2]
    names = {c.name: c.passed for c in s1.checks + s2.checks}
    assert names["en_(-2,7)(P1)"] and names["Pred_P1(tilde)"]
    assert names["Dir(P2)"] and names["Dir(Q2)"]
    assert names["l_(1,1)(P2) = c*R^7"]


def test_strict_stops_at_first_failure():
    P = pp(read_data("cubic_family_mu3_2", "P.txt"))
    Q = pp(read_data("cubic_family_mu3_2", "Q.txt"))
    with pytest.raises(pl.ShapeError) as err:
        pl.run_pipeline(P, Q, (1, 0, 0, 2), 2)
    assert err.value.state is not None


def test_laurent_seed_has_wrong_shape():
    P = pp(read_data("laurent_example", "P.txt"))
    Q = pp(read_data("laurent_example", "Q.txt"))
    state = pl.step0(P, Q, (2, 0, 0, 2), 2)
    assert not state.passed


def test_mu0_must_be_invertible():
    P = pp(read_data("cubic_family_mu3_2", "P.txt"))
    Q = pp(read_data("cubic_family_mu3_2", "Q.txt"))
    with pytest.raises(pl.MuNotInvertible):
        pl.run_pipeline(P, Q, (0, 0, 0, 2), 2, strict=False)


def test_extract_lambda_synthetic():
    R = pp("y + 5*x^-2")
    assert pl.extract_lambda((R ** 7).shift(3, 1), 2, 7) == 5
    assert pl.proportional_scalar((R ** 3).scale(5), R, 3) == 5
    assert pl.proportional_scalar(pp("x") * R ** 3, R, 3) is None


def test_step6_without_corrections():
    P, Q = pp("x^3*y + y^2"), pp("x^2*y")
    state = pl.PipelineState((1, 0, 0, 2), 1)
    stage = pl.Stage(5, "phi1", FracElem.of(P), FracElem.of(Q))
    stage.scalars["bracket"] = FracElem.of(pp("x^4*y - 4*x*y^2"))
    state.stages.append(stage)
    out = pl.step6(state)
    assert out.final["corrections"] == []
    assert out.current.passed


def test_trace_dict_round_trips_polys(cubic_run):
    t = pl.trace_dict(cubic_run)
    assert len(t["stages"]) == 7
    assert pp(t["stages"][0]["P"]) == pp(read_data("cubic_family_mu3_2", "P.txt"))
