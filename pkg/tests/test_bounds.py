from fractions import Fraction

import pytest

from expdom.bounds import (
    RHO,
    UPPER_DENSITY,
    alpha_threshold,
    density_lower_bound,
    extract_k,
    reference_bounds,
    run_genbound,
    run_main_theorem,
    validate_adjustment,
)
from expdom.errors import AdjustmentViolation, DomainError, NonpositiveKError, SolverError
from expdom.lpmodel import FINITE, assemble_main, model_window
from expdom.solver import EXACT, FLOAT, LPSolution, Status, solve_lp
from expdom.torus import TorusDims, interior_indices

MAIN_VALUE = Fraction(9301810, 74273)
MAIN_DEN = 18 + 121 - MAIN_VALUE
ISO_NOCAPS_VALUE = Fraction(1059093, 18785)


@pytest.fixture(scope="module")
def main_report():
    return run_main_theorem()


def test_density_lower_bound_examples():
    assert abs(density_lower_bound(18, 4.2381080608) - 1 / 13.7618919392) < 1e-15
    assert density_lower_bound(18, Fraction(17, 8)) == Fraction(8, 127)
    assert abs(density_lower_bound(18, 1e-12) - 1 / 18) < 1e-12
    for k in (0, -1, 18, 19):
        with pytest.raises(DomainError):
            density_lower_bound(18, k)


def test_density_lower_bound_monotone():
    grid = [Fraction(i, 8) for i in range(1, 144)]
    vals = [density_lower_bound(RHO, k) for k in grid]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_extract_k_examples():
    assert abs(extract_k(125.2381080608, 121) - 4.2381080608) < 1e-9
    assert abs(extract_k(56.06, 49) - 7.06) < 1e-9
    assert extract_k(Fraction(51), 49, Fraction(1, 2)) == Fraction(3, 2)
    with pytest.raises(NonpositiveKError):
        extract_k(121, 121, 0)
    with pytest.raises(NonpositiveKError):
        extract_k(122, 121, 2)


@pytest.mark.parametrize("r", [5, 7, 9, 13])
def test_adjustment_profile(r):
    s = solve_lp(assemble_main(r), EXACT)
    prof = validate_adjustment(s, model_window(r))
    inner = interior_indices(r)
    assert prof.k == s.value - len(inner)
    assert set(prof.y) == set(inner)
    assert all(0 <= prof.y[i] <= prof.caps[i] for i in inner)
    f = validate_adjustment(solve_lp(assemble_main(r), FLOAT()), model_window(r))
    assert abs(f.k - float(prof.k)) < 1e-6


def test_adjustment_violation():
    p = assemble_main(5)
    s = solve_lp(p)
    over = LPSolution(Status.OPTIMAL, s.value, [x * 3 for x in s.primal], s.dual, mode=s.mode)
    with pytest.raises(AdjustmentViolation) as err:
        validate_adjustment(over, model_window(5))
    assert "index" in err.value.details
    under = LPSolution(Status.OPTIMAL, s.value, [0] * len(s.primal), s.dual, mode=s.mode)
    with pytest.raises(AdjustmentViolation):
        validate_adjustment(under, model_window(5))
    with pytest.raises(SolverError):
        validate_adjustment(LPSolution(Status.INFEASIBLE, mode=EXACT), model_window(5))


def test_main_bound(main_report, schema):
    rep = main_report
    assert rep.k == MAIN_VALUE - 121
    assert rep.denominator == MAIN_DEN
    assert abs(float(rep.denominator) - 13.7618919392) < 1e-6
    assert rep.density_lower_bound == 1 / MAIN_DEN
    assert rep.epsilon == 0 and rep.alpha == 0
    assert 18 - rep.k > 13
    lp = rep.provenance["lps"]["main"]
    assert lp["status"] == "OPTIMAL" and lp["value"]["exact"] == "9301810/74273"
    assert lp["adjustment_total"]["exact"] == str(rep.k)
    schema("bound_report", rep.to_json())
    assert "denominator  13.761891939197" in rep.to_table()


def test_main_bound_float(main_report):
    rep = run_main_theorem(arithmetic=FLOAT())
    assert abs(rep.denominator - float(main_report.denominator)) < 1e-6


def test_main_bound_finite():
    same = run_main_theorem(FINITE(TorusDims(31, 31)))
    assert same.epsilon == 0 and same.denominator == MAIN_DEN
    big = run_main_theorem(FINITE(TorusDims(64, 64)))
    assert big.epsilon == Fraction(21463, 33554432)
    assert big.denominator == MAIN_DEN + big.epsilon
    # the tie allowance on a 32 x 32 torus swamps the LP surplus
    with pytest.raises(NonpositiveKError):
        run_main_theorem(FINITE(TorusDims(32, 32)))


def test_mixed_bound_needs_feasible_isolated_lp(main_report):
    assert run_genbound(0).denominator == main_report.denominator
    assert run_genbound(0).kind == "mixed"
    with pytest.raises(SolverError):
        run_genbound(Fraction(1, 2))
    with pytest.raises(DomainError):
        run_genbound(Fraction(3, 2))


def test_mixed_bound_uncapped_variant(schema):
    reps = {a: run_genbound(a, interior_caps=False) for a in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1)}
    w_iso = 18 + 49 - ISO_NOCAPS_VALUE
    assert reps[1].denominator == w_iso
    coef = Fraction(reps[Fraction(1, 2)].provenance["alpha_coefficient"]["exact"])
    assert coef == MAIN_DEN - w_iso
    for a, rep in reps.items():
        assert rep.denominator == MAIN_DEN - coef * a
        assert rep.density_lower_bound == 1 / rep.denominator
    d = [reps[Fraction(i, 4)].denominator for i in (1, 2, 3)]
    assert d[1] - d[0] == d[2] - d[1]
    schema("bound_report", reps[Fraction(1, 2)].to_json())


def test_alpha_threshold_uncapped_variant():
    a = alpha_threshold(interior_caps=False)
    assert a == Fraction(3678220, 15166891)
    assert run_genbound(a, interior_caps=False).denominator == 13
    assert alpha_threshold(1 / MAIN_DEN, interior_caps=False) == 0
    w_iso = 18 + 49 - ISO_NOCAPS_VALUE
    b = alpha_threshold(Fraction(2, 27), interior_caps=False)
    assert b == (MAIN_DEN - Fraction(27, 2)) / (MAIN_DEN - w_iso)
    assert run_genbound(b, interior_caps=False).denominator == Fraction(27, 2)
    f = alpha_threshold(arithmetic=FLOAT(), interior_caps=False)
    assert abs(f - float(a)) < 1e-9
    with pytest.raises(DomainError):
        alpha_threshold(Fraction(1, 20), interior_caps=False)
    with pytest.raises(DomainError):
        alpha_threshold(0, interior_caps=False)


def test_alpha_threshold_default_propagates_solver_status():
    with pytest.raises(SolverError) as err:
        alpha_threshold(UPPER_DENSITY)
    assert err.value.details["status"] == "INFEASIBLE"


def test_reference_bounds(main_report):
    refs = {b.name: b for b in reference_bounds(main_report)}
    assert refs["naive"].density == Fraction(1, 18)
    assert refs["self-weight"].density == Fraction(1, 17)
    assert refs["anderson"].density == 1 / Fraction(15875, 1000)
    assert refs["upper"].density == Fraction(1, 13) and refs["upper"].kind == "upper"
    assert refs["lp"].density == 1 / MAIN_DEN
    lowers = [b.density for b in reference_bounds(main_report) if b.kind == "lower"]
    assert lowers == sorted(lowers) and lowers[-1] < refs["upper"].density
