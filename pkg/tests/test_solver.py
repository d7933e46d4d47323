import random
from fractions import Fraction

import pytest

from expdom.errors import SizeLimitError
from expdom.lpmodel import FINITE, LPInstance, assemble_isolated, assemble_main
from expdom.solver import (
    EXACT,
    FLOAT,
    LPSolution,
    Status,
    check_certificate,
    decimal_string,
    solve_lp,
    vertex_enumeration_oracle,
)
from expdom.torus import TorusDims
from instances import random_lp

MAIN_VALUES = {
    3: Fraction(58, 25),
    5: Fraction(298, 25),
    7: Fraction(41824, 1445),
    13: Fraction(9301810, 74273),
}


def toy(objective, rows, lower, upper, var_lower, var_upper=None):
    return LPInstance(tuple(objective), tuple(tuple(r) for r in rows), tuple(lower), tuple(upper),
                      tuple(var_lower), None if var_upper is None else tuple(var_upper))


ONE_VAR = toy([1], [[1]], [1], [None], [0])
INFEASIBLE = toy([1], [[1]], [None], [-1], [0])
UNBOUNDED = toy([-1], [[1]], [0], [None], [0])


def test_toys():
    s = solve_lp(ONE_VAR)
    assert s.status is Status.OPTIMAL and s.value == 1 and s.primal == [1]
    assert solve_lp(INFEASIBLE).status is Status.INFEASIBLE
    assert solve_lp(INFEASIBLE, FLOAT()).status is Status.INFEASIBLE
    assert solve_lp(UNBOUNDED).status is Status.UNBOUNDED
    assert solve_lp(UNBOUNDED, FLOAT()).status is Status.UNBOUNDED


def test_integer_marks_rejected():
    p = LPInstance(ONE_VAR.objective, ONE_VAR.matrix, ONE_VAR.row_lower, ONE_VAR.row_upper,
                   ONE_VAR.var_lower, integer_marks=frozenset({0}))
    with pytest.raises(ValueError):
        solve_lp(p)


@pytest.mark.parametrize("r", sorted(MAIN_VALUES))
def test_main_exact_values(r):
    p = assemble_main(r)
    s = solve_lp(p, EXACT)
    assert s.value == MAIN_VALUES[r]
    assert s.value >= (r - 2) ** 2
    assert check_certificate(p, s)


def test_r13_decimal_rounding():
    s = solve_lp(assemble_main(13))
    assert decimal_string(s.value, 10) == "125.2381080608"
    assert s.value.denominator == 74273


def test_decimal_string():
    assert decimal_string(Fraction(1, 3), 4) == "0.3333"
    assert decimal_string(Fraction(2, 3), 4) == "0.6667"
    assert decimal_string(Fraction(-1, 8), 2) == "-0.12"
    assert decimal_string(Fraction(3, 8), 2) == "0.38"
    assert decimal_string(5, 1) == "5.0"


INSTANCES = [
    ("main3", lambda: assemble_main(3)),
    ("main5", lambda: assemble_main(5)),
    ("main7", lambda: assemble_main(7)),
    ("main9", lambda: assemble_main(9)),
    ("main13", lambda: assemble_main(13)),
    ("main9-nocaps", lambda: assemble_main(9, interior_caps=False)),
    ("main5-finite", lambda: assemble_main(5, FINITE(TorusDims(7, 8)))),
    ("main7-finite", lambda: assemble_main(7, FINITE(TorusDims(16, 16)))),
    ("isolated-nocaps", lambda: assemble_isolated(interior_caps=False)),
]


@pytest.mark.parametrize("name,build", INSTANCES, ids=[n for n, _ in INSTANCES])
def test_exact_and_float_agree(name, build):
    p = build()
    e = solve_lp(p, EXACT)
    f = solve_lp(p, FLOAT())
    assert e.status is f.status is Status.OPTIMAL
    assert abs(float(e.value) - f.value) < 1e-6
    assert check_certificate(p, e)
    assert check_certificate(p, f)


@pytest.mark.parametrize("r", [3, 5, 7, 9])
def test_cold_exact_path_matches_crossover(r):
    p = assemble_main(r)
    assert solve_lp(p, crossover=False).value == solve_lp(p).value


@pytest.mark.parametrize("r", [3, 5, 9])
def test_pricing_rules_agree(r):
    p = assemble_main(r)
    ref = solve_lp(p, FLOAT()).value
    bland = solve_lp(p, FLOAT(), rule="bland")
    assert bland.bland_switch == 0
    assert abs(bland.value - ref) < 1e-9
    eager = solve_lp(p, FLOAT(), degeneracy_limit=1)
    assert abs(eager.value - ref) < 1e-9
    assert solve_lp(p, rule="bland", crossover=False).value == solve_lp(p).value


def test_iteration_budget():
    s = solve_lp(assemble_main(9), FLOAT(), max_iterations=3)
    assert s.status is Status.BUDGET_EXCEEDED


def test_certificate_detects_tampering():
    p = assemble_main(5)
    s = solve_lp(p)
    assert check_certificate(p, s)
    bad = LPSolution(s.status, s.value, [x + 1 if j == 0 else x for j, x in enumerate(s.primal)],
                     s.dual, mode=s.mode)
    chk = check_certificate(p, bad)
    assert not chk and chk.violations
    wrong_dual = LPSolution(s.status, s.value, s.primal, [y * 2 for y in s.dual], mode=s.mode)
    assert not check_certificate(p, wrong_dual)
    assert not check_certificate(p, LPSolution(Status.INFEASIBLE))


def test_tight_set_and_json(schema):
    p = assemble_main(3)
    s = solve_lp(p)
    assert "var:4:lower" in s.tight_set
    assert any(t.startswith("row:") for t in s.tight_set)
    data = s.to_json(certificate=True)
    schema("lp_solution", data)
    assert data["value"] == {"decimal": "2.320000000000", "exact": "58/25"}
    schema("lp_solution", solve_lp(p, FLOAT()).to_json())
    schema("lp_solution", solve_lp(INFEASIBLE).to_json())


def test_oracle_on_window_lp():
    p = assemble_main(3)
    assert vertex_enumeration_oracle(p) == solve_lp(p, EXACT).value


def test_oracle_toys():
    assert vertex_enumeration_oracle(ONE_VAR) == 1
    assert vertex_enumeration_oracle(INFEASIBLE) is None
    with pytest.raises(SizeLimitError):
        vertex_enumeration_oracle(assemble_main(5))


def test_oracle_on_random_tiny_lps():
    rng = random.Random(2024)
    statuses = set()
    for _ in range(10):
        p = random_lp(rng)
        s = solve_lp(p, EXACT)
        o = vertex_enumeration_oracle(p)
        statuses.add(s.status)
        if o is None:
            assert s.status is Status.INFEASIBLE
        else:
            assert s.status is Status.OPTIMAL and s.value == o
            assert check_certificate(p, s)
    assert Status.OPTIMAL in statuses


def test_random_lps_float_vs_exact():
    rng = random.Random(99)
    for _ in range(60):
        p = random_lp(rng)
        e, f = solve_lp(p, EXACT), solve_lp(p, FLOAT())
        assert e.status is f.status
        if e.optimal:
            assert abs(float(e.value) - f.value) < 1e-6
            assert check_certificate(p, f)


def test_scipy_cross_check():
    scipy_optimize = pytest.importorskip("scipy.optimize")
    import numpy as np

    for p in (assemble_main(13), assemble_isolated(interior_caps=False)):
        A = np.array([[float(a) for a in row] for row in p.matrix])
        hi = np.array([float(v) for v in p.row_upper])
        lo = np.array([float(v) for v in p.row_lower])
        bounds = [(float(p.var_lower[j]), None if p.upper(j) is None else float(p.upper(j)))
                  for j in range(p.num_vars)]
        res = scipy_optimize.linprog([float(c) for c in p.objective], A_ub=np.vstack([A, -A]),
                                     b_ub=np.concatenate([hi, -lo]), bounds=bounds, method="highs")
        assert res.status == 0
        assert abs(res.fun - float(solve_lp(p).value)) < 1e-6
