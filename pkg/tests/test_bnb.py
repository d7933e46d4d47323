import random
from dataclasses import replace
from fractions import Fraction

import pytest

from expdom.lpmodel import LPInstance, assemble_isolated, assemble_main, assemble_milp
from expdom.solver import EXACT, FLOAT, BranchBudget, Status, solve_lp, solve_milp
from oracles import exhaustive_milp


def marked(p, marks):
    return replace(p, integer_marks=frozenset(marks))


def frac(v):
    return v.to_fraction() if hasattr(v, "to_fraction") else Fraction(v)


def lp_value(p):
    """LP value with the given variables pinned; None when infeasible."""
    def solve_fixed(fixes):
        lo = [frac(v) for v in p.var_lower]
        hi = [None if v is None else frac(v) for v in (p.var_upper or [None] * p.num_vars)]
        for j, v in fixes.items():
            if v < lo[j] or (hi[j] is not None and v > hi[j]):
                return None
            lo[j] = hi[j] = Fraction(v)
        s = solve_lp(replace(p, var_lower=tuple(lo), var_upper=tuple(hi), integer_marks=frozenset()))
        return s.value if s.optimal else None
    return solve_fixed


@pytest.mark.parametrize("marks", [[12], [6, 12], [6, 7, 8], [6, 12, 18, 16]])
def test_matches_exhaustive(marks):
    p = marked(assemble_main(5), marks)
    s = solve_milp(p)
    assert s.status is Status.OPTIMAL
    assert s.value == exhaustive_milp(p, lp_value(p))
    assert s.lower_bound == s.value
    assert all(s.primal[j] in (0, 2) for j in marks)
    assert solve_lp(p.relaxed()).value <= s.value


def test_random_tiny_milps():
    rng = random.Random(5)
    seen = set()
    for _ in range(25):
        n = rng.randint(2, 4)
        rows = [[Fraction(rng.randint(-3, 4), 2) for _ in range(n)] for _ in range(rng.randint(1, 3))]
        lo = [Fraction(rng.randint(-4, 4), 2) for _ in rows]
        hi = [a + rng.randint(0, 6) for a in lo]
        p = LPInstance(tuple(Fraction(rng.randint(-4, 4)) for _ in range(n)), tuple(map(tuple, rows)),
                       tuple(lo), tuple(hi), (0,) * n, (3,) * n,
                       integer_marks=frozenset(rng.sample(range(n), rng.randint(1, n))))
        s = solve_milp(p)
        want = exhaustive_milp(p, lp_value(p))
        seen.add(s.status)
        if want is None:
            assert s.status is Status.INFEASIBLE
        else:
            assert s.status is Status.OPTIMAL and s.value == want
            f = solve_milp(p, FLOAT())
            assert f.status is Status.OPTIMAL and abs(f.value - float(want)) < 1e-6
    assert seen == {Status.OPTIMAL, Status.INFEASIBLE}


def test_infeasible():
    p = LPInstance((1,), ((1,),), (1,), (None,), (0,), (Fraction(3, 2),), integer_marks=frozenset({0}))
    s = solve_milp(p)
    assert s.status is Status.INFEASIBLE and s.nodes_explored == 3
    assert solve_milp(replace(p, var_upper=None)).value == 2


def test_budget_reports_bound():
    p = marked(assemble_main(5), [6, 7, 8, 12])
    relax = solve_lp(p.relaxed()).value
    s = solve_milp(p, budget=BranchBudget(max_nodes=1))
    assert s.status is Status.BUDGET_EXCEEDED
    assert s.nodes_explored == 1
    assert s.lower_bound == relax
    s = solve_milp(p, budget=BranchBudget(max_time=0.0))
    assert s.status is Status.BUDGET_EXCEEDED


def test_window_milp():
    p = assemble_milp()
    for mode in (EXACT, FLOAT()):
        s = solve_milp(p, mode)
        assert s.status is Status.INFEASIBLE
        assert s.nodes_explored < 1000
    q = assemble_milp(interior_caps=False)
    f = solve_milp(q, FLOAT())
    assert f.status is Status.OPTIMAL
    assert abs(f.value - float(solve_lp(assemble_isolated(interior_caps=False)).value)) < 1e-6
    assert f.value >= float(solve_lp(q.relaxed()).value) - 1e-9
    assert all(abs(f.primal[j]) < 1e-9 or abs(f.primal[j] - 2) < 1e-9 for j in q.integer_marks)
