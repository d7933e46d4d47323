"""Best-first branch and bound over variables restricted to a finite value set."""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, replace
from fractions import Fraction

from .simplex import EXACT, ArithmeticMode, LPSolution, Status, solve_lp, to_fraction

INTEGRALITY_TOL = 1e-7


@dataclass(frozen=True)
class BranchBudget:
    max_nodes: int = 10**6
    max_time: float = 300.0


def _fixed(p, fixes: dict[int, object]):
    """``p`` with each fixed variable pinned, or None if a value lies outside its bounds."""
    lo = list(p.var_lower)
    hi = list(p.var_upper) if p.var_upper is not None else [None] * p.num_vars
    for j, v in fixes.items():
        if to_fraction(v) < to_fraction(lo[j]) or (hi[j] is not None and to_fraction(v) > to_fraction(hi[j])):
            return None
        lo[j] = hi[j] = v
    return replace(p, var_lower=tuple(lo), var_upper=tuple(hi))


def _distance_to_allowed(x, allowed) -> float:
    return min(abs(float(x) - float(a)) for a in allowed)


def _branch_var(p, x, exact: bool):
    """Marked variable farthest from the allowed set; ties go to the lowest index."""
    tol = 0.0 if exact else INTEGRALITY_TOL
    best, gap = None, tol
    for j in sorted(p.integer_marks):
        if exact and any(to_fraction(x[j]) == to_fraction(a) for a in p.allowed_values):
            continue
        g = _distance_to_allowed(x[j], p.allowed_values)
        if g > gap or (exact and best is None):
            best, gap = j, g
    return best


def solve_milp(p, mode: ArithmeticMode = EXACT, budget: BranchBudget = BranchBudget()) -> LPSolution:
    """Minimise over ``p`` with marked variables restricted to ``p.allowed_values``.

    Nodes are expanded in order of their relaxation bound. The result reports
    ``nodes_explored`` (relaxations solved) and ``lower_bound``, the best bound
    still open when the search stopped (equal to the value at optimality).
    """
    base = p.relaxed()
    allowed = sorted(Fraction(to_fraction(a)) for a in p.allowed_values)
    start = time.monotonic()
    counter = itertools.count()
    heap: list = []
    nodes = 0
    iterations = 0
    incumbent: LPSolution | None = None

    def better(a, b) -> bool:
        if b is None:
            return True
        return a < b if mode.exact else a < b - INTEGRALITY_TOL

    def expand(fixes):
        nonlocal nodes, iterations
        q = _fixed(base, fixes)
        nodes += 1
        if q is None:
            return LPSolution(Status.INFEASIBLE, mode=mode)
        sol = solve_lp(q, mode)
        iterations += sol.iterations
        return sol

    def finish(status, bound):
        out = incumbent if incumbent is not None else LPSolution(status, mode=mode)
        out.status = status
        out.nodes_explored = nodes
        out.iterations = iterations
        out.lower_bound = bound
        out.mode = mode
        return out

    root = expand({})
    if root.status is Status.UNBOUNDED:
        return finish(Status.UNBOUNDED, None)
    if root.optimal:
        heapq.heappush(heap, (root.value, next(counter), {}, root))

    while heap:
        if nodes >= budget.max_nodes or time.monotonic() - start > budget.max_time:
            bound = heap[0][0]
            if incumbent is not None:
                bound = min(bound, incumbent.value)
            return finish(Status.BUDGET_EXCEEDED, bound)
        bound, _, fixes, sol = heapq.heappop(heap)
        if incumbent is not None and not better(bound, incumbent.value):
            continue
        j = _branch_var(p, sol.primal, mode.exact)
        if j is None:
            incumbent = sol
            continue
        for v in allowed:
            child = {**fixes, j: v if mode.exact else float(v)}
            cs = expand(child)
            if cs.optimal and (incumbent is None or better(cs.value, incumbent.value)):
                heapq.heappush(heap, (cs.value, next(counter), child, cs))

    if incumbent is None:
        return finish(Status.INFEASIBLE, None)
    return finish(Status.OPTIMAL, incumbent.value)
