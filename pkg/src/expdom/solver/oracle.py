"""Brute-force LP oracle: enumerate basic solutions of a tiny instance.

A vertex of ``{x : lo <= A x <= hi, lo' <= x <= hi'}`` is fixed by choosing which
variables sit at a bound and which rows are tight (and on which side), with the
tight rows determining the remaining variables. Every choice is screened in
floating point; the cheapest survivors are then re-solved in exact rationals
and only exactly feasible points count.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from ..errors import SizeLimitError
from .simplex import to_fraction

MAX_VARS = 9
_SCREEN = 1e-7


def _solve_exact(M: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gauss-Jordan elimination over the rationals; None if singular."""
    n = len(rhs)
    aug = [row[:] + [b] for row, b in zip(M, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [v / p for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]


def _choices(lo, hi) -> list:
    """Exact bound values a constraint can be tight at, one per distinct hyperplane."""
    out = []
    if lo is not None:
        out.append(to_fraction(lo))
    if hi is not None and (lo is None or to_fraction(hi) != to_fraction(lo)):
        out.append(to_fraction(hi))
    return out


def _candidates(p):
    """Yield ``(float objective, active set)`` for every float-feasible basic point."""
    n, m = p.num_vars, p.num_rows
    A = np.array([[float(a) for a in row] for row in p.matrix]).reshape(m, n)
    c = np.array([float(v) for v in p.objective])
    lo_arr = np.array([-np.inf if v is None else float(v) for v in p.row_lower])
    hi_arr = np.array([np.inf if v is None else float(v) for v in p.row_upper])
    vlo_arr = np.array([-np.inf if v is None else float(v) for v in p.var_lower])
    vhi_arr = np.array([np.inf if p.upper(j) is None else float(p.upper(j)) for j in range(n)])
    var_sides = [_choices(p.var_lower[j], p.upper(j)) for j in range(n)]
    row_sides = [_choices(p.row_lower[i], p.row_upper[i]) for i in range(m)]

    for nfix in range(n + 1):
        for fixed in itertools.combinations([j for j in range(n) if var_sides[j]], nfix):
            free = [j for j in range(n) if j not in fixed]
            for rows in itertools.combinations([i for i in range(m) if row_sides[i]], n - nfix):
                if free:
                    M = A[np.ix_(rows, free)]
                    if abs(np.linalg.det(M)) < 1e-12:
                        continue
                    Minv = np.linalg.inv(M)
                row_choice = list(itertools.product(*(range(len(row_sides[i])) for i in rows)))
                rhs = np.array([[float(row_sides[i][k]) for i, k in zip(rows, ch)] for ch in row_choice],
                               dtype=float).reshape(len(row_choice), len(rows))
                for var_choice in itertools.product(*(range(len(var_sides[j])) for j in fixed)):
                    fix_vals = np.array([float(var_sides[j][k]) for j, k in zip(fixed, var_choice)], dtype=float)
                    X = np.zeros((len(row_choice), n))
                    X[:, list(fixed)] = fix_vals
                    if free:
                        base = A[np.ix_(rows, fixed)] @ fix_vals
                        X[:, free] = (rhs - base) @ Minv.T
                    act = X @ A.T
                    ok = ((act >= lo_arr - _SCREEN) & (act <= hi_arr + _SCREEN)).all(axis=1)
                    ok &= ((X >= vlo_arr - _SCREEN) & (X <= vhi_arr + _SCREEN)).all(axis=1)
                    for k in np.flatnonzero(ok):
                        active = ([(j, var_sides[j][s]) for j, s in zip(fixed, var_choice)],
                                  [(i, row_sides[i][s]) for i, s in zip(rows, row_choice[k])])
                        yield float(c @ X[k]), active


def _exact_point(p, active) -> list[Fraction] | None:
    at_bound, tight = active
    n = p.num_vars
    A = [[to_fraction(a) for a in row] for row in p.matrix]
    x: list[Fraction | None] = [None] * n
    for j, v in at_bound:
        x[j] = v
    fixed = [j for j, _ in at_bound]
    free = [j for j in range(n) if x[j] is None]
    rhs = [b - sum((A[i][j] * x[j] for j in fixed), Fraction(0)) for i, b in tight]
    if free:
        sol = _solve_exact([[A[i][j] for j in free] for i, _ in tight], rhs)
        if sol is None:
            return None
        for j, v in zip(free, sol):
            x[j] = v
    return x


def _exactly_feasible(p, x) -> bool:
    for i, row in enumerate(p.matrix):
        act = sum((to_fraction(a) * v for a, v in zip(row, x)), Fraction(0))
        if p.row_lower[i] is not None and act < to_fraction(p.row_lower[i]):
            return False
        if p.row_upper[i] is not None and act > to_fraction(p.row_upper[i]):
            return False
    for j, v in enumerate(x):
        if p.var_lower[j] is not None and v < to_fraction(p.var_lower[j]):
            return False
        if p.upper(j) is not None and v > to_fraction(p.upper(j)):
            return False
    return True


def vertex_enumeration_oracle(p) -> Fraction | None:
    """Exact minimum of ``p`` over its vertices, or None when no vertex is feasible.

    Assumes the optimum is attained at a vertex (true whenever the LP is bounded
    and every variable has a finite bound on at least one side).
    """
    if p.num_vars > MAX_VARS:
        raise SizeLimitError(f"vertex enumeration is limited to {MAX_VARS} variables",
                             num_vars=p.num_vars, limit=MAX_VARS)
    cands = sorted(_candidates(p), key=lambda t: t[0])
    obj = [to_fraction(v) for v in p.objective]
    best = None
    for fval, active in cands:
        if best is not None and fval > float(best) + 1e-6:
            break
        x = _exact_point(p, active)
        if x is None or not _exactly_feasible(p, x):
            continue
        val = sum((ci * xi for ci, xi in zip(obj, x)), Fraction(0))
        if best is None or val < best:
            best = val
    return best
