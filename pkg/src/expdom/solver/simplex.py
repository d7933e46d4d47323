"""Dense two-phase primal simplex with bounded variables and range rows.

Each row ``lo_i <= A_i x <= hi_i`` gets an activity column ``s_i`` with those
bounds, giving the equality system ``A x - s = 0``. Only the nonbasic columns
of the tableau are stored and the exchange kernel updates them in place.

Exact solves first run in floating point, rebuild the final basis in exact
rationals, and then continue with exact pivots until the exact optimality test
passes. When the float basis cannot be reused the exact solve starts cold.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import kernels

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpq = Fraction


class Status(str, enum.Enum):
    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"
    UNBOUNDED = "UNBOUNDED"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass(frozen=True)
class ArithmeticMode:
    kind: str = "exact"
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.kind not in ("exact", "float"):
            raise ValueError(f"unknown arithmetic {self.kind!r}")
        if self.kind == "float" and not self.tolerance > 0:
            raise ValueError("float tolerance must be positive")

    @property
    def exact(self) -> bool:
        return self.kind == "exact"

    def __str__(self):
        return "exact" if self.exact else f"float({self.tolerance:g})"


EXACT = ArithmeticMode("exact")


def FLOAT(tolerance: float = 1e-9) -> ArithmeticMode:
    return ArithmeticMode("float", tolerance)


@dataclass
class LPSolution:
    status: Status
    value: Fraction | float | None = None
    primal: list = field(default_factory=list)
    dual: list = field(default_factory=list)
    reduced_costs: list = field(default_factory=list)
    tight_set: list = field(default_factory=list)
    mode: ArithmeticMode = EXACT
    iterations: int = 0
    bland_switch: int | None = None
    nodes_explored: int = 0
    lower_bound: Fraction | float | None = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    def to_json(self, certificate: bool | None = None) -> dict:
        from ..lpmodel import format_exact

        def num(v):
            if v is None:
                return None
            if self.mode.exact:
                return {"decimal": decimal_string(v), "exact": format_exact(v)}
            return {"decimal": repr(float(v)), "exact": None}

        def vec(xs):
            if self.mode.exact:
                return [format_exact(v) for v in xs]
            return [float(v) for v in xs]

        out = {
            "status": self.status.value,
            "value": num(self.value),
            "primal": vec(self.primal),
            "dual": vec(self.dual),
            "nodes_explored": self.nodes_explored,
            "iterations": self.iterations,
            "arithmetic": str(self.mode),
        }
        if self.lower_bound is not None:
            out["lower_bound"] = num(self.lower_bound)
        if certificate is not None:
            out["certificate"] = certificate
        return out


def decimal_string(value, places: int = 12) -> str:
    """Correctly rounded decimal expansion of an exact rational."""
    frac = Fraction(value)
    scaled = frac * 10**places
    q = int(scaled)  # truncates toward zero
    rem = abs(scaled - q)
    if rem > Fraction(1, 2) or (rem == Fraction(1, 2) and q % 2):
        q += 1 if frac >= 0 else -1
    sign = "-" if q < 0 else ""
    digits = str(abs(q)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    if hasattr(x, "to_fraction"):
        return x.to_fraction()
    return Fraction(x)


_LOWER, _UPPER, _FREE, _BASIC = 0, 1, 2, 3


class _Simplex:
    """One solve on a condensed tableau.

    Variables: structural ``0..n-1``, row activities ``n..n+m-1``, then phase-1
    artificials. ``T[:m]`` holds ``B^-1 N`` for the nonbasic columns listed in
    ``self.nonbasic`` (so ``x_B = beta`` moves by ``-T[:, k]`` per unit of
    nonbasic ``k``); ``T[m]`` holds their reduced costs.
    """

    def __init__(self, p, mode: ArithmeticMode, degeneracy_limit: int, rule: str, max_iterations: int,
                 crossover: bool = True):
        self.p = p
        self.rule = rule
        self.crossover = crossover
        self.mode = mode
        self.exact = mode.exact
        self.tol = 0 if self.exact else mode.tolerance
        self.degeneracy_limit = degeneracy_limit
        self.bland = rule == "bland"
        self.bland_switch = 0 if self.bland else None
        self.max_iterations = max_iterations
        self.iterations = 0
        self.n = p.num_vars
        self.m = p.num_rows

    def num(self, x):
        if x is None:
            return None
        if self.exact:
            f = to_fraction(x)
            return _mpq(f.numerator, f.denominator)
        return float(x)

    def exchange(self, r: int, k: int) -> None:
        if self.exact:
            kernels.exchange_object(self.T, r, k)
        else:
            kernels.exchange_float(self.T, r, k)

    def value_of(self, j: int):
        st = self.status[j]
        if st == _LOWER:
            return self.lo[j]
        if st == _UPPER:
            return self.hi[j]
        if st == _FREE:
            return self.zero
        return self.beta[self.pos[j]]

    def setup(self) -> None:
        p, n, m = self.p, self.n, self.m
        self.zero = self.num(0)
        one = self.num(1)
        A = [[self.num(a) for a in row] for row in p.matrix]
        lo = [self.num(v) for v in p.var_lower] + [self.num(v) for v in p.row_lower]
        hi = [self.num(p.upper(j)) for j in range(n)] + [self.num(v) for v in p.row_upper]
        status = []
        for j in range(n):
            if lo[j] is not None:
                status.append(_LOWER)
            elif hi[j] is not None:
                status.append(_UPPER)
            else:
                status.append(_FREE)
        x0 = [lo[j] if status[j] == _LOWER else hi[j] if status[j] == _UPPER else self.zero for j in range(n)]
        act = [sum((A[i][j] * x0[j] for j in range(n) if x0[j] != 0), self.zero) for i in range(m)]

        basis, beta, arts = [], [], []
        row_status = [_BASIC] * m
        for i in range(m):
            rl, rh = lo[n + i], hi[n + i]
            if rl is not None and act[i] < rl:
                arts.append((i, 1))
                row_status[i] = _LOWER
            elif rh is not None and act[i] > rh:
                arts.append((i, -1))
                row_status[i] = _UPPER
        status += row_status
        art_of_row = {i: (k, s) for k, (i, s) in enumerate(arts)}
        nonbasic = list(range(n)) + [n + i for i, _ in arts]
        col = {j: k for k, j in enumerate(nonbasic)}
        dtype = object if self.exact else float
        T = np.empty((m + 1, len(nonbasic)), dtype=dtype)
        T[:] = self.zero
        for i in range(m):
            if i in art_of_row:
                k, s = art_of_row[i]
                sign = self.num(s)
                for j in range(n):
                    T[i, j] = A[i][j] * sign
                T[i, col[n + i]] = -sign
                basis.append(n + m + k)
                bound = lo[n + i] if s == 1 else hi[n + i]
                beta.append((bound - act[i]) * sign)
            else:
                for j in range(n):
                    T[i, j] = -A[i][j]
                basis.append(n + i)
                beta.append(act[i])
        for _ in arts:
            lo.append(self.zero)
            hi.append(None)
            status.append(_BASIC)
        self.T = T if self.exact else np.ascontiguousarray(T, dtype=float)
        self.lo, self.hi, self.status = lo, hi, status
        self.basis = basis
        self.nonbasic = nonbasic
        self.beta = np.array(beta, dtype=dtype)
        self.pos = {b: i for i, b in enumerate(basis)}
        self.num_art = len(arts)
        self.first_art = n + m
        self.one = one

    def set_cost(self, cost: list) -> None:
        """Recompute reduced costs of the nonbasic columns for a new objective."""
        m = self.m
        cb = np.array([cost[b] for b in self.basis], dtype=self.T.dtype)
        cn = np.array([cost[j] for j in self.nonbasic], dtype=self.T.dtype)
        self.T[m, :] = cn - cb.dot(self.T[:m, :]) if m else cn

    def price(self):
        d = self.T[self.m]
        tol = self.tol
        best, best_dir, best_mag, best_var = None, 0, None, None
        for k, j in enumerate(self.nonbasic):
            st = self.status[j]
            dj = d[k]
            if st == _LOWER:
                if not dj < -tol or self.hi[j] is not None and self.hi[j] == self.lo[j]:
                    continue
                direction = 1
            elif st == _UPPER:
                if not dj > tol or self.lo[j] is not None and self.hi[j] == self.lo[j]:
                    continue
                direction = -1
            else:
                if -tol <= dj <= tol:
                    continue
                direction = 1 if dj < 0 else -1
            if self.bland:
                if best_var is None or j < best_var:
                    best, best_dir, best_var = k, direction, j
                continue
            mag = abs(dj)
            if best is None or mag > best_mag:
                best, best_dir, best_mag = k, direction, mag
        return best, best_dir

    def ratio(self, k: int, direction: int):
        """Step length, leaving row (None for a bound flip) and the bound it hits."""
        tol = self.tol
        q = self.nonbasic[k]
        best, leave, hit, mag = None, None, None, None
        col = self.T[: self.m, k]
        for i in range(self.m):
            a = col[i] * direction
            b = self.basis[i]
            if a > tol:
                if self.lo[b] is None:
                    continue
                t = (self.beta[i] - self.lo[b]) / a
                side = _LOWER
            elif a < -tol:
                if self.hi[b] is None:
                    continue
                t = (self.hi[b] - self.beta[i]) / (-a)
                side = _UPPER
            else:
                continue
            if t < 0:
                t = self.zero
            if best is None or t < best - tol:
                best, leave, hit, mag = t, i, side, abs(a)
            elif t <= best + tol:
                if self.bland:
                    better = b < self.basis[leave]
                else:
                    better = abs(a) > mag
                if better:
                    best, leave, hit, mag = t, i, side, abs(a)
        if self.lo[q] is not None and self.hi[q] is not None:
            flip = self.hi[q] - self.lo[q]
            if best is None or flip <= best:
                return flip, None, None
        return best, leave, hit

    def swap(self, r: int, k: int, leaving_status: int, entering_value) -> None:
        """Make nonbasic column ``k`` basic in row ``r``."""
        q = self.nonbasic[k]
        out = self.basis[r]
        self.exchange(r, k)
        self.status[out] = leaving_status
        self.pos.pop(out)
        self.basis[r] = q
        self.pos[q] = r
        self.nonbasic[k] = out
        self.status[q] = _BASIC
        self.beta[r] = entering_value

    def run(self) -> Status:
        degenerate = 0
        while True:
            if self.iterations >= self.max_iterations:
                return Status.BUDGET_EXCEEDED
            k, direction = self.price()
            if k is None:
                return Status.OPTIMAL
            step, leave, hit = self.ratio(k, direction)
            if step is None:
                return Status.UNBOUNDED
            self.iterations += 1
            if step > self.tol:
                degenerate = 0
            else:
                degenerate += 1
                if not self.bland and degenerate >= self.degeneracy_limit:
                    self.bland = True
                    self.bland_switch = self.iterations
            q = self.nonbasic[k]
            enter_val = self.value_of(q) + direction * step
            if step != 0:
                self.beta -= self.T[: self.m, k] * (direction * step)
            if leave is None:
                self.status[q] = _UPPER if direction == 1 else _LOWER
                continue
            self.swap(leave, k, hit, enter_val)

    def drop_artificials(self) -> None:
        """After phase 1: pivot basic artificials out where possible, then delete
        the artificial columns. Artificials that cannot leave (redundant rows)
        stay basic, pinned at zero."""
        first = self.first_art
        for i in range(self.m):
            if self.basis[i] < first:
                continue
            best, mag = None, None
            for k, j in enumerate(self.nonbasic):
                if j >= first:
                    continue
                a = abs(self.T[i, k])
                if a > self.tol and (mag is None or a > mag):
                    best, mag = k, a
            if best is not None:
                self.swap(i, best, _LOWER, self.value_of(self.nonbasic[best]))
        keep = [k for k, j in enumerate(self.nonbasic) if j < first]
        self.T = self.T[:, keep].copy() if self.exact else np.ascontiguousarray(self.T[:, keep])
        self.nonbasic = [self.nonbasic[k] for k in keep]
        for b in self.basis:
            if b >= first:
                self.hi[b] = self.zero

    def warm_start(self, guide: _Simplex) -> bool:
        """Rebuild, in this solver's arithmetic, the basis a float solve finished
        on. Returns False (leaving nothing usable) when that basis still holds an
        artificial, is singular here, or is not primal feasible."""
        n, m = self.n, self.m
        if any(b >= guide.first_art for b in guide.basis):
            return False
        self.zero = self.num(0)
        self.one = self.num(1)
        self.lo = [self.num(v) for v in self.p.var_lower] + [self.num(v) for v in self.p.row_lower]
        self.hi = [self.num(self.p.upper(j)) for j in range(n)] + [self.num(v) for v in self.p.row_upper]
        T = np.empty((m + 1, n), dtype=object)
        T[:] = self.zero
        for i, row in enumerate(self.p.matrix):
            for j, a in enumerate(row):
                if a != 0:
                    T[i, j] = -self.num(a)
        self.T = T
        self.beta = np.empty(m, dtype=object)
        self.basis = [n + i for i in range(m)]
        self.nonbasic = list(range(n))
        self.pos = {n + i: i for i in range(m)}
        self.status = list(guide.status[: n + m])
        self.first_art, self.num_art = n + m, 0
        leaving = {i for i in range(m) if guide.status[n + i] != _BASIC}
        for j in (b for b in guide.basis if b < n):
            k = self.nonbasic.index(j)
            best, mag = None, 0.0
            for i in leaving:
                a = abs(float(self.T[i, k]))
                if a > mag:
                    best, mag = i, a
            if best is None:
                return False
            leaving.discard(best)
            self.swap(best, k, guide.status[self.basis[best]], self.zero)
        xn = np.array([self.value_of(j) for j in self.nonbasic], dtype=object)
        self.beta = -self.T[:m].dot(xn) if m else np.array([], dtype=object)
        for i, b in enumerate(self.basis):
            v = self.beta[i]
            if self.lo[b] is not None and v < self.lo[b] or self.hi[b] is not None and v > self.hi[b]:
                return False
        return True

    def solve(self) -> LPSolution:
        if self.exact and self.m and self.crossover:
            guide = _Simplex(self.p, FLOAT(), self.degeneracy_limit, self.rule, self.max_iterations)
            first = guide.solve()
            if first.status is Status.OPTIMAL and self.warm_start(guide):
                self.iterations = guide.iterations
                self.bland = guide.bland
                self.bland_switch = guide.bland_switch
                cost = [self.num(c) for c in self.p.objective] + [self.zero] * self.m
                self.set_cost(cost)
                return self.result(self.run())
            self.__init__(self.p, self.mode, self.degeneracy_limit, self.rule, self.max_iterations, False)
        self.setup()
        total = self.first_art + self.num_art
        if self.num_art:
            cost = [self.zero] * self.first_art + [self.one] * self.num_art
            self.set_cost(cost)
            st = self.run()
            if st is Status.BUDGET_EXCEEDED:
                return self.result(st)
            infeas = sum((self.beta[self.pos[j]] for j in range(self.first_art, total)
                          if self.status[j] == _BASIC), self.zero)
            if infeas > self.tol * max(1, self.m):
                return self.result(Status.INFEASIBLE)
            self.drop_artificials()
        cost = [self.num(c) for c in self.p.objective] + [self.zero] * (total - self.n)
        self.set_cost(cost)
        return self.result(self.run())

    def reduced_cost(self, j: int):
        if self.status[j] == _BASIC:
            return self.zero
        return self.T[self.m, self.nonbasic.index(j)]

    def result(self, status: Status) -> LPSolution:
        sol = LPSolution(status, mode=self.mode, iterations=self.iterations, bland_switch=self.bland_switch)
        if status is not Status.OPTIMAL:
            return sol
        n, m = self.n, self.m
        conv = to_fraction if self.exact else float
        sol.primal = [conv(self.value_of(j)) for j in range(n)]
        sol.dual = [conv(self.reduced_cost(n + i)) for i in range(m)]
        sol.reduced_costs = [conv(self.reduced_cost(j)) for j in range(n)]
        c = [conv(self.num(v)) for v in self.p.objective]
        sol.value = sum((ci * xi for ci, xi in zip(c, sol.primal)), conv(0))
        sol.tight_set = tight_set(self.p, sol.primal, 0 if self.exact else self.tol)
        return sol


def tight_set(p, x, tol=0) -> list[str]:
    """Labels of active row and variable bounds at ``x``."""
    out = []
    for i, row in enumerate(p.matrix):
        act = sum((to_fraction(a) * to_fraction(v) for a, v in zip(row, x)), Fraction(0)) if tol == 0 else \
            sum(float(a) * float(v) for a, v in zip(row, x))
        if p.row_lower[i] is not None and abs(act - _conv(p.row_lower[i], tol)) <= tol:
            out.append(f"row:{i}:lower")
        if p.row_upper[i] is not None and abs(act - _conv(p.row_upper[i], tol)) <= tol:
            out.append(f"row:{i}:upper")
    for j, v in enumerate(x):
        if p.var_lower[j] is not None and abs(v - _conv(p.var_lower[j], tol)) <= tol:
            out.append(f"var:{j}:lower")
        u = p.upper(j)
        if u is not None and abs(v - _conv(u, tol)) <= tol:
            out.append(f"var:{j}:upper")
    return out


def _conv(v, tol):
    return to_fraction(v) if tol == 0 else float(v)


def solve_lp(p, mode: ArithmeticMode = EXACT, *, degeneracy_limit: int = 50, rule: str = "dantzig",
             max_iterations: int = 100_000, crossover: bool = True) -> LPSolution:
    """Solve an LP instance without integrality marks.

    ``rule="dantzig"`` prices by largest reduced cost and switches permanently to
    the least-index rule after ``degeneracy_limit`` consecutive degenerate
    pivots; ``rule="bland"`` uses the least-index rule throughout.
    ``crossover=False`` makes exact solves pivot in rationals from the start.
    """
    if p.integer_marks:
        raise ValueError("instance has integrality marks; use solve_milp or p.relaxed()")
    if rule not in ("dantzig", "bland"):
        raise ValueError(f"unknown pricing rule {rule!r}")
    return _Simplex(p, mode, degeneracy_limit, rule, max_iterations, crossover).solve()
