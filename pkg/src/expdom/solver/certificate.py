"""Independent check of an optimality certificate.

Duals ``y`` price the rows and ``d = c - A^T y`` prices the variable bounds. The
check recomputes ``d`` from ``y`` rather than trusting the solver's reduced
costs, then verifies primal feasibility, dual sign conditions, complementary
slackness and equality of the primal and dual objectives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .simplex import LPSolution, to_fraction


@dataclass
class CertificateCheck:
    ok: bool
    violations: list[str] = field(default_factory=list)
    primal_value: Fraction | float | None = None
    dual_value: Fraction | float | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_certificate(p, s: LPSolution, tol: float | None = None) -> CertificateCheck:
    """Verify ``s`` is optimal for ``p``. Exact solutions are checked exactly;
    float solutions with tolerance ``tol`` (default ``1e-7``)."""
    if not s.optimal:
        return CertificateCheck(False, [f"status {s.status.value} carries no certificate"])
    exact = s.mode.exact
    if exact:
        conv, tol, zero = to_fraction, 0, Fraction(0)
    else:
        conv, tol, zero = float, 1e-7 if tol is None else tol, 0.0

    def c(v):
        return None if v is None else conv(v)

    A = [[c(a) for a in row] for row in p.matrix]
    obj = [c(v) for v in p.objective]
    x = [c(v) for v in s.primal]
    y = [c(v) for v in s.dual]
    n, m = p.num_vars, p.num_rows
    bad: list[str] = []
    if len(x) != n or len(y) != m:
        return CertificateCheck(False, ["certificate vectors have the wrong length"])

    act = [sum((A[i][j] * x[j] for j in range(n)), zero) for i in range(m)]
    for i in range(m):
        lo, hi = c(p.row_lower[i]), c(p.row_upper[i])
        if lo is not None and act[i] < lo - tol:
            bad.append(f"row {i} below its lower bound")
        if hi is not None and act[i] > hi + tol:
            bad.append(f"row {i} above its upper bound")
    for j in range(n):
        lo, hi = c(p.var_lower[j]), c(p.upper(j))
        if lo is not None and x[j] < lo - tol:
            bad.append(f"variable {j} below its lower bound")
        if hi is not None and x[j] > hi + tol:
            bad.append(f"variable {j} above its upper bound")

    d = [obj[j] - sum((A[i][j] * y[i] for i in range(m)), zero) for j in range(n)]
    dual_value = zero

    def price(kind, idx, mult, value, lo, hi):
        nonlocal dual_value
        if mult > tol:
            if lo is None:
                bad.append(f"{kind} {idx} has a positive dual but no lower bound")
                return
            if abs(value - lo) > tol:
                bad.append(f"{kind} {idx} has a positive dual but is not at its lower bound")
            dual_value += mult * lo
        elif mult < -tol:
            if hi is None:
                bad.append(f"{kind} {idx} has a negative dual but no upper bound")
                return
            if abs(value - hi) > tol:
                bad.append(f"{kind} {idx} has a negative dual but is not at its upper bound")
            dual_value += mult * hi
        elif not exact:
            # near-zero multipliers still contribute their value
            dual_value += mult * value

    for i in range(m):
        price("row", i, y[i], act[i], c(p.row_lower[i]), c(p.row_upper[i]))
    for j in range(n):
        price("variable", j, d[j], x[j], c(p.var_lower[j]), c(p.upper(j)))

    primal_value = sum((obj[j] * x[j] for j in range(n)), zero)
    scale = max(1.0, abs(float(primal_value)))
    if abs(primal_value - dual_value) > tol * scale:
        bad.append(f"dual objective {float(dual_value)!r} differs from primal {float(primal_value)!r}")
    if s.value is not None and abs(conv(s.value) - primal_value) > tol * scale:
        bad.append("reported value differs from c.x")
    return CertificateCheck(not bad, bad, primal_value, dual_value)
