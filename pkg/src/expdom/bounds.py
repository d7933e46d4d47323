"""Density lower bounds derived from the window LPs.

If every dominating vertex provably wastes ``k`` of its weight budget ``rho``,
a dominating set needs at least ``|V| / (rho - k)`` vertices. ``k`` comes from an
LP optimum: the interior rows of the window must each collect 1, and whatever
the optimum collects beyond ``|I|`` (less the tie-set allowance ``epsilon``) is
waste. Mixing vertices of two classes with wastes ``k1`` and ``k2`` in
proportions ``1 - alpha`` and ``alpha`` gives a denominator linear in ``alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import kernels
from .dyadic import DyadicRational
from .errors import AdjustmentViolation, DomainError, NonpositiveKError, SolverError
from .lpmodel import (
    ASYMPTOTIC,
    ModelMode,
    assemble_isolated,
    assemble_main,
    build_matrix,
    model_window,
    window_distances,
)
from .solver.simplex import EXACT, ArithmeticMode, LPSolution, decimal_string, solve_lp, to_fraction
from .torus import Window, epsilon_bound, interior_indices

RHO = 18
MAIN_R = 13
ISOLATED_R = 9
UPPER_DENSITY = Fraction(1, 13)


def _num(x, exact: bool):
    return to_fraction(x) if exact else float(x)


def number_json(x) -> dict:
    if isinstance(x, (Fraction, int, DyadicRational)):
        f = to_fraction(x)
        return {"decimal": decimal_string(f), "exact": f"{f.numerator}/{f.denominator}"}
    return {"decimal": repr(float(x)), "exact": None}


@dataclass
class AdjustmentProfile:
    """Per-interior-row surplus ``y_i`` over the demand 1, with its cap."""

    y: dict[int, Fraction | float]
    caps: dict[int, Fraction]
    k: Fraction | float

    def to_json(self) -> dict:
        return {
            "k": number_json(self.k),
            "rows": [
                {"index": i, "y": number_json(self.y[i]), "cap": number_json(self.caps[i])} for i in sorted(self.y)
            ],
        }


@dataclass
class BoundReport:
    kind: str
    rho: Fraction | float
    k: Fraction | float
    epsilon: Fraction | float
    alpha: Fraction | float
    denominator: Fraction | float
    density_lower_bound: Fraction | float
    provenance: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "rho": number_json(self.rho),
            "k": number_json(self.k),
            "epsilon": number_json(self.epsilon),
            "alpha": number_json(self.alpha),
            "denominator": number_json(self.denominator),
            "density_lower_bound": number_json(self.density_lower_bound),
            "provenance": self.provenance,
            "notes": self.notes,
        }

    def to_table(self) -> str:
        rows = [
            ("bound", self.kind),
            ("rho", number_json(self.rho)["decimal"]),
            ("k", number_json(self.k)["decimal"]),
            ("epsilon", number_json(self.epsilon)["decimal"]),
            ("alpha", number_json(self.alpha)["decimal"]),
            ("denominator", number_json(self.denominator)["decimal"]),
            ("density >=", f"1/{number_json(self.denominator)['decimal']}"),
        ]
        for name, info in self.provenance.get("lps", {}).items():
            rows.append((f"{name} LP", f"{info['value']['decimal']} ({info['status']}, {info['iterations']} pivots)"))
        width = max(len(a) for a, _ in rows)
        lines = [f"{a.ljust(width)}  {b}" for a, b in rows]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def density_lower_bound(rho, k):
    """``1 / (rho - k)``; requires ``0 < k < rho``."""
    if not 0 < k < rho:
        raise DomainError(f"need 0 < k < rho, got k={float(k)!r}, rho={float(rho)!r}", k=str(k), rho=str(rho))
    one = Fraction(1) if isinstance(rho - k, Fraction) else 1.0
    return one / (rho - k)


def extract_k(lp_value, interior_size: int, epsilon=0):
    """Waste per dominating vertex: ``lp_value - epsilon - interior_size``."""
    k = lp_value - epsilon - interior_size
    if not k > 0:
        raise NonpositiveKError(
            f"LP value {float(lp_value)!r} does not exceed |I| + epsilon = {float(interior_size + epsilon)!r}",
            lp_value=str(lp_value), interior_size=interior_size, epsilon=str(epsilon),
        )
    return k


def adjustment_caps(w: Window, mode: ModelMode = ASYMPTOTIC) -> dict[int, Fraction]:
    """Weight the dominating vertex at the window centre sends to each interior row."""
    d = window_distances(w, mode)
    ctr = w.center_index
    return {i: DyadicRational.power_of_half(int(d[i, ctr]) - 1).to_fraction() for i in interior_indices(w.r)}


def validate_adjustment(solution: LPSolution, w: Window, epsilon_i: Sequence | None = None,
                        mode: ModelMode = ASYMPTOTIC) -> AdjustmentProfile:
    """Surplus ``y_i = (A x)_i - eps_i - 1`` on interior rows; each must lie in
    ``[0, cap_i]`` and the profile total is the waste ``k``."""
    if not solution.optimal:
        raise SolverError(f"cannot validate a {solution.status.value} solution", status=solution.status.value)
    exact = solution.mode.exact
    tol = 0 if exact else 1e-9
    A = build_matrix(w, mode)
    inner = interior_indices(w.r)
    eps = [0] * w.size if epsilon_i is None else list(epsilon_i)
    x = [_num(v, exact) for v in solution.primal]
    caps = adjustment_caps(w, mode)
    y = {}
    zero = _num(0, exact)
    for i in inner:
        act = sum((_num(a, exact) * xs for a, xs in zip(A[i], x) if xs), zero)
        y[i] = act - _num(eps[i], exact) - 1
        if y[i] < -tol:
            raise AdjustmentViolation(f"row {i} surplus {float(y[i])!r} is negative", index=i, y=str(y[i]))
        if y[i] > caps[i] + tol:
            raise AdjustmentViolation(
                f"row {i} surplus {float(y[i])!r} exceeds cap {float(caps[i])!r}",
                index=i, y=str(y[i]), cap=str(caps[i]),
            )
    return AdjustmentProfile(y, caps, sum(y.values(), zero))


def _lp_record(p, s: LPSolution) -> dict:
    return {
        "fingerprint": p.fingerprint(),
        "name": p.name,
        "r": p.meta.get("r"),
        "mode": p.meta.get("mode"),
        "interior_caps": p.meta.get("interior_caps"),
        "status": s.status.value,
        "value": number_json(s.value) if s.value is not None else {"decimal": None, "exact": None},
        "iterations": s.iterations,
        "arithmetic": str(s.mode),
        "kernels": kernels.BACKEND,
    }


def _solve(p, arithmetic: ArithmeticMode) -> LPSolution:
    s = solve_lp(p, arithmetic)
    if not s.optimal:
        raise SolverError(f"{p.name} LP (r={p.meta.get('r')}) is {s.status.value}",
                          lp=p.name, status=s.status.value, fingerprint=p.fingerprint())
    return s


def _epsilon(r: int, mode: ModelMode, exact: bool):
    if not mode.finite:
        return _num(0, exact)
    return _num(epsilon_bound(model_window(r, mode)), exact)


def _main_parts(mode: ModelMode, arithmetic: ArithmeticMode, interior_caps: bool, r: int):
    exact = arithmetic.exact
    p = assemble_main(r, mode, interior_caps)
    s = _solve(p, arithmetic)
    w = model_window(r, mode)
    profile = validate_adjustment(s, w, None, mode)
    eps = _epsilon(r, mode, exact)
    k = extract_k(_num(s.value, exact), len(interior_indices(r)), eps)
    record = _lp_record(p, s)
    record["adjustment_total"] = number_json(profile.k)
    return k, eps, record


def _notes(rho) -> list[str]:
    return [] if rho == RHO else [f"rho = {rho} differs from the weight budget 18 the LP bound is derived for"]


def run_main_theorem(mode: ModelMode = ASYMPTOTIC, arithmetic: ArithmeticMode = EXACT,
                     interior_caps: bool = True, rho=RHO, r: int = MAIN_R) -> BoundReport:
    """Bound from the r x r window LP (13 by default): density >= 1 / (rho - k)."""
    exact = arithmetic.exact
    rho = _num(rho, exact)
    k, eps, record = _main_parts(mode, arithmetic, interior_caps, r)
    den = rho - k
    return BoundReport(
        kind="main", rho=rho, k=k, epsilon=eps, alpha=_num(0, exact), denominator=den,
        density_lower_bound=density_lower_bound(rho, k),
        provenance={"mode": str(mode), "lps": {"main": record}}, notes=_notes(rho),
    )


def _class_weights(mode, arithmetic, interior_caps, rho, r=MAIN_R):
    """Effective budgets ``rho - k`` for ordinary and isolated dominating vertices."""
    exact = arithmetic.exact
    k_main, eps_main, rec_main = _main_parts(mode, arithmetic, interior_caps, r)
    p = assemble_isolated(mode, interior_caps, ISOLATED_R)
    s = _solve(p, arithmetic)
    eps_iso = _epsilon(ISOLATED_R, mode, exact)
    k_iso = extract_k(_num(s.value, exact), len(interior_indices(ISOLATED_R)), eps_iso)
    lps = {"main": rec_main, "isolated": _lp_record(p, s)}
    return rho - k_main, rho - k_iso, k_main, k_iso, eps_main + eps_iso, lps


def run_genbound(alpha, mode: ModelMode = ASYMPTOTIC, arithmetic: ArithmeticMode = EXACT,
                 interior_caps: bool = True, rho=RHO, r: int = MAIN_R) -> BoundReport:
    """Mixed bound when a fraction ``alpha`` of dominating vertices is isolated.

    Denominator ``(1 - alpha)(rho - k_main) + alpha (rho - k_iso)``.
    """
    exact = arithmetic.exact
    alpha = _num(alpha, exact)
    if not 0 <= alpha <= 1:
        raise DomainError(f"alpha must lie in [0, 1], got {float(alpha)!r}", alpha=str(alpha))
    rho = _num(rho, exact)
    if alpha == 0:
        report = run_main_theorem(mode, arithmetic, interior_caps, rho, r)
        report.kind = "mixed"
        return report
    w_main, w_iso, k_main, k_iso, eps, lps = _class_weights(mode, arithmetic, interior_caps, rho, r)
    den = (1 - alpha) * w_main + alpha * w_iso
    if not den > 0:
        raise DomainError("mixed denominator is not positive", denominator=str(den))
    k = rho - den
    return BoundReport(
        kind="mixed", rho=rho, k=k, epsilon=eps, alpha=alpha, denominator=den,
        density_lower_bound=1 / den,
        provenance={
            "mode": str(mode), "lps": lps,
            "k_main": number_json(k_main), "k_isolated": number_json(k_iso),
            "weight_main": number_json(w_main), "weight_isolated": number_json(w_iso),
            "alpha_coefficient": number_json(w_main - w_iso),
        },
        notes=_notes(rho),
    )


def alpha_threshold(upper_density=UPPER_DENSITY, mode: ModelMode = ASYMPTOTIC,
                    arithmetic: ArithmeticMode = EXACT, interior_caps: bool = True, rho=RHO,
                    r: int = MAIN_R):
    """Largest isolated fraction compatible with a known upper density.

    Solves ``(1 - alpha)(rho - k_main) + alpha (rho - k_iso) = 1 / upper_density``.
    """
    exact = arithmetic.exact
    if not upper_density > 0:
        raise DomainError("upper density must be positive", upper_density=str(upper_density))
    target = 1 / _num(upper_density, exact)
    w_main, w_iso, *_ = _class_weights(mode, arithmetic, interior_caps, _num(rho, exact), r)
    if w_main == w_iso:
        raise DomainError("class weights coincide; the mixed denominator does not depend on alpha")
    alpha = (w_main - target) / (w_main - w_iso)
    if not 0 <= alpha <= 1:
        raise DomainError(f"no alpha in [0, 1] reaches denominator {float(target)!r}", alpha=str(alpha))
    return alpha


@dataclass(frozen=True)
class ReferenceBound:
    name: str
    density: Fraction | float
    kind: str
    basis: str


def reference_bounds(lp_report: BoundReport | None = None) -> list[ReferenceBound]:
    """Known density bounds for the torus, weakest lower bound first."""
    rep = lp_report if lp_report is not None else run_main_theorem()
    return [
        ReferenceBound("naive", Fraction(1, 18), "lower", "each vertex sends total weight at most 18"),
        ReferenceBound("self-weight", Fraction(1, 17), "lower", "a dominator's self-weight 2 exceeds its need 1"),
        ReferenceBound("anderson", Fraction(8, 127), "lower", "each dominator wastes at least 2.125"),
        ReferenceBound("lp", rep.density_lower_bound, "lower", "13 x 13 window LP waste k"),
        ReferenceBound("upper", UPPER_DENSITY, "upper", "diagonal 13 x 13 tiling"),
    ]
