"""Assembly of the window linear programs.

For an r x r window centred on a dominating vertex, variable ``x_s`` is the
weight the cell of window vertex ``v_s`` delivers to ``v_s`` itself; it reaches
``v_i`` scaled by ``(1/2)**dist(v_s, v_i)``. The program is

    min  c.x   s.t.  1 <= A x <= b,   lower <= x (<= upper)

with ``c`` the interior row sums of ``A``. The centre variable is bounded
below by 2, the weight the dominating vertex gives itself, and interior rows
are capped by ``1 + w(centre, v_i) + eps_i`` so the centre's contribution can
be removed without undercutting 1.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .dyadic import DyadicRational
from .torus import (
    TorusDims,
    Vertex,
    Window,
    distance,
    interior_indices,
    local_coords,
    row_epsilon,
)

FORMAT = "expdom-lp/1"
BOUNDARY_ROW_CAP = 18
BOUNDARY_VAR_CAP = 4
CENTER_SELF_WEIGHT = 2
ALLOWED_VALUES = (0, 2)


@dataclass(frozen=True)
class ModelMode:
    """``asymptotic``: Manhattan distances inside the block, no tie-set slack.
    ``finite``: torus distances on ``dims`` plus a per-row tie-set bound."""

    kind: str = "asymptotic"
    dims: TorusDims | None = None

    def __post_init__(self):
        if self.kind not in ("asymptotic", "finite"):
            raise ValueError(f"unknown mode {self.kind!r}")
        if self.kind == "finite" and self.dims is None:
            raise ValueError("finite mode needs torus dimensions")

    @property
    def finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self):
        return f"finite:{self.dims}" if self.finite else "asymptotic"

    @classmethod
    def parse(cls, text: str) -> ModelMode:
        if text == "asymptotic":
            return ASYMPTOTIC
        if text.startswith("finite:"):
            return FINITE(TorusDims.parse(text.split(":", 1)[1]))
        raise ValueError(f"unknown mode {text!r}")


ASYMPTOTIC = ModelMode()


def FINITE(dims: TorusDims) -> ModelMode:
    return ModelMode("finite", dims)


@dataclass(frozen=True)
class LPInstance:
    """``min c.x`` subject to ``row_lower <= A x <= row_upper`` and variable bounds.

    Entries are exact (``DyadicRational``, ``Fraction`` or ``int``). ``None`` in
    an upper-bound vector means unbounded. Variables in ``integer_marks`` may
    only take values in ``allowed_values``.
    """

    objective: tuple
    matrix: tuple
    row_lower: tuple
    row_upper: tuple
    var_lower: tuple
    var_upper: tuple | None = None
    integer_marks: frozenset[int] = frozenset()
    allowed_values: tuple = ALLOWED_VALUES
    name: str = "lp"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = len(self.objective)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("matrix width does not match objective length")
        m = len(self.matrix)
        if len(self.row_lower) != m or len(self.row_upper) != m:
            raise ValueError("row bound length mismatch")
        if len(self.var_lower) != n or (self.var_upper is not None and len(self.var_upper) != n):
            raise ValueError("variable bound length mismatch")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def num_rows(self) -> int:
        return len(self.matrix)

    def upper(self, j: int):
        return None if self.var_upper is None else self.var_upper[j]

    def relaxed(self) -> LPInstance:
        """Drop integrality; marked variables keep the hull of their allowed values."""
        if not self.integer_marks:
            return self
        lo = list(self.var_lower)
        hi = list(self.var_upper) if self.var_upper is not None else [None] * self.num_vars
        vmin = min(self.allowed_values, key=_frac)
        vmax = max(self.allowed_values, key=_frac)
        for j in self.integer_marks:
            lo[j] = max(_frac(lo[j]), _frac(vmin))
            hi[j] = _frac(vmax) if hi[j] is None else min(_frac(hi[j]), _frac(vmax))
        return LPInstance(
            self.objective, self.matrix, self.row_lower, self.row_upper,
            tuple(lo), tuple(hi), frozenset(), self.allowed_values,
            self.name + "-relaxed", dict(self.meta),
        )

    def to_json(self) -> dict:
        return {
            "format": FORMAT,
            "name": self.name,
            "meta": self.meta,
            "num_vars": self.num_vars,
            "objective": [format_exact(v) for v in self.objective],
            "matrix": [[format_exact(v) for v in row] for row in self.matrix],
            "row_lower": [format_exact(v) for v in self.row_lower],
            "row_upper": [format_exact(v) for v in self.row_upper],
            "var_lower": [format_exact(v) for v in self.var_lower],
            "var_upper": None if self.var_upper is None else [format_exact(v) for v in self.var_upper],
            "integer_marks": sorted(self.integer_marks) or None,
            "allowed_values": [format_exact(v) for v in self.allowed_values],
        }

    @classmethod
    def from_json(cls, data: dict) -> LPInstance:
        if data.get("format") != FORMAT:
            raise ValueError(f"unsupported problem format {data.get('format')!r}")
        vec = lambda xs: tuple(parse_exact(x) for x in xs)  # noqa: E731
        inst = cls(
            objective=vec(data["objective"]),
            matrix=tuple(vec(row) for row in data["matrix"]),
            row_lower=vec(data["row_lower"]),
            row_upper=vec(data["row_upper"]),
            var_lower=vec(data["var_lower"]),
            var_upper=None if data.get("var_upper") is None else vec(data["var_upper"]),
            integer_marks=frozenset(data.get("integer_marks") or ()),
            allowed_values=vec(data.get("allowed_values") or ALLOWED_VALUES),
            name=data.get("name", "lp"),
            meta=data.get("meta") or {},
        )
        if inst.num_vars != data["num_vars"]:
            raise ValueError("num_vars does not match objective length")
        return inst

    def fingerprint(self) -> str:
        payload = json.dumps(self.to_json() | {"meta": None}, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _frac(v) -> Fraction:
    return v.to_fraction() if isinstance(v, DyadicRational) else Fraction(v)


def format_exact(value) -> str | None:
    """``"p/2^q"`` for dyadic values, ``"p/q"`` otherwise; ``None`` passes through."""
    if value is None:
        return None
    if isinstance(value, DyadicRational):
        return str(value)
    frac = Fraction(value)
    den = frac.denominator
    if den & (den - 1) == 0:
        return str(DyadicRational(frac.numerator, den.bit_length() - 1))
    return f"{frac.numerator}/{den}"


def parse_exact(text):
    """Inverse of :func:`format_exact`. Dyadic literals become ``DyadicRational``."""
    if text is None:
        return None
    if not isinstance(text, str):
        raise ValueError(f"exact values are strings, got {text!r}")
    if "^" in text or "/" not in text:
        return DyadicRational.parse(text)
    return Fraction(text)


def model_window(r: int, mode: ModelMode = ASYMPTOTIC) -> Window:
    """Window centred at the origin; in asymptotic mode on a torus large enough
    that no distance inside the block wraps."""
    dims = mode.dims if mode.finite else TorusDims(2 * r, 2 * r)
    return Window(dims, Vertex(0, 0), r)


def window_distances(w: Window, mode: ModelMode = ASYMPTOTIC) -> np.ndarray:
    if mode.finite:
        if mode.dims != w.dims:
            raise ValueError("finite mode dims differ from the window's torus")
        verts = w.vertex_order
        return np.array([[distance(w.dims, u, v) for v in verts] for u in verts])
    pos = np.array(local_coords(w.r))
    return np.abs(pos[:, None, :] - pos[None, :, :]).sum(axis=2)


def build_matrix(w: Window, mode: ModelMode = ASYMPTOTIC) -> tuple:
    d = window_distances(w, mode)
    halves = {k: DyadicRational.power_of_half(k) for k in np.unique(d).tolist()}
    return tuple(tuple(halves[int(x)] for x in row) for row in d)


def build_objective(w: Window, mode: ModelMode = ASYMPTOTIC, matrix: tuple | None = None) -> tuple:
    """Interior row sums of the matrix: ``c_s = sum_{i interior} A[i][s]``."""
    A = matrix if matrix is not None else build_matrix(w, mode)
    inner = interior_indices(w.r)
    return tuple(sum((A[i][s] for i in inner), DyadicRational(0)) for s in range(w.size))


def build_row_caps(w: Window, mode: ModelMode = ASYMPTOTIC, interior_caps: bool = True) -> tuple:
    """``1 + (1/2)**(dist(v_i, centre) - 1) + eps_i`` on interior rows, 18 elsewhere."""
    d = window_distances(w, mode)
    eps = row_epsilon(w) if mode.finite else DyadicRational(0)
    inner = set(interior_indices(w.r)) if interior_caps else set()
    ctr = w.center_index
    caps = []
    for i in range(w.size):
        if i in inner:
            caps.append(1 + DyadicRational.power_of_half(int(d[i, ctr]) - 1) + eps)
        else:
            caps.append(DyadicRational(BOUNDARY_ROW_CAP))
    return tuple(caps)


def build_var_caps(w: Window) -> tuple:
    """0 on interior variables, 4 on boundary variables."""
    inner = set(interior_indices(w.r))
    return tuple(DyadicRational(0 if i in inner else BOUNDARY_VAR_CAP) for i in range(w.size))


def build_var_lower(w: Window) -> tuple:
    """Zero except the centre, which carries the dominating vertex's self-weight 2."""
    lo = [DyadicRational(0)] * w.size
    lo[w.center_index] = DyadicRational(CENTER_SELF_WEIGHT)
    return tuple(lo)


def assemble_main(r: int, mode: ModelMode = ASYMPTOTIC, interior_caps: bool = True) -> LPInstance:
    w = model_window(r, mode)
    A = build_matrix(w, mode)
    return LPInstance(
        objective=build_objective(w, mode, A),
        matrix=A,
        row_lower=tuple(DyadicRational(1) for _ in range(w.size)),
        row_upper=build_row_caps(w, mode, interior_caps),
        var_lower=build_var_lower(w),
        name="main",
        meta={"r": r, "mode": str(mode), "interior_caps": interior_caps,
              "interior_size": len(interior_indices(r))},
    )


def assemble_isolated(mode: ModelMode = ASYMPTOTIC, interior_caps: bool = True, r: int = 9) -> LPInstance:
    """Window LP plus variable caps: 0 inside (no other dominator), 4 on the boundary.

    The centre keeps cap 2, since the isolated vertex itself sits there.
    """
    base = assemble_main(r, mode, interior_caps)
    w = model_window(r, mode)
    caps = list(build_var_caps(w))
    caps[w.center_index] = DyadicRational(CENTER_SELF_WEIGHT)
    return LPInstance(
        base.objective, base.matrix, base.row_lower, base.row_upper, base.var_lower,
        var_upper=tuple(caps), name="isolated", meta=base.meta,
    )


def assemble_milp(mode: ModelMode = ASYMPTOTIC, interior_caps: bool = True, r: int = 9) -> LPInstance:
    """Window LP where interior variables take values in {0, 2}."""
    base = assemble_main(r, mode, interior_caps)
    return LPInstance(
        base.objective, base.matrix, base.row_lower, base.row_upper, base.var_lower,
        integer_marks=frozenset(interior_indices(r)), name="milp", meta=base.meta,
    )


ASSEMBLERS = {
    "main": lambda r, mode, caps: assemble_main(r, mode, caps),
    "isolated": lambda r, mode, caps: assemble_isolated(mode, caps, r),
    "milp": lambda r, mode, caps: assemble_milp(mode, caps, r),
}


def interior_mask(r: int) -> Sequence[bool]:
    inner = set(interior_indices(r))
    return [i in inner for i in range(r * r)]
