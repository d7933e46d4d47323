"""Exponential domination on the torus: verification, brute force and tilings.

A set ``D`` dominates when every vertex ``v`` receives ``w(D, v) >= 1``, where
``w(D, v)`` sums ``(1/2)**(dist(d, v) - 1)`` over ``d`` in ``D``. All sums are
exact: distances are bounded, so weights are scaled to integers by a common
power of two before summing.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .dyadic import ZERO, DyadicRational
from .errors import BadStepError, NoStepError, SizeLimitError
from .torus import TorusDims, Vertex, distance_table, weight

BRUTEFORCE_MAX_ORDER = 36
TILE = 13


@dataclass(frozen=True)
class CandidateSet:
    dims: TorusDims
    vertices: frozenset[Vertex]

    def __post_init__(self):
        verts = frozenset(Vertex(int(v[0]), int(v[1])) for v in self.vertices)
        for v in verts:
            if not (0 <= v.row < self.dims.m and 0 <= v.col < self.dims.n):
                raise ValueError(f"vertex {tuple(v)} outside {self.dims}")
        object.__setattr__(self, "vertices", verts)

    def __len__(self) -> int:
        return len(self.vertices)

    def sorted(self) -> list[Vertex]:
        return sorted(self.vertices)

    @property
    def density(self) -> Fraction:
        return Fraction(len(self), self.dims.order)

    def to_json(self) -> dict:
        return {"m": self.dims.m, "n": self.dims.n, "vertices": [list(v) for v in self.sorted()]}

    @classmethod
    def from_json(cls, data: dict) -> CandidateSet:
        try:
            dims = TorusDims(int(data["m"]), int(data["n"]))
            verts = [(int(r), int(c)) for r, c in data["vertices"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed candidate set: {exc}") from exc
        return cls(dims, frozenset(verts))


@dataclass
class VerificationReport:
    dominating: bool
    min_received: DyadicRational
    deficient_vertices: list[tuple[Vertex, DyadicRational]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "dominating": self.dominating,
            "min_received": str(self.min_received),
            "deficient_vertices": [
                {"vertex": list(v), "received": str(w)} for v, w in self.deficient_vertices
            ],
        }


def weight_received(D: CandidateSet, v: Vertex) -> DyadicRational:
    """Exact ``w(D, v)`` by summing individual weights."""
    total = ZERO
    for d in D.vertices:
        total = total + weight(D.dims, d, v)
    return total


def _scaled_weights(dims: TorusDims) -> tuple[np.ndarray, int]:
    """Integer matrix ``W`` and exponent ``e`` with ``weight(u, v) = W[u, v] / 2**e``."""
    d = distance_table(dims)
    dmax = int(d.max())
    if dmax <= 62:
        W = np.left_shift(np.int64(1), (dmax - d).astype(np.int64))
    else:
        W = np.vectorize(lambda k: 1 << int(k), otypes=[object])(dmax - d)
    return W, dmax - 1


def verify(D: CandidateSet) -> VerificationReport:
    """Check ``w(D, v) >= 1`` for every vertex, exactly."""
    dims = D.dims
    W, e = _scaled_weights(dims)
    rows = [dims.index(v) for v in D.vertices]
    received = W[rows].sum(axis=0) if rows else np.zeros(dims.order, dtype=W.dtype)
    need = 1 << e
    deficient = []
    for k, v in enumerate(dims.vertices()):
        if received[k] < need:
            deficient.append((v, DyadicRational(int(received[k]), e)))
    return VerificationReport(
        dominating=not deficient,
        min_received=DyadicRational(int(min(received)), e),
        deficient_vertices=deficient,
    )


@dataclass
class BruteForceResult:
    dims: TorusDims
    gamma: int | None
    witness: CandidateSet | None
    nodes: dict[int, int]
    seconds: float

    @property
    def found(self) -> bool:
        return self.gamma is not None

    def to_json(self) -> dict:
        return {
            "dims": str(self.dims),
            "gamma": self.gamma,
            "status": "FOUND" if self.found else "NOT_FOUND",
            "witness": self.witness.to_json() if self.witness else None,
            "nodes": {str(k): v for k, v in self.nodes.items()},
            "seconds": round(self.seconds, 6),
        }


def min_expdom_bruteforce(dims: TorusDims, size_cap: int | None = None, force: bool = False) -> BruteForceResult:
    """Smallest dominating set with at most ``size_cap`` vertices (default: all).

    Vertex ``(0, 0)`` is always in the searched sets, which loses nothing since
    translations are automorphisms. The witness is the lexicographically least
    dominating set of the minimum size containing the origin.
    """
    if dims.order > BRUTEFORCE_MAX_ORDER and not force:
        raise SizeLimitError(
            f"brute force limited to m*n <= {BRUTEFORCE_MAX_ORDER}, got {dims.order}",
            dims=str(dims), limit=BRUTEFORCE_MAX_ORDER,
        )
    cap = dims.order if size_cap is None else min(size_cap, dims.order)
    W, e = _scaled_weights(dims)
    if W.dtype == object:
        raise SizeLimitError(f"torus {dims} too large for the integer search kernel", dims=str(dims))
    W = np.ascontiguousarray(W, dtype=np.int64)
    need = 1 << e
    verts = dims.vertices()
    nodes: dict[int, int] = {}
    start = time.perf_counter()
    for s in range(1, cap + 1):
        subset, count = kernels.search_dominating(W, need, s, 0)
        nodes[s] = int(count)
        if subset is not None:
            witness = CandidateSet(dims, frozenset(verts[i] for i in subset))
            return BruteForceResult(dims, s, witness, nodes, time.perf_counter() - start)
    return BruteForceResult(dims, None, None, nodes, time.perf_counter() - start)


def diagonal_tiling(step: int, a: int = 1, b: int = 1) -> CandidateSet:
    """Vertices ``(i, step*i mod 13)`` of a 13 x 13 block, repeated ``a`` x ``b`` times."""
    if not 1 <= step <= TILE - 1:
        raise BadStepError(f"step must lie in [1, {TILE - 1}], got {step}", step=step)
    if a < 1 or b < 1:
        raise ValueError("tiling repeats must be positive")
    dims = TorusDims(TILE * a, TILE * b)
    verts = {
        (i + TILE * p, (step * i) % TILE + TILE * q)
        for i in range(TILE)
        for p in range(a)
        for q in range(b)
    }
    return CandidateSet(dims, frozenset(verts))


def find_tiling_steps() -> list[int]:
    """Steps whose single 13 x 13 tile dominates ``C_13 x C_13``."""
    steps = [s for s in range(1, TILE) if verify(diagonal_tiling(s)).dominating]
    if not steps:
        raise NoStepError("no diagonal step dominates the 13 x 13 torus")
    return steps
