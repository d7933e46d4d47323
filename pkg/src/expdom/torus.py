"""Geometry of the torus grid C_m x C_n.

Vertices are ``(row, col)`` pairs reduced modulo ``(m, n)``. A window is the
r x r block centred at a vertex, enumerated row-major; that order fixes the
variable indices of every linear program built on top of it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .dyadic import ZERO, DyadicRational


class Vertex(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class TorusDims:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 3 or self.n < 3:
            raise ValueError(f"torus needs m, n >= 3, got {self.m}x{self.n}")

    @classmethod
    def parse(cls, text: str) -> TorusDims:
        """Parse ``"MxN"``."""
        try:
            m, n = text.lower().split("x")
            return cls(int(m), int(n))
        except ValueError as exc:
            raise ValueError(f"bad dimensions {text!r}, expected MxN") from exc

    @property
    def order(self) -> int:
        return self.m * self.n

    def vertex(self, row: int, col: int) -> Vertex:
        return Vertex(row % self.m, col % self.n)

    def vertices(self) -> list[Vertex]:
        return [Vertex(i, j) for i in range(self.m) for j in range(self.n)]

    def index(self, v: Vertex) -> int:
        return v.row * self.n + v.col

    def __str__(self):
        return f"{self.m}x{self.n}"


def _cyc(delta: int, length: int) -> int:
    delta = abs(delta) % length
    return min(delta, length - delta)


def distance(dims: TorusDims, u: Vertex, v: Vertex) -> int:
    return _cyc(u.row - v.row, dims.m) + _cyc(u.col - v.col, dims.n)


def weight(dims: TorusDims, u: Vertex, v: Vertex) -> DyadicRational:
    """Weight ``(1/2)**(dist - 1)`` that ``u`` assigns to ``v``."""
    return DyadicRational.power_of_half(distance(dims, u, v) - 1)


def distance_table(dims: TorusDims) -> np.ndarray:
    """All-pairs distances, indexed by ``dims.index``."""
    rows = np.arange(dims.m)
    cols = np.arange(dims.n)
    dr = np.abs(rows[:, None] - rows[None, :])
    dr = np.minimum(dr, dims.m - dr)
    dc = np.abs(cols[:, None] - cols[None, :])
    dc = np.minimum(dc, dims.n - dc)
    # d[(i,j),(k,l)] = dr[i,k] + dc[j,l]
    d = dr[:, None, :, None] + dc[None, :, None, :]
    return d.reshape(dims.order, dims.order)


def total_weight(dims: TorusDims, u: Vertex) -> DyadicRational:
    """Exact sum of the weights ``u`` assigns to every vertex.

    Summed term by term over all vertices, grouped by distance: ``count[k]``
    vertices each receive ``(1/2)**(k - 1)``.
    """
    dr = np.array([_cyc(u.row - i, dims.m) for i in range(dims.m)])
    dc = np.array([_cyc(u.col - j, dims.n) for j in range(dims.n)])
    count = np.bincount((dr[:, None] + dc[None, :]).ravel())
    top = len(count) - 1
    scaled = sum(int(c) << (top - k) for k, c in enumerate(count))
    return DyadicRational(scaled, top - 1)


@dataclass(frozen=True)
class Window:
    dims: TorusDims
    center: Vertex
    r: int

    def __post_init__(self):
        if self.r < 3 or self.r % 2 == 0:
            raise ValueError(f"window size must be odd and >= 3, got {self.r}")
        if self.r > min(self.dims.m, self.dims.n):
            raise ValueError(f"window {self.r}x{self.r} does not embed in {self.dims}")
        object.__setattr__(self, "center", self.dims.vertex(*self.center))

    @property
    def size(self) -> int:
        return self.r * self.r

    @property
    def center_index(self) -> int:
        return (self.size - 1) // 2

    @cached_property
    def vertex_order(self) -> tuple[Vertex, ...]:
        h = self.r // 2
        c = self.center
        return tuple(
            self.dims.vertex(c.row + di, c.col + dj)
            for di in range(-h, h + 1)
            for dj in range(-h, h + 1)
        )


def window_vertices(w: Window) -> list[Vertex]:
    return list(w.vertex_order)


def local_coords(r: int) -> list[tuple[int, int]]:
    """Row-major (row, col) positions inside an r x r block."""
    return [(i, j) for i in range(r) for j in range(r)]


def interior_indices(r: int) -> list[int]:
    return [k for k, (i, j) in enumerate(local_coords(r)) if 0 < i < r - 1 and 0 < j < r - 1]


def interior(w: Window) -> set[int]:
    return set(interior_indices(w.r))


@dataclass(frozen=True)
class Partition:
    """Cells ``S_i`` (strictly nearest window vertex) and the tie set ``gamma``."""

    window: Window
    cells: tuple[frozenset[Vertex], ...]
    gamma: frozenset[Vertex] = field(default_factory=frozenset)


def _nearest(w: Window) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For every torus vertex: index of nearest window vertex, whether unique, distance."""
    dims = w.dims
    rows = np.repeat(np.arange(dims.m), dims.n)
    cols = np.tile(np.arange(dims.n), dims.m)
    wr = np.array([v.row for v in w.vertex_order])
    wc = np.array([v.col for v in w.vertex_order])
    dr = np.abs(rows[:, None] - wr[None, :])
    dr = np.minimum(dr, dims.m - dr)
    dc = np.abs(cols[:, None] - wc[None, :])
    dc = np.minimum(dc, dims.n - dc)
    d = dr + dc
    best = d.min(axis=1)
    unique = (d == best[:, None]).sum(axis=1) == 1
    return d.argmin(axis=1), unique, best


def partition(w: Window) -> Partition:
    nearest, unique, _ = _nearest(w)
    verts = w.dims.vertices()
    members: list[list[Vertex]] = [[] for _ in range(w.size)]
    gamma = []
    for k, v in enumerate(verts):
        if unique[k]:
            members[nearest[k]].append(v)
        else:
            gamma.append(v)
    return Partition(w, tuple(frozenset(s) for s in members), frozenset(gamma))


def gamma_distance(w: Window, part: Partition | None = None) -> int | None:
    """Exact set distance between the tie set and the window (None when empty)."""
    part = part or partition(w)
    if not part.gamma:
        return None
    return min(distance(w.dims, g, u) for g in part.gamma for u in w.vertex_order)


def row_epsilon(w: Window, part: Partition | None = None) -> DyadicRational:
    """Per-row bound ``(m+n-1) * (1/2)**(dist(gamma, window) - 1)`` on the tie-set weight.

    The count ``m+n-1`` is replaced by ``|gamma|`` if the tie set is ever larger,
    so the value stays a true bound.
    """
    part = part or partition(w)
    d = gamma_distance(w, part)
    if d is None:
        return ZERO
    count = max(w.dims.m + w.dims.n - 1, len(part.gamma))
    return count * DyadicRational.power_of_half(d - 1)


def epsilon_bound(w: Window) -> DyadicRational:
    """Bound ``r^2 (m+n-1) (1/2)**(dist(gamma, window) - 1)`` on the total tie-set weight."""
    return w.size * row_epsilon(w)
