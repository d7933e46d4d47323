"""Independent reference implementations used only by the tests.

Nothing here imports the package's algorithms; each function recomputes its
answer by the most direct method available.
"""

from collections import deque
from fractions import Fraction
from itertools import combinations, product


def bfs_distances(m, n, source):
    """Shortest-path lengths on the explicit torus adjacency structure."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        a, b = queue.popleft()
        for nb in (((a + 1) % m, b), ((a - 1) % m, b), (a, (b + 1) % n), (a, (b - 1) % n)):
            if nb not in dist:
                dist[nb] = dist[(a, b)] + 1
                queue.append(nb)
    return dist


def cyc(delta, length):
    delta = abs(delta) % length
    return min(delta, length - delta)


def torus_dist(m, n, u, v):
    return cyc(u[0] - v[0], m) + cyc(u[1] - v[1], n)


def received(m, n, D, v):
    return sum((Fraction(2, 2 ** torus_dist(m, n, d, v)) for d in D), Fraction(0))


def dominates(m, n, D):
    return all(received(m, n, D, (a, b)) >= 1 for a in range(m) for b in range(n))


def brute_gamma(m, n, cap=None):
    """Smallest dominating set size over all subsets (no symmetry reduction)."""
    verts = [(a, b) for a in range(m) for b in range(n)]
    for s in range(1, (cap or len(verts)) + 1):
        for D in combinations(verts, s):
            if dominates(m, n, D):
                return s, D
    return None, None


def window_tie_set(m, n, r, center=(0, 0)):
    """Vertices with no unique nearest window vertex, and the set distance to the window."""
    h = r // 2
    win = [((center[0] + i) % m, (center[1] + j) % n) for i in range(-h, h + 1) for j in range(-h, h + 1)]
    gamma = []
    for a in range(m):
        for b in range(n):
            ds = [torus_dist(m, n, (a, b), w) for w in win]
            if ds.count(min(ds)) > 1:
                gamma.append((a, b))
    if not gamma:
        return gamma, None
    return gamma, min(torus_dist(m, n, g, w) for g in gamma for w in win)


def exhaustive_milp(p, solve_fixed):
    """Minimum over every assignment of the marked variables from the allowed set;
    ``solve_fixed(fixes) -> value or None`` solves the LP on the rest."""
    marks = sorted(p.integer_marks)
    best = None
    for vals in product(p.allowed_values, repeat=len(marks)):
        v = solve_fixed(dict(zip(marks, vals)))
        if v is not None and (best is None or v < best):
            best = v
    return best
