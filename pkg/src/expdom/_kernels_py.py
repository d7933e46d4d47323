"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def _exchange(T: np.ndarray, r: int, q: int) -> None:
    piv = T[r, q]
    row = T[r].copy()
    row[q] = 0 * piv
    nzc = np.flatnonzero(row != 0)
    row[nzc] = row[nzc] / piv
    col = T[:, q].copy()
    col[r] = 0 * piv
    nzr = np.flatnonzero(col != 0)
    if len(nzr) and len(nzc):
        T[np.ix_(nzr, nzc)] -= np.outer(col[nzr], row[nzc])
    T[nzr, q] = -col[nzr] / piv
    T[r, nzc] = row[nzc]
    T[r, q] = 1 / piv


def exchange_float(T: np.ndarray, r: int, q: int) -> None:
    """Exchange pivot on a condensed tableau (nonbasic columns only)."""
    _exchange(T, r, q)


def exchange_object(T: np.ndarray, r: int, q: int) -> None:
    _exchange(T, r, q)


def search_dominating(W: np.ndarray, need: int, size: int, first: int):
    n = W.shape[0]
    if size < 1 or not 0 <= first < n:
        return None, 0
    W = [list(map(int, row)) for row in W]
    maxw = max(max(row) for row in W)
    recv = list(W[first])
    if size == 1:
        return ((first,) if min(recv) >= need else None), 1
    chosen = [first] + [0] * (size - 1)
    depth = 1
    chosen[1] = first + 1
    nodes = 0
    while depth >= 1:
        u = chosen[depth]
        if u >= n or n - u < size - depth:
            depth -= 1
            if depth == 0:
                break
            u = chosen[depth]
            recv = [a - b for a, b in zip(recv, W[u])]
            chosen[depth] = u + 1
            continue
        nodes += 1
        recv = [a + b for a, b in zip(recv, W[u])]
        if depth == size - 1:
            if min(recv) >= need:
                return tuple(chosen), nodes
        elif min(recv) + (size - 1 - depth) * maxw >= need:
            depth += 1
            chosen[depth] = u + 1
            continue
        recv = [a - b for a, b in zip(recv, W[u])]
        chosen[depth] = u + 1
    return None, nodes
