# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: tableau exchange pivots and the dominating-subset search.

Semantics match ``expdom._kernels_py`` exactly; that module is the fallback
when this extension is not built.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def exchange_float(double[:, ::1] T, Py_ssize_t r, Py_ssize_t q):
    """Exchange pivot on a condensed tableau (nonbasic columns only)."""
    cdef Py_ssize_t rows = T.shape[0], cols = T.shape[1]
    cdef Py_ssize_t i, j, k, nnz = 0
    cdef double piv = T[r, q], f
    cdef Py_ssize_t[::1] nz = np.empty(cols, dtype=np.intp)
    for j in range(cols):
        if j != q and T[r, j] != 0.0:
            T[r, j] /= piv
            nz[nnz] = j
            nnz += 1
    for i in range(rows):
        if i == r:
            continue
        f = T[i, q]
        if f == 0.0:
            continue
        for k in range(nnz):
            j = nz[k]
            T[i, j] -= f * T[r, j]
        T[i, q] = -f / piv
    T[r, q] = 1.0 / piv


def exchange_object(object[:, :] T, Py_ssize_t r, Py_ssize_t q):
    """Exchange pivot for exact scalars stored as Python objects."""
    cdef Py_ssize_t rows = T.shape[0], cols = T.shape[1]
    cdef Py_ssize_t i, j, k, nnz
    cdef object piv = T[r, q], f, v
    cdef list nz = []
    cdef list prow = []
    for j in range(cols):
        if j != q:
            v = T[r, j]
            if v != 0:
                v = v / piv
                T[r, j] = v
                nz.append(j)
                prow.append(v)
    nnz = len(nz)
    for i in range(rows):
        if i == r:
            continue
        f = T[i, q]
        if f == 0:
            continue
        for k in range(nnz):
            j = <Py_ssize_t>nz[k]
            T[i, j] = T[i, j] - f * prow[k]
        T[i, q] = -f / piv
    T[r, q] = 1 / piv


def search_dominating(long long[:, ::1] W, long long need, int size, int first):
    """Lexicographically least ``size``-subset containing ``first`` whose rows of
    ``W`` sum to at least ``need`` in every column.

    Returns ``(subset or None, nodes_visited)``. ``W[u, v]`` is the integer
    weight u gives v; candidates after ``first`` are drawn from indices > first.
    """
    cdef Py_ssize_t n = W.shape[0]
    cdef long long maxw = 0
    cdef Py_ssize_t u, v, depth
    for u in range(n):
        for v in range(n):
            if W[u, v] > maxw:
                maxw = W[u, v]
    cdef long long[::1] recv = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t[::1] chosen = np.zeros(max(size, 1), dtype=np.intp)
    cdef long long nodes = 0
    cdef long long rem
    cdef bint ok, dead
    if size < 1 or first < 0 or first >= n:
        return None, 0
    for v in range(n):
        recv[v] = W[first, v]
    chosen[0] = first
    depth = 1
    # chosen[depth] is the next candidate to try at this depth
    if size == 1:
        nodes = 1
        for v in range(n):
            if recv[v] < need:
                return None, nodes
        return (first,), nodes
    chosen[depth] = first + 1
    while depth >= 1:
        u = chosen[depth]
        if u >= n or n - u < size - depth:
            # exhausted this depth: backtrack
            depth -= 1
            if depth == 0:
                break
            u = chosen[depth]
            for v in range(n):
                recv[v] -= W[u, v]
            chosen[depth] = u + 1
            continue
        nodes += 1
        for v in range(n):
            recv[v] += W[u, v]
        if depth == size - 1:
            ok = True
            for v in range(n):
                if recv[v] < need:
                    ok = False
                    break
            if ok:
                return tuple(chosen[k] for k in range(size)), nodes
            for v in range(n):
                recv[v] -= W[u, v]
            chosen[depth] = u + 1
            continue
        rem = size - 1 - depth
        dead = False
        for v in range(n):
            if recv[v] + rem * maxw < need:
                dead = True
                break
        if dead:
            for v in range(n):
                recv[v] -= W[u, v]
            chosen[depth] = u + 1
            continue
        depth += 1
        chosen[depth] = u + 1
    return None, nodes
