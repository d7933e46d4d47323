"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on identical inputs under both backends; results are checked
for equality before timings are reported.
"""

import argparse
import importlib
import os
import subprocess
import sys
import timeit

import numpy as np
from gmpy2 import mpq

from expdom import _kernels_py
from expdom.domination import _scaled_weights
from expdom.torus import TorusDims


def float_tableau(rows=170, cols=340, seed=0):
    rng = np.random.default_rng(seed)
    T = rng.standard_normal((rows, cols))
    T[rng.random((rows, cols)) < 0.5] = 0.0
    T[0, 0] = 1.5
    return T


def object_tableau(rows=60, cols=120, seed=1):
    rng = np.random.default_rng(seed)
    ints = rng.integers(-8, 9, size=(rows, cols))
    T = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            T[i, j] = mpq(int(ints[i, j]), 4)
    T[0, 0] = mpq(3, 2)
    return T


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    return label, best


def pivot_sequence(kernel, T, steps=8):
    T = T.copy()
    for k in range(steps):
        r, q = k % T.shape[0], k % T.shape[1]
        if T[r, q] == 0:
            T[r, q] = T[r, q] + 1
        kernel(T, r, q)
    return T


def run(repeat: int) -> int:
    try:
        compiled = importlib.import_module("expdom._kernels")
    except ImportError:
        print("compiled kernels not built; only the fallback is timed")
        compiled = None
    backends = [("python", _kernels_py)] + ([("cython", compiled)] if compiled else [])

    Tf, To = float_tableau(), object_tableau()
    W, e = _scaled_weights(TorusDims(6, 6))
    W = np.ascontiguousarray(W, dtype=np.int64)
    need = 1 << e

    results = {}
    for name, mod in backends:
        results[name] = {
            "exchange_float": pivot_sequence(mod.exchange_float, Tf),
            "exchange_object": pivot_sequence(mod.exchange_object, To),
            "search_dominating": mod.search_dominating(W, need, 4, 0),
        }
    if compiled:
        a, b = results["python"], results["cython"]
        assert np.allclose(a["exchange_float"], b["exchange_float"])
        assert (a["exchange_object"] == b["exchange_object"]).all()
        assert a["search_dominating"] == b["search_dominating"]

    rows = []
    for name, mod in backends:
        rows.append((name,) + bench("exchange_float", lambda: pivot_sequence(mod.exchange_float, Tf), repeat))
        rows.append((name,) + bench("exchange_object", lambda: pivot_sequence(mod.exchange_object, To), repeat))
        rows.append((name,) + bench("search_dominating", lambda: mod.search_dominating(W, need, 4, 0), repeat))

    print(f"{'backend':8} {'kernel':18} {'best (ms)':>10}")
    for name, label, t in rows:
        print(f"{name:8} {label:18} {t * 1e3:10.3f}")

    # end-to-end: a cold exact simplex solve in a fresh process per backend
    code = ("import time; from expdom import lpmodel, kernels; from expdom.solver import solve_lp; "
            "p = lpmodel.assemble_main(9); t = time.perf_counter(); s = solve_lp(p, crossover=False); "
            "print(kernels.BACKEND, s.iterations, round(time.perf_counter() - t, 3))")
    print(f"\n{'backend':8} {'exact r=9 solve':18} {'pivots':>6} {'seconds':>8}")
    for name, _ in backends:
        env = dict(os.environ, EXPDOM_PURE_PYTHON="1" if name == "python" else "0")
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, pivots, secs = out.stdout.split()
        print(f"{backend:8} {'':18} {pivots:>6} {secs:>8}")
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    sys.exit(run(parser.parse_args().repeat))
