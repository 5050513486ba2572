"""Benchmark the numba and numpy kernel backends on the real workload
shapes of the heavy pipeline.

Run:  python benchmarks/bench_kernels.py [--quick]

Shapes benchmarked:
  * per-prime batched resultants at the big-elimination geometry
    (formal degrees 37/37, 3109 evaluation points),
  * Newton interpolation mod p at D = 3108,
  * one modular gcd pass at the degree-2521/1985 geometry,
  * and, for the univariate resultant crossover, Sylvester/Bareiss vs
    subresultant PRS as the degree grows.
"""

import argparse
import random
import time

import numpy as np

from orbitcert import _kernels
from orbitcert.modular import primes_31bit


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_modular_kernels(quick=False):
    p = int(primes_31bit(1)[0])
    rng = np.random.default_rng(20260808)
    npts = 800 if quick else 3109
    a = b = 37
    EP = rng.integers(0, p, size=(a + 1, npts), dtype=np.int64)
    EQ = rng.integers(0, p, size=(b + 1, npts), dtype=np.int64)
    D = npts - 1
    vals = rng.integers(0, p, size=npts, dtype=np.int64)
    invs = np.zeros(npts, dtype=np.int64)
    for j in range(1, npts):
        invs[j] = pow(j, p - 2, p)

    rows = []
    pairs = [("numpy", _kernels.resultants_mod_np, _kernels.newton_interp_mod_np,
              _kernels.gcd_mod_np)]
    if _kernels.BACKEND == "numba":
        pairs.append(("numba", _kernels.resultants_mod, _kernels.newton_interp_mod,
                      _kernels.gcd_mod))
        # trigger compilation outside the timed region
        _kernels.resultants_mod(EP[:, :8].copy(), EQ[:, :8].copy(), p)
        _kernels.newton_interp_mod(vals[:8].copy(), invs[:8].copy(), p)

    df, dg = (500, 400) if quick else (2521, 1985)
    f = rng.integers(0, p, size=df + 1, dtype=np.int64)
    g = rng.integers(0, p, size=dg + 1, dtype=np.int64)
    f[-1] = g[-1] = 1

    for name, res_fn, interp_fn, gcd_fn in pairs:
        t_res = _time(lambda: res_fn(EP, EQ, p))
        t_int = _time(lambda: interp_fn(vals.copy(), invs, p))
        if name == "numba":
            gcd_fn(f[:40].copy(), g[:30].copy(), p)
        t_gcd = _time(lambda: gcd_fn(f.copy(), g.copy(), p), repeat=1)
        rows.append((name, t_res, t_int, t_gcd))

    print(f"\nmod-p kernels (p = {p}, {npts} points, gcd at deg {df}/{dg}):")
    print(f"{'backend':>8} | {'resultants':>11} | {'interp':>9} | {'gcd':>9}")
    for name, t_res, t_int, t_gcd in rows:
        print(f"{name:>8} | {t_res*1e3:9.1f}ms | {t_int*1e3:7.1f}ms | {t_gcd*1e3:7.1f}ms")
    if len(rows) == 2:
        s = rows[0][1] / rows[1][1]
        print(f"numba speedup on the resultant batch: {s:.1f}x")

    # agreement spot check
    va, _ = _kernels.resultants_mod_np(EP, EQ, p)
    if _kernels.BACKEND == "numba":
        vb, bad = _kernels.resultants_mod(EP, EQ, p)
        agree = all(bool(x == y) for x, y, flag in zip(va, vb, bad) if not flag)
        print(f"backend agreement on unflagged points: {agree}")


def bench_resultant_crossover(quick=False):
    from orbitcert.upoly import UPoly, _res_bareiss, _zres_prs

    rng = random.Random(7)
    print("\nunivariate resultant: Sylvester/Bareiss vs subresultant PRS:")
    print(f"{'degree':>6} | {'bareiss':>10} | {'prs':>10}")
    degrees = (4, 8, 12, 16, 24) if quick else (4, 8, 12, 16, 24, 32)
    for d in degrees:
        p = UPoly([rng.randint(-99, 99) for _ in range(d)] + [rng.randint(1, 99)])
        q = UPoly([rng.randint(-99, 99) for _ in range(d)] + [rng.randint(1, 99)])
        pz, _ = p.primitive_z()
        qz, _ = q.primitive_z()
        tb = _time(lambda: _res_bareiss(p, q), repeat=1)
        tp = _time(lambda: _zres_prs(list(pz), list(qz)), repeat=1)
        print(f"{d:>6} | {tb*1e3:8.2f}ms | {tp*1e3:8.2f}ms")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    print(f"selected kernel backend: {_kernels.BACKEND}")
    bench_modular_kernels(args.quick)
    bench_resultant_crossover(args.quick)


if __name__ == "__main__":
    main()
