"""Modular evaluation/interpolation engines for the heavy eliminations.

Two jobs that are far too large for direct fraction-free arithmetic in this
setting are done per 31-bit prime and reconstructed by CRT:

* bivariate resultants (the degree-thousands eliminations): the prime count
  is fixed in advance by the rigorous Sylvester-permanent bound
  ||Res||_1 <= ||P||_1^deg(Q) * ||Q||_1^deg(P), so the reconstruction is a
  proof, not a heuristic;

* integer polynomial gcd: primes are added until the lift stabilizes, then
  the candidate is *verified* by exact trial division into both inputs,
  which together with the modular degree bound is a complete correctness
  argument.

The per-prime inner loops live in _kernels (numba or numpy backend).
"""

from __future__ import annotations

import numpy as np
from gmpy2 import invert, mpq, mpz, next_prime

from . import _kernels
from .upoly import UPoly, _zdiv_exact, _zprim


_PRIMES: list = []


def primes_31bit(n: int):
    """First n primes above 2^30 (deterministic, ascending); squares fit
    int64 and every prime exceeds any interpolation node count we use."""
    while len(_PRIMES) < n:
        p = _PRIMES[-1] if _PRIMES else mpz(2**30)
        _PRIMES.append(next_prime(p))
    return _PRIMES[:n]


def crt_symmetric(rows, primes):
    """Combine per-prime residue arrays into symmetric-range integers.

    rows[i] is an int64 array of residues mod primes[i]; returns a list of
    python ints in (-M/2, M/2], M = prod(primes).
    """
    ncoef = len(rows[0])
    X = [mpz(0)] * ncoef
    M = mpz(1)
    for row, p in zip(rows, primes):
        p = mpz(p)
        invM = invert(M % p, p)
        for i in range(ncoef):
            t = (mpz(int(row[i])) - X[i]) * invM % p
            if t:
                X[i] += M * t
        M *= p
    half = M >> 1
    return [int(x - M) if x > half else int(x) for x in X], M


def _one_norm_bits(grid) -> int:
    s = mpz(0)
    for row in grid:
        for c in row:
            s += abs(mpz(c))
    return s.bit_length()


def resultant_bivariate(P, Q, elim: str, keep: str) -> UPoly:
    """Res(P, Q; elim) for bivariate integer-coefficient MPoly inputs,
    returned as a UPoly in `keep`.  Deterministic modular computation with
    an a-priori prime bound (see module docstring).

    Rational inputs are cleared first; the exact rational scale is restored
    on the result (Res(s*P, t*Q) = s^deg(Q) t^deg(P) Res(P, Q)).
    """
    Pz, sp = P.clear_denominators()
    Qz, sq = Q.clear_denominators()
    a = Pz.degree_in(elim)
    b = Qz.degree_in(elim)
    if a <= 0 or b <= 0:
        from .mpoly import DegreeZeroInVariable

        raise DegreeZeroInVariable(f"need positive degree in {elim}")
    gP = [[int(c) for c in row] for row in Pz.dense_grid(elim, keep)]
    gQ = [[int(c) for c in row] for row in Qz.dense_grid(elim, keep)]
    dkP = len(gP[0]) - 1
    dkQ = len(gQ[0]) - 1
    D = a * dkQ + b * dkP
    bits = b * _one_norm_bits(gP) + a * _one_norm_bits(gQ) + 2

    nprimes = (bits + 1) // 30 + 1
    primes = primes_31bit(nprimes)
    prod_bits = sum(int(p).bit_length() for p in primes)
    while prod_bits <= bits + 1:
        primes = primes_31bit(len(primes) + 1)
        prod_bits += int(primes[-1]).bit_length()

    xs = np.arange(D + 1, dtype=np.int64)
    rows = []
    for p in primes:
        pi = int(p)
        CP = np.array([[c % pi for c in row] for row in gP], dtype=np.int64)
        CQ = np.array([[c % pi for c in row] for row in gQ], dtype=np.int64)
        EP = _kernels.eval_rows_mod(CP, xs, pi)
        EQ = _kernels.eval_rows_mod(CQ, xs, pi)
        vals, bad = _kernels.resultants_mod(EP, EQ, pi)
        if bad.any():
            for k in np.nonzero(bad)[0]:
                vals[k] = _kernels.res_formal_python(
                    [int(x) for x in EP[:, k]], [int(x) for x in EQ[:, k]], a, b, pi
                )
        invs = np.zeros(D + 1, dtype=np.int64)
        for j in range(1, D + 1):
            invs[j] = pow(j, pi - 2, pi)
        rows.append(_kernels.newton_interp_mod(vals, invs, pi))

    coeffs, _ = crt_symmetric(rows, primes)
    scale = sp**b * sq**a
    return UPoly([mpq(c) * scale for c in coeffs])


def gcd_int_poly_modular(f, g):
    """Primitive gcd over ZZ of two integer coefficient lists (ascending),
    by modular images + CRT, verified by exact trial division."""
    f = [mpz(c) for c in f]
    g = [mpz(c) for c in g]
    assert f and g and f[-1] != 0 and g[-1] != 0
    from gmpy2 import gcd as zgcd

    f = _zprim(list(f))
    g = _zprim(list(g))
    gl = zgcd(f[-1], g[-1])

    best_deg = None
    X = []
    M = mpz(1)
    lifted_prev = None
    stable = 0
    pi_idx = 0
    while True:
        pi_idx += 1
        p = int(primes_31bit(pi_idx)[-1])
        if f[-1] % p == 0 or g[-1] % p == 0:
            continue
        fa = np.array([c % p for c in f], dtype=np.int64)
        ga = np.array([c % p for c in g], dtype=np.int64)
        gp = _kernels.gcd_mod(fa, ga, p)
        d = len(gp) - 1
        if d == 0:
            return [mpz(1)]
        if best_deg is None or d < best_deg:
            # every prior prime was unlucky (modular gcd degree can only
            # overshoot): restart the lift at the lower degree
            best_deg = d
            X = [mpz(0)] * (d + 1)
            M = mpz(1)
            lifted_prev, stable = None, 0
        elif d > best_deg:
            continue  # unlucky prime
        row = (gp * (int(gl % p))) % p
        pz = mpz(p)
        invM = invert(M % pz, pz)
        for i in range(d + 1):
            t = (mpz(int(row[i])) - X[i]) * invM % pz
            if t:
                X[i] += M * t
        M *= pz
        half = M >> 1
        lifted = [x - M if x > half else x for x in X]
        if lifted == lifted_prev:
            stable += 1
        else:
            stable = 0
            lifted_prev = lifted
        if stable >= 1 and lifted[-1] != 0:
            cand = _zprim([mpz(c) for c in lifted])
            if cand[-1] < 0:
                cand = [-c for c in cand]
            if _zdiv_exact(f, cand) is not None and _zdiv_exact(g, cand) is not None:
                return cand
