"""Hot mod-p kernels for the modular resultant/gcd engine.

Everything here works on int64 arrays with a 31-bit prime modulus, so all
intermediate products fit in int64.  Two interchangeable backends:

* numba: @njit scalar loops (default when numba imports cleanly);
* numpy: vectorized generic-path fallback, always available.

Selection: ORBITCERT_KERNEL = "numba" | "numpy"; unset picks numba when
present.  `BACKEND` records the choice.  benchmarks/bench_kernels.py
compares the two on the real workload shapes.

The numpy resultant kernel follows the generic degree sequence and flags
points whose degree pattern deviates (leading coefficient hit 0 mod p);
the driver recomputes flagged points exactly in Python.  The numba kernel
handles every point exactly by itself and flags nothing.
"""

from __future__ import annotations

import os

import numpy as np


def _pick_backend() -> str:
    req = os.environ.get("ORBITCERT_KERNEL", "").strip().lower()
    if req not in ("", "numba", "numpy"):
        raise RuntimeError(f"ORBITCERT_KERNEL must be 'numba' or 'numpy', got {req!r}")
    if req == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if req == "numba":
            raise RuntimeError("ORBITCERT_KERNEL=numba but numba is not importable")
        return "numpy"
    return "numba"


BACKEND = _pick_backend()

I64 = np.int64


# ---------------------------------------------------------------------------
# shared pure-python reference pieces (also used for exceptional-point fixup)
# ---------------------------------------------------------------------------


def res_formal_python(P, Q, a, b, p):
    """det of the formal-degree-(a, b) Sylvester matrix of P, Q mod p.

    P, Q are int sequences (ascending, length a+1 / b+1, reduced mod p);
    top entries may be zero (degree drop at a specialization point).
    Collapse identities:
      both tops zero               -> det = 0 (zero leading column)
      deg P drops to da            -> (-1)^(b(a-da)) lc(Q)^(a-da) det_{da,b}
      deg Q drops to db            -> lc(P)^(b-db) det_{a,db}
    then the textbook Euclidean resultant on the true degrees.
    """
    P = [x % p for x in P]
    Q = [x % p for x in Q]
    da = a
    while da >= 0 and P[da] == 0:
        da -= 1
    db = b
    while db >= 0 and Q[db] == 0:
        db -= 1
    if da < 0 or db < 0:
        return 0
    sign = 1
    mult = 1
    if da < a and db < b:
        return 0
    if da < a:
        mult = pow(Q[b], a - da, p)
        if (b * (a - da)) % 2 == 1:
            sign = -sign
        a = da
    elif db < b:
        mult = pow(P[a], b - db, p)
        b = db
    P = P[: a + 1]
    Q = Q[: b + 1]
    r = 1
    while True:
        if b == 0:
            r = r * pow(Q[0], a, p) % p
            break
        if a < b:
            P, Q, a, b = Q, P, b, a
            if (a * b) % 2 == 1:
                r = p - r
        inv = pow(Q[b], p - 2, p)
        R = list(P)
        for k in range(a, b - 1, -1):
            c = R[k] * inv % p
            if c:
                for i in range(b + 1):
                    R[k - b + i] = (R[k - b + i] - c * Q[i]) % p
        dR = b - 1
        while dR >= 0 and R[dR] == 0:
            dR -= 1
        if dR < 0:
            return 0
        r = r * pow(Q[b], a - dR, p) % p
        if (a * b) % 2 == 1:
            r = p - r
        P, a = Q, b
        Q, b = R[: dR + 1], dR
    if sign == -1:
        r = (p - r) % p
    return r * mult % p


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------


def _powmod_vec(base, e, p):
    """Vector base**e mod p by square and multiply (int64-safe)."""
    out = np.ones_like(base)
    b = base % p
    while e > 0:
        if e & 1:
            out = (out * b) % p
        b = (b * b) % p
        e >>= 1
    return out


def eval_rows_mod_np(C, xs, p):
    """E[i, k] = sum_j C[i, j] xs[k]^j mod p, by Horner over j."""
    C = np.asarray(C, dtype=I64)
    xs = np.asarray(xs, dtype=I64)
    E = np.repeat(C[:, -1:], xs.shape[0], axis=1) % p
    for j in range(C.shape[1] - 2, -1, -1):
        E = (E * xs + C[:, j : j + 1]) % p
    return E


def resultants_mod_np(EP, EQ, p):
    """Per-point resultants for formal degrees (rows-1); generic vectorized
    path, deviating points flagged in `bad` for exact recomputation."""
    EP = np.asarray(EP, dtype=I64)
    EQ = np.asarray(EQ, dtype=I64)
    a = EP.shape[0] - 1
    b = EQ.shape[0] - 1
    npts = EP.shape[1]
    bad = (EP[a] % p == 0) | (EQ[b] % p == 0)
    num = np.ones(npts, dtype=I64)
    neg = np.zeros(npts, dtype=I64)  # parity of accumulated sign flips
    den = np.ones(npts, dtype=I64)
    P, Q = EP % p, EQ % p
    da, db = a, b
    if da < db:
        P, Q, da, db = Q, P, db, da
        if (da * db) % 2 == 1:
            neg += 1
    while db > 0:
        lcQ = Q[db]
        bad |= lcQ == 0
        safe_lcQ = np.where(lcQ == 0, 1, lcQ)
        passes = da - db + 1
        R = P.copy()
        for k in range(da, db - 1, -1):
            c = R[k].copy()
            R = (R * safe_lcQ) % p
            R[k - db : k + 1] = (R[k - db : k + 1] - c * Q) % p
        # R = lcQ^passes * (P mod Q); generic new degree db-1
        dR = db - 1
        if dR < 0:
            break
        bad |= R[dR] == 0
        num = (num * _powmod_vec(safe_lcQ, da - dR, p)) % p
        if (da * db) % 2 == 1:
            neg += 1
        den = (den * _powmod_vec(safe_lcQ, passes * db, p)) % p
        P, da = Q, db
        Q, db = R[: dR + 1], dR
    # deg Q == 0 now: Res(P, c) = c^deg(P)
    cq = np.where(Q[0] == 0, 1, Q[0])
    bad |= Q[0] == 0
    num = (num * _powmod_vec(cq, da, p)) % p
    vals = (num * _powmod_vec(den, p - 2, p)) % p
    vals = np.where(neg % 2 == 1, (p - vals) % p, vals)
    vals = np.where(bad, 0, vals)
    return vals, bad


def newton_interp_mod_np(vals, invs, p):
    """Interpolate at nodes 0..D: divided differences then expansion."""
    v = np.array(vals, dtype=I64) % p
    D = v.shape[0] - 1
    for j in range(1, D + 1):
        v[j:] = ((v[j:] - v[j - 1 : D]) * invs[j]) % p
    c = np.zeros(D + 1, dtype=I64)
    c[0] = v[D]
    for i in range(D - 1, -1, -1):
        # c <- c*(x - i) + dd_i
        shifted = np.empty_like(c)
        shifted[0] = 0
        shifted[1:] = c[:-1]
        c = (shifted - i * c) % p
        c[0] = (c[0] + v[i]) % p
    return c


def gcd_mod_np(f, g, p):
    """Monic gcd mod p of two coefficient arrays (ascending)."""
    f = np.asarray(f, dtype=I64) % p
    g = np.asarray(g, dtype=I64) % p

    def deg(v):
        nz = np.nonzero(v)[0]
        return int(nz[-1]) if nz.size else -1

    df, dg = deg(f), deg(g)
    if df < dg:
        f, g, df, dg = g, f, dg, df
    while dg >= 0:
        inv = pow(int(g[dg]), p - 2, p)
        gm = (g[: dg + 1] * inv) % p
        r = f[: df + 1].copy()
        for k in range(df, dg - 1, -1):
            c = int(r[k])
            if c:
                r[k - dg : k + 1] = (r[k - dg : k + 1] - c * gm) % p
        dr = deg(r)
        f, df = g[: dg + 1], dg
        g, dg = r[: dr + 1] if dr >= 0 else r[:0], dr
    inv = pow(int(f[df]), p - 2, p)
    return (f[: df + 1] * inv) % p


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if BACKEND == "numba":
    from numba import njit

    @njit(cache=True)
    def _powmod(b, e, p):
        r = I64(1)
        b = b % p
        while e > 0:
            if e & 1:
                r = (r * b) % p
            b = (b * b) % p
            e >>= 1
        return r

    @njit(cache=True)
    def eval_rows_mod_nb(C, xs, p):
        nr, nc = C.shape
        npts = xs.shape[0]
        E = np.empty((nr, npts), dtype=I64)
        for i in range(nr):
            for k in range(npts):
                acc = I64(0)
                x = xs[k]
                for j in range(nc - 1, -1, -1):
                    acc = (acc * x + C[i, j]) % p
                E[i, k] = acc
        return E

    @njit(cache=True)
    def _res_one_nb(P, Q, a, b, p):
        da = a
        while da >= 0 and P[da] == 0:
            da -= 1
        db = b
        while db >= 0 and Q[db] == 0:
            db -= 1
        if da < 0 or db < 0:
            return I64(0)
        sign = 1
        mult = I64(1)
        if da < a and db < b:
            return I64(0)
        if da < a:
            mult = _powmod(Q[b], a - da, p)
            if (b * (a - da)) % 2 == 1:
                sign = -sign
            a = da
        elif db < b:
            mult = _powmod(P[a], b - db, p)
            b = db
        F = P[: a + 1].copy()
        G = Q[: b + 1].copy()
        r = I64(1)
        while True:
            if b == 0:
                r = r * _powmod(G[0], a, p) % p
                break
            if a < b:
                F, G = G, F
                a, b = b, a
                if (a * b) % 2 == 1:
                    r = p - r
            inv = _powmod(G[b], p - 2, p)
            R = F.copy()
            for k in range(a, b - 1, -1):
                c = R[k] * inv % p
                if c != 0:
                    for i in range(b + 1):
                        R[k - b + i] = (R[k - b + i] - c * G[i]) % p
            dR = b - 1
            while dR >= 0 and R[dR] == 0:
                dR -= 1
            if dR < 0:
                return I64(0)
            r = r * _powmod(G[b], a - dR, p) % p
            if (a * b) % 2 == 1:
                r = p - r
            F = G
            a = b
            G = R[: dR + 1]
            b = dR
        if sign == -1:
            r = (p - r) % p
        return r * mult % p

    @njit(cache=True)
    def resultants_mod_nb(EP, EQ, p):
        a = EP.shape[0] - 1
        b = EQ.shape[0] - 1
        npts = EP.shape[1]
        vals = np.empty(npts, dtype=I64)
        bad = np.zeros(npts, dtype=np.bool_)
        P = np.empty(a + 1, dtype=I64)
        Q = np.empty(b + 1, dtype=I64)
        for k in range(npts):
            for i in range(a + 1):
                P[i] = EP[i, k] % p
            for i in range(b + 1):
                Q[i] = EQ[i, k] % p
            vals[k] = _res_one_nb(P, Q, a, b, p)
        return vals, bad

    @njit(cache=True)
    def newton_interp_mod_nb(vals, invs, p):
        D = vals.shape[0] - 1
        v = vals.copy()
        for i in range(D + 1):
            v[i] = v[i] % p
        for j in range(1, D + 1):
            for i in range(D, j - 1, -1):
                v[i] = ((v[i] - v[i - 1]) * invs[j]) % p
        c = np.zeros(D + 1, dtype=I64)
        c[0] = v[D]
        for i in range(D - 1, -1, -1):
            for t in range(D, 0, -1):
                c[t] = (c[t - 1] - i * c[t]) % p
            c[0] = (v[i] - i * c[0]) % p
        return c

    @njit(cache=True)
    def gcd_mod_nb(fin, gin, p):
        f = fin.copy() % p
        g = gin.copy() % p
        df = f.shape[0] - 1
        while df >= 0 and f[df] == 0:
            df -= 1
        dg = g.shape[0] - 1
        while dg >= 0 and g[dg] == 0:
            dg -= 1
        if df < dg:
            f, g = g, f
            df, dg = dg, df
        while dg >= 0:
            inv = _powmod(g[dg], p - 2, p)
            for k in range(df, dg - 1, -1):
                c = f[k] * inv % p
                if c != 0:
                    for i in range(dg + 1):
                        f[k - dg + i] = (f[k - dg + i] - c * g[i]) % p
            dr = dg - 1
            while dr >= 0 and f[dr] == 0:
                dr -= 1
            tmp = f
            f = g
            g = tmp
            df = dg
            # g now holds the remainder's storage; truncate logically via dr
            dg2 = dr
            gg = np.empty(dg2 + 1 if dg2 >= 0 else 0, dtype=I64)
            for i in range(dg2 + 1):
                gg[i] = g[i]
            g = gg
            dg = dg2
        inv = _powmod(f[df], p - 2, p)
        out = np.empty(df + 1, dtype=I64)
        for i in range(df + 1):
            out[i] = f[i] * inv % p
        return out

    eval_rows_mod = eval_rows_mod_nb
    resultants_mod = resultants_mod_nb
    newton_interp_mod = newton_interp_mod_nb
    gcd_mod = gcd_mod_nb
else:
    eval_rows_mod = eval_rows_mod_np
    resultants_mod = resultants_mod_np
    newton_interp_mod = newton_interp_mod_np
    gcd_mod = gcd_mod_np
