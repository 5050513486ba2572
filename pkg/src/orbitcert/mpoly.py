"""Sparse multivariate polynomials over exact rationals.

Evaluation, coordinate shifts, partial derivatives, and resultant-based
variable elimination (subresultant PRS over the multivariate coefficient
ring, with a fraction-free Sylvester determinant as the independent check).
Canonical variable order is fixed per system, e.g. (m, n, r) for the
period-3 system; serialization is graded-lexicographic so cache keys are
stable.
"""

from __future__ import annotations

import hashlib
from math import comb

from gmpy2 import mpq, mpz

from .arith import ONE, ZERO
from .upoly import UPoly


class ArityMismatch(ValueError):
    """Evaluation point length differs from the variable count."""


class UnknownVariable(ValueError):
    """Named variable is not declared for this polynomial."""


class DegreeZeroInVariable(ValueError):
    """Resultant elimination needs positive degree in the variable."""


class NotUnivariate(ValueError):
    """collapse() requires dependence on at most one variable."""


def _grlex_key(expts):
    return (sum(expts), expts)


class MPoly:
    """Immutable sparse polynomial: {exponent tuple: nonzero coefficient}."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        clean = {}
        for e, c in (terms or {}).items():
            c = mpq(c)
            if c == 0:
                continue
            e = tuple(int(k) for k in e)
            if len(e) != len(self.vars):
                raise ArityMismatch("exponent tuple length != variable count")
            clean[e] = clean.get(e, ZERO) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    # -- construction ----------------------------------------------------

    @staticmethod
    def zero(variables):
        return MPoly(variables, {})

    @staticmethod
    def const(variables, c):
        return MPoly(variables, {(0,) * len(tuple(variables)): mpq(c)})

    @staticmethod
    def var(variables, name):
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariable(name)
        e = tuple(1 if v == name else 0 for v in variables)
        return MPoly(variables, {e: ONE})

    @staticmethod
    def from_terms(variables, pairs):
        """pairs: iterable of (coefficient, exponent tuple)."""
        t = {}
        for c, e in pairs:
            e = tuple(e)
            t[e] = t.get(e, ZERO) + mpq(c)
        return MPoly(variables, t)

    # -- structure ------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def num_terms(self):
        return len(self.terms)

    def degree_in(self, name) -> int:
        i = self._idx(name)
        return max((e[i] for e in self.terms), default=-1) if self.terms else -1

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _idx(self, name) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariable(name) from None

    def __eq__(self, other):
        return (
            isinstance(other, MPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MPoly({','.join(self.vars)}; {self.pretty()})"

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise ArityMismatch("mixed variable sets")

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.vars, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, ZERO) + c
        return MPoly(self.vars, t)

    def __sub__(self, other):
        return self + (-other if isinstance(other, MPoly) else MPoly.const(self.vars, -mpq(other)))

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = mpq(other)
            return MPoly(self.vars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = MPoly.const(self.vars, 1)
        base = self
        k = int(k)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- operations -------------------------------------------------------

    def eval_rat(self, point):
        """Exact value at a rational point (length must match arity)."""
        if len(point) != len(self.vars):
            raise ArityMismatch(f"need {len(self.vars)} coordinates")
        pt = [mpq(x) for x in point]
        acc = ZERO
        pows = [{} for _ in pt]

        def power(i, k):
            d = pows[i]
            if k not in d:
                d[k] = pt[i] ** k
            return d[k]

        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v *= power(i, k)
            acc += v
        return acc

    def eval_float(self, point, fc):
        if len(point) != len(self.vars):
            raise ArityMismatch(f"need {len(self.vars)} coordinates")
        pt = [fc.mpf(x) for x in point]
        acc = fc.mpf(0)
        for e, c in self.terms.items():
            v = fc.mpf(c)
            for i, k in enumerate(e):
                if k:
                    v *= pt[i] ** k
            acc += v
        return acc

    def shift(self, xi):
        """p(x1 - xi, ..., xn - xi), expanded and collected."""
        xi = mpq(xi)
        out = {}
        for e, c in self.terms.items():
            # expand prod (x_i - xi)^e_i one variable at a time
            partial = {(): c}
            for k in e:
                nxt = {}
                binoms = [comb(k, j) * (-xi) ** (k - j) for j in range(k + 1)]
                for mono, coef in partial.items():
                    for j in range(k + 1):
                        key = mono + (j,)
                        v = coef * binoms[j]
                        if v:
                            nxt[key] = nxt.get(key, ZERO) + v
                partial = nxt
            for mono, coef in partial.items():
                out[mono] = out.get(mono, ZERO) + coef
        return MPoly(self.vars, out)

    def partial(self, name):
        i = self._idx(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
            out[ne] = out.get(ne, ZERO) + c * e[i]
        return MPoly(self.vars, out)

    def subs(self, name, value):
        """Substitute an exact rational for one variable; the result lives in
        the remaining variables."""
        i = self._idx(name)
        value = mpq(value)
        rest = self.vars[:i] + self.vars[i + 1 :]
        out = {}
        pw = {0: ONE}

        def power(k):
            if k not in pw:
                pw[k] = value ** k
            return pw[k]

        for e, c in self.terms.items():
            ne = e[:i] + e[i + 1 :]
            v = c * power(e[i])
            if v:
                out[ne] = out.get(ne, ZERO) + v
        return MPoly(rest, out)

    def to_univariate(self, keep):
        """Coefficient list in ascending powers of `keep`; entries are MPoly
        in the remaining variables (the univariate-view bridge)."""
        i = self._idx(keep)
        rest = self.vars[:i] + self.vars[i + 1 :]
        d = self.degree_in(keep)
        buckets = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            ne = e[:i] + e[i + 1 :]
            buckets[e[i]][ne] = buckets[e[i]].get(ne, ZERO) + c
        return [MPoly(rest, b) for b in buckets]

    def collapse(self) -> UPoly:
        """Faithful conversion to UPoly; requires dependence on at most one
        variable."""
        used = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        if len(used) > 1:
            raise NotUnivariate(f"depends on {[self.vars[i] for i in used]}")
        if not used:
            c = self.terms.get((0,) * len(self.vars), ZERO)
            return UPoly((c,)) if c else UPoly.zero()
        i = used[0]
        d = max(e[i] for e in self.terms)
        coeffs = [ZERO] * (d + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] += c
        return UPoly(coeffs)

    @staticmethod
    def embed(p: UPoly, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        t = {}
        for k, c in enumerate(p.coeffs):
            if c:
                e = [0] * len(variables)
                e[i] = k
                t[tuple(e)] = c
        return MPoly(variables, t)

    def rename(self, variables):
        """Same terms under new variable names (arity preserved)."""
        variables = tuple(variables)
        if len(variables) != len(self.vars):
            raise ArityMismatch("rename must preserve arity")
        return MPoly(variables, dict(self.terms))

    def permute(self, new_order):
        """Compose with a permutation of the arguments: for variables
        (x, y, z), p.permute(("y", "z", "x")) is the polynomial p(y, z, x),
        still expressed over (x, y, z)."""
        src = [self._idx(v) for v in new_order]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(e)
            for dst_pos, src_pos in enumerate(src):
                ne[src_pos] = e[dst_pos]
            # read: exponent of new_order[k] becomes exponent of position of
            # that name in self.vars
            out_e = tuple(ne)
            out[out_e] = out.get(out_e, ZERO) + c
        return MPoly(self.vars, out)

    # -- serialization ----------------------------------------------------

    def pretty(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = " ".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e)
                if k
            )
            bits.append(f"{c} {mono}".strip())
        return " + ".join(bits)

    def to_text(self) -> str:
        lines = ["mpoly " + " ".join(self.vars)]
        for e in sorted(self.terms, key=_grlex_key):
            c = self.terms[e]
            lines.append(f"{c.numerator}/{c.denominator} " + " ".join(map(str, e)))
        return "\n".join(lines)

    @staticmethod
    def from_text(s: str) -> "MPoly":
        lines = s.strip().splitlines()
        head = lines[0].split()
        if head[0] != "mpoly":
            raise ValueError("not an mpoly serialization")
        variables = tuple(head[1:])
        terms = {}
        for ln in lines[1:]:
            parts = ln.split()
            terms[tuple(int(x) for x in parts[1:])] = mpq(parts[0])
        return MPoly(variables, terms)

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()

    # -- integer form -----------------------------------------------------

    def clear_denominators(self):
        """(integer MPoly, scale) with self = scale * result, scale > 0."""
        den = mpz(1)
        from gmpy2 import gcd as zgcd, lcm as zlcm

        for c in self.terms.values():
            den = zlcm(den, c.denominator)
        terms = {e: c * den for e, c in self.terms.items()}
        cont = mpz(0)
        for c in terms.values():
            cont = zgcd(cont, mpz(c))
            if cont == 1:
                break
        if cont > 1:
            terms = {e: c / cont for e, c in terms.items()}
            return MPoly(self.vars, terms), mpq(cont, den)
        return MPoly(self.vars, terms), mpq(1, den)

    def dense_grid(self, row_var, col_var):
        """Dense grid g[i][j] = coefficient (as mpq) of row_var^i col_var^j;
        only valid for polynomials in exactly these two variables."""
        ri, ci = self._idx(row_var), self._idx(col_var)
        for k in range(len(self.vars)):
            if k not in (ri, ci) and any(e[k] for e in self.terms):
                raise NotUnivariate("dense_grid needs a bivariate polynomial")
        dr = self.degree_in(row_var)
        dc = self.degree_in(col_var)
        g = [[ZERO] * (dc + 1) for _ in range(dr + 1)]
        for e, c in self.terms.items():
            g[e[ri]][e[ci]] += c
        return g

    def one_norm(self):
        return sum((abs(c) for c in self.terms.values()), ZERO)


# ---------------------------------------------------------------------------
# elimination by resultants
# ---------------------------------------------------------------------------


def _mp_lead(p: MPoly):
    e = max(p.terms, key=_grlex_key)
    return e, p.terms[e]


def _mp_div_exact(a: MPoly, b: MPoly):
    """a / b when the division is exact; None otherwise."""
    if b.is_zero:
        raise ZeroDivisionError
    if a.is_zero:
        return a
    vars_ = a.vars
    eb, cb = _mp_lead(b)
    q = {}
    rem = dict(a.terms)
    while rem:
        ea = max(rem, key=_grlex_key)
        ca = rem[ea]
        eq = tuple(x - y for x, y in zip(ea, eb))
        if any(k < 0 for k in eq):
            return None
        cq = ca / cb
        q[eq] = q.get(eq, ZERO) + cq
        for e2, c2 in b.terms.items():
            e = tuple(x + y for x, y in zip(eq, e2))
            nv = rem.get(e, ZERO) - cq * c2
            if nv:
                rem[e] = nv
            else:
                rem.pop(e, None)
    return MPoly(vars_, q)


def _coeffs_prem(f, g, mul):
    """Pseudo-remainder on lists of MPoly coefficients (ascending in the
    eliminated variable).  Returns (remainder list, passes)."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    passes = 0
    while f and len(f) - 1 >= dg:
        d = len(f) - 1 - dg
        c = f[-1]
        f = [mul(lg, a) for a in f]
        for i, b in enumerate(g):
            f[d + i] = f[d + i] - mul(c, b)
        while f and f[-1].is_zero:
            f.pop()
        passes += 1
    return f, passes


def elim_resultant(p: MPoly, q: MPoly, name) -> MPoly:
    """Res(p, q; name): the Sylvester determinant with respect to `name`,
    a polynomial in the remaining variables.

    Subresultant PRS over the multivariate coefficient ring, fraction-free:
    all interior divisions are exact in ZZ[rest].
    """
    if p.degree_in(name) <= 0 or q.degree_in(name) <= 0:
        raise DegreeZeroInVariable(f"both arguments need positive degree in {name}")
    A = p.to_univariate(name)
    B = q.to_univariate(name)
    rest = A[0].vars
    one = MPoly.const(rest, 1)

    def mul(x, y):
        return x * y

    s = 1
    dA, dB = len(A) - 1, len(B) - 1
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
    g = one
    h = one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R, passes = _coeffs_prem(A, B, mul)
        if R and passes < delta + 1:
            extra = B[-1] ** (delta + 1 - passes)
            R = [c * extra for c in R]
        A, B = B, R
        if not B:
            return MPoly.zero(rest)
        denom = g * h ** delta
        B = [_mp_div_exact(c, denom) for c in B]
        assert all(c is not None for c in B), "subresultant division not exact"
        g = A[-1]
        if delta:
            hd = _mp_div_exact(g ** delta, h ** (delta - 1)) if delta > 1 else g
            assert hd is not None
            h = hd
        if len(B) - 1 == 0:
            dA = len(A) - 1
            val = B[0] ** dA
            if dA > 1:
                div = _mp_div_exact(val, h ** (dA - 1))
                assert div is not None
                val = div
            return val * s if s == 1 else -val


def sylvester_resultant(p: MPoly, q: MPoly, name) -> MPoly:
    """Res(p, q; name) by fraction-free Bareiss on the Sylvester matrix of
    multivariate entries.  Independent of the PRS route; used as oracle and
    for small eliminations."""
    if p.degree_in(name) <= 0 or q.degree_in(name) <= 0:
        raise DegreeZeroInVariable(f"both arguments need positive degree in {name}")
    A = p.to_univariate(name)
    B = q.to_univariate(name)
    rest = A[0].vars
    m, n = len(A) - 1, len(B) - 1
    size = m + n
    zero = MPoly.zero(rest)
    rows = []
    Ad = list(reversed(A))
    Bd = list(reversed(B))
    for i in range(n):
        rows.append([zero] * i + Ad + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + Bd + [zero] * (size - n - 1 - i))

    a = rows
    prev = MPoly.const(rest, 1)
    sign = 1
    for k in range(size):
        piv = next((r for r in range(k, size) if not a[r][k].is_zero), None)
        if piv is None:
            return zero
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                d = _mp_div_exact(num, prev)
                assert d is not None, "Bareiss division not exact"
                a[i][j] = d
            a[i][k] = zero
        prev = a[k][k]
    out = a[size - 1][size - 1]
    return out if sign == 1 else -out
