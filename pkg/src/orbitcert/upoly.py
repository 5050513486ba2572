"""Univariate polynomials over exact rationals.

Arithmetic, GCD, Sturm sequences, real-root counting and isolation,
resultants and discriminants.  Everything here is exact; the only floating
point is the optional float evaluation helper.

Internally the heavy algorithms run on primitive integer coefficient lists
(gmpy2.mpz), scaled from the rational input by a positive constant, which
preserves signs, roots and Sturm variation counts while keeping coefficient
growth under control.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from gmpy2 import mpq, mpz, gcd as zgcd

from .arith import ZERO, ONE, FloatCtx, rat_str

_X = None  # filled at module end


class ZeroPolynomial(ValueError):
    """Operation undefined for the zero polynomial."""


class EndpointIsRoot(ValueError):
    """Interval endpoint is a root and perturbation was disabled."""


class DegreeTooLow(ValueError):
    """Discriminant needs degree >= 2."""


# ---------------------------------------------------------------------------
# integer coefficient-list toolkit (ascending order, trailing zeros stripped)
# ---------------------------------------------------------------------------


def _zstrip(v):
    while v and v[-1] == 0:
        v.pop()
    return v


def _zcontent(v):
    g = mpz(0)
    for c in v:
        if c:
            g = zgcd(g, c)
            if g == 1:
                break
    return g


def _zprim(v):
    """Divide by the positive content (sign of lc preserved)."""
    g = _zcontent(v)
    if g in (0, 1):
        return v
    return [c // g for c in v]


def _zderiv(v):
    return [i * c for i, c in enumerate(v)][1:]


def _zeval_qq(v, num, den):
    """Sign-faithful value den^deg * p(num/den) for integer num, den>0."""
    d = len(v) - 1
    acc = mpz(0)
    pw = mpz(1)
    for i in range(d, -1, -1):
        acc = acc * num + v[i] * pw
        pw *= den
    return acc


def _zprem(f, g):
    """Pseudo-remainder by repeated elimination.

    Returns (r, passes) with r = lc(g)^passes * f  mod g (up to exact
    bookkeeping); passes may be less than deg f - deg g + 1 when degrees
    drop early, so callers tracking signs must use `passes`, not the
    nominal exponent.
    """
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    passes = 0
    while f and len(f) - 1 >= dg:
        d = len(f) - 1 - dg
        c = f[-1]
        f = [lg * a for a in f]
        for i, b in enumerate(g):
            f[d + i] -= c * b
        _zstrip(f)
        passes += 1
    return f, passes


def _zmul(a, b):
    """Schoolbook product of integer coefficient lists (no rational
    normalization overhead)."""
    if not a or not b:
        return []
    out = [mpz(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zdiv_exact(f, g):
    """Exact division f // g over ZZ; None when g does not divide f."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    if not f:
        return []
    if len(f) - 1 < dg:
        return None
    q = [mpz(0)] * (len(f) - dg)
    while f and len(f) - 1 >= dg:
        d = len(f) - 1 - dg
        c, rem = divmod(f[-1], lg)
        if rem != 0:
            return None
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] -= c * b
        if f[-1] != 0:
            return None  # cancellation must occur at the top each step
        _zstrip(f)
    if f:
        return None
    return q


# ---------------------------------------------------------------------------
# UPoly
# ---------------------------------------------------------------------------


class UPoly:
    """Dense univariate polynomial over QQ, coefficients ascending.

    The zero polynomial is the empty tuple; otherwise the leading
    coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [mpq(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- construction -------------------------------------------------

    @staticmethod
    def zero():
        return UPoly(())

    @staticmethod
    def const(c):
        return UPoly((c,))

    @staticmethod
    def x():
        return UPoly((0, 1))

    @staticmethod
    def from_roots(roots):
        p = UPoly((1,))
        for r in roots:
            p = p * UPoly((-mpq(r), 1))
        return p

    # -- basic structure ----------------------------------------------

    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"UPoly({self.pretty()})"

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, UPoly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return UPoly(())
            out = [mpq(0)] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if ca:
                    for j, cb in enumerate(b):
                        out[i + j] += ca * cb
            return UPoly(out)
        return UPoly([c * mpq(other) for c in self.coeffs])

    __rmul__ = __mul__

    def shift_x(self, k: int):
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return UPoly((ZERO,) * k + self.coeffs)

    def divmod(self, other):
        """Exact quotient/remainder over QQ."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree()
        lg = other.lc
        q = [mpq(0)] * max(len(r) - d, 0)
        while len(r) - 1 >= d and r:
            k = len(r) - 1 - d
            c = r[-1] / lg
            q[k] = c
            for i, b in enumerate(other.coeffs):
                r[k + i] -= c * b
            while r and r[-1] == 0:
                r.pop()
        return UPoly(q), UPoly(r)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def derivative(self):
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero:
            return self
        l = self.lc
        return UPoly([c / l for c in self.coeffs])

    def primitive_z(self):
        """Return (coeff list of mpz, scale) with self = scale * int_poly,
        scale > 0 rational, int_poly primitive with lc sign preserved."""
        if self.is_zero:
            return [], ONE
        den = mpz(1)
        for c in self.coeffs:
            den = den * c.denominator // zgcd(den, c.denominator)
        ints = [mpz(c * den) for c in self.coeffs]
        g = _zcontent(ints)
        if g > 1:
            ints = [c // g for c in ints]
        return ints, mpq(g, den)

    @staticmethod
    def from_z(ints, scale=ONE):
        return UPoly([mpq(c) * scale for c in ints])

    # -- evaluation ------------------------------------------------------

    def eval(self, x):
        """Exact Horner evaluation at a rational point."""
        acc = ZERO
        x = mpq(x)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x, fc: FloatCtx):
        acc = fc.mpf(0)
        xv = fc.mpf(x)
        for c in reversed(self.coeffs):
            acc = acc * xv + fc.mpf(c)
        return acc

    # -- serialization ---------------------------------------------------

    def pretty(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree(), -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"{c} x")
            else:
                terms.append(f"{c} x^{k}")
        return " + ".join(terms)

    def to_text(self) -> str:
        return "upoly " + " ".join(rat_str(c) for c in self.coeffs)

    @staticmethod
    def from_text(s: str) -> "UPoly":
        parts = s.split()
        if not parts or parts[0] != "upoly":
            raise ValueError("not a upoly serialization")
        return UPoly([mpq(t) for t in parts[1:]])

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()


# ---------------------------------------------------------------------------
# Sturm sequences and root counting
# ---------------------------------------------------------------------------


def sturm_sequence(p: UPoly):
    """Standard Sturm chain p, p', -rem(p, p'), ... over QQ.

    The last element is a nonzero constant when p is squarefree; for a
    non-squarefree p the chain ends at (a multiple of) gcd(p, p') and
    variation counting still counts *distinct* real roots.
    """
    if p.is_zero:
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    chain = [p]
    d = p.derivative()
    if d.is_zero:
        return chain
    chain.append(d)
    while True:
        r = chain[-2] % chain[-1]
        if r.is_zero:
            break
        chain.append(-r)
        if chain[-1].degree() == 0:
            break
    return chain


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs) -> int:
    cnt = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            cnt += 1
        prev = s
    return cnt


_NEG_INF = object()
_POS_INF = object()


def _point_key(pt):
    return "neg_inf" if pt is _NEG_INF else ("pos_inf" if pt is _POS_INF else str(pt))


def _sturm_variations_at(p_z, points):
    """Stream the primitive-integer Sturm chain of p_z, never holding more
    than two elements, and return variation counts at each point.

    `points` entries are mpq values or the _NEG_INF/_POS_INF sentinels.
    Positive-constant rescaling (primitive parts) between chain elements
    preserves every sign, hence every variation count.
    """
    pts = []
    for pt in points:
        if pt is _NEG_INF or pt is _POS_INF:
            pts.append(pt)
        else:
            q = mpq(pt)
            pts.append((mpz(q.numerator), mpz(q.denominator)))

    def sign_at(v, pt):
        d = len(v) - 1
        if pt is _NEG_INF:
            s = _sign(v[-1])
            return s if d % 2 == 0 else -s
        if pt is _POS_INF:
            return _sign(v[-1])
        return _sign(_zeval_qq(v, pt[0], pt[1]))

    cur = _zprim([c for c in p_z])
    prev_signs = [sign_at(cur, pt) for pt in pts]
    var = [0] * len(pts)
    nxt = _zprim(_zderiv(cur))
    while nxt:
        signs = [sign_at(nxt, pt) for pt in pts]
        for i, (a, b) in enumerate(zip(prev_signs, signs)):
            if b != 0:
                if a != 0 and a != b:
                    var[i] += 1
                prev_signs[i] = b
            # zero: keep previous nonzero sign (classical skip rule)
        if len(nxt) == 1:
            break
        r, passes = _zprem(cur, nxt)
        if not r:
            break
        if nxt[-1] < 0 and passes % 2 == 1:
            # r = lc^passes * rem with lc^passes < 0, so -rem ~ +r
            r = _zprim(r)
        else:
            r = _zprim([-c for c in r])
        cur, nxt = nxt, r
    return var


def _count_distinct_roots(p_z, lo, hi):
    """Distinct real roots of the integer polynomial in (lo, hi]; lo/hi may
    be the infinity sentinels.  Assumes p(lo) != 0 when lo is finite."""
    v = _sturm_variations_at(p_z, [lo, hi])
    return v[0] - v[1]


def _deflate_rational_root(p: UPoly, r) -> UPoly:
    """Divide out (x - r) as often as it is a root."""
    lin = UPoly((-mpq(r), ONE))
    while not p.is_zero and p.eval(r) == 0:
        p, rem = p.divmod(lin)
        assert rem.is_zero
    return p


def count_roots(p: UPoly, lo, hi, perturb: bool = True) -> int:
    """Exact number of distinct real roots of p in the open interval (lo, hi).

    Endpoint roots are handled by exact deflation of the (rational) endpoint
    root, which leaves the interior count unchanged; with perturb=False an
    endpoint root raises EndpointIsRoot instead.
    """
    if p.is_zero:
        raise ZeroPolynomial("count_roots of zero polynomial")
    lo, hi = mpq(lo), mpq(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    for endpoint in (lo, hi):
        if p.eval(endpoint) == 0:
            if not perturb:
                raise EndpointIsRoot(f"endpoint {endpoint} is a root")
            p = _deflate_rational_root(p, endpoint)
            if p.is_zero or p.degree() == 0:
                return 0
    p_z, _ = p.primitive_z()
    return _count_distinct_roots(p_z, lo, hi)


def count_roots_total(p: UPoly) -> int:
    """Distinct real roots over the whole real line."""
    if p.is_zero:
        raise ZeroPolynomial("count_roots of zero polynomial")
    if p.degree() == 0:
        return 0
    p_z, _ = p.primitive_z()
    return _count_distinct_roots(p_z, _NEG_INF, _POS_INF)


# ---------------------------------------------------------------------------
# Descartes / VCA real-root isolation
# ---------------------------------------------------------------------------


def _variations_list(v) -> int:
    return _variations(_sign(c) for c in v)


def _taylor1(v):
    """In-place p(x) -> p(x+1) on ascending integer coefficients."""
    d = len(v) - 1
    for k in range(d):
        for j in range(d - 1, k - 1, -1):
            v[j] += v[j + 1]
    return v


def _half_left(v):
    """2^d p(x/2): maps the (0,1) analysis window to (0,1/2)."""
    d = len(v) - 1
    return [c << (d - i) for i, c in enumerate(v)]


def _transform_01_variations(v):
    """Sign variations of (x+1)^d p(1/(x+1)); bounds roots of p in (0,1)."""
    w = list(reversed(v))
    _zstrip(w)
    if not w:
        return 0
    _taylor1(w)
    return _variations_list(w)


def _simplest_rational_in(lo, hi):
    """The unique minimal-denominator (then minimal-numerator) rational in
    [lo, hi], by the Stern-Brocot / continued-fraction walk."""
    lo, hi = mpq(lo), mpq(hi)
    if lo == hi:
        return lo
    # shift into positives, recurse on the fractional structure
    if hi < 0:
        return -_simplest_rational_in(-hi, -lo)
    if lo <= 0:
        return mpq(0)
    fl = lo.numerator // lo.denominator
    if fl + 1 <= hi:
        return mpq(fl if lo == fl else fl + 1)
    frac_lo = lo - fl
    frac_hi = hi - fl
    if frac_lo == 0:
        return mpq(fl)
    return fl + 1 / _simplest_rational_in(1 / frac_hi, 1 / frac_lo)


@dataclass
class RootIsolation:
    """Disjoint rational-endpoint intervals, one distinct real root each.

    Degenerate intervals (lo == hi) are exact roots and are also listed in
    exact_roots.  `sturm_certified` records that one streaming Sturm pass
    verified count == 1 per interval and total == len(intervals) over R.
    """

    intervals: list = field(default_factory=list)  # [(lo, hi)] ascending
    exact_roots: list = field(default_factory=list)
    sturm_certified: bool = False

    def __len__(self):
        return len(self.intervals)

    def midpoints(self):
        return [(lo + hi) / 2 for lo, hi in self.intervals]

    def to_json(self):
        return {
            "intervals": [[rat_str(a), rat_str(b)] for a, b in self.intervals],
            "exact_roots": [rat_str(r) for r in self.exact_roots],
            "sturm_certified": self.sturm_certified,
        }

    @staticmethod
    def from_json(d):
        return RootIsolation(
            intervals=[(mpq(a), mpq(b)) for a, b in d["intervals"]],
            exact_roots=[mpq(r) for r in d["exact_roots"]],
            sturm_certified=d["sturm_certified"],
        )


def _vca_unit(q, lo, width):
    """Vincent-Collins-Akritas bisection for the roots of the window
    polynomial q inside the window (lo, lo+width) (q's variable runs over
    (0,1)).  The Descartes bound on the transformed window is exact for
    variation counts 0 and 1.  Yields (lo, hi) mpq pairs, exact roots as
    degenerate pairs."""
    out = []
    stack = [(list(q), mpq(lo), mpq(width))]
    while stack:
        w, lo, width = stack.pop()
        nvar = _transform_01_variations(w)
        if nvar == 0:
            continue
        if nvar == 1:
            out.append((lo, lo + width))
            continue
        left = _half_left(w)
        right = _taylor1(list(left))
        mid = lo + width / 2
        if right[0] == 0:
            # exact dyadic root at the shared endpoint: record it, then
            # deflate it out of both children so neither window carries a
            # boundary root (which would keep its variation count >= 1)
            out.append((mid, mid))
            right = right[1:]
            _zstrip(right)
            left = _zdiv_exact(left, [mpz(-1), mpz(1)])
            assert left is not None
        if right:
            stack.append((right, mid, width / 2))
        if left:
            stack.append((left, lo, width / 2))
    return out


def _isolate_positive(v):
    """Isolating intervals for all positive roots of squarefree primitive v
    (nonzero constant term): the unit interval is handled directly and the
    roots beyond 1 through the reversed polynomial (x -> 1/x), so no
    explicit root bound is ever formed (bounds can be astronomically large
    when the leading coefficient is small)."""
    out = []
    p1 = _zeval_qq(v, mpz(1), mpz(1))
    w = list(v)
    if p1 == 0:
        out.append((mpq(1), mpq(1)))
        w = _zdiv_exact(w, [mpz(-1), mpz(1)])
        assert w is not None
    out.extend(_vca_unit(w, mpq(0), mpq(1)))
    rev = list(reversed(w))
    _zstrip(rev)
    urev = UPoly.from_z(rev)
    s0 = _sign(urev.eval(0))
    for lo, hi in _vca_unit(rev, mpq(0), mpq(1)):
        if lo == hi:
            out.append((1 / lo, 1 / lo))
            continue
        while lo == 0:
            # push the bracket off 0 before taking reciprocals (the single
            # root inside is strictly positive since rev(0) = lc(v) != 0)
            mid = (lo + hi) / 2
            sm = _sign(urev.eval(mid))
            if sm == 0:
                lo = hi = mid
                break
            if sm == s0:
                lo = mid
            else:
                hi = mid
        out.append((1 / hi, 1 / lo) if lo != hi else (1 / lo, 1 / lo))
    return sorted(out)


def _touches(done, lo):
    return any(hi == lo for _, hi in done)


def _refine_interval(sf: UPoly, lo0, hi0, max_width):
    """Shrink a bracket around the single root of sf interior to (lo0, hi0)
    by sign bisection, until the width bound holds and both endpoints have
    moved strictly inside (so no refined interval can touch a neighbour or
    sit on a root of sf).  Endpoint roots of sf are deflated out of the
    bisection function first.  May land on the root exactly."""
    f = sf
    for e in (lo0, hi0):
        if f.eval(e) == 0:
            f, r = f.divmod(UPoly((-mpq(e), ONE)))
            assert r.is_zero
    lo, hi = lo0, hi0
    slo = _sign(f.eval(lo))
    moved_lo = moved_hi = False
    while hi - lo > max_width or not (moved_lo and moved_hi):
        mid = (lo + hi) / 2
        v = f.eval(mid)
        if v == 0:
            return mid, mid
        if _sign(v) == slo:
            lo, moved_lo = mid, True
        else:
            hi, moved_hi = mid, True
    return lo, hi


def squarefree_part(p: UPoly) -> UPoly:
    """p / gcd(p, p'), monic-free (primitive over ZZ, lc sign kept)."""
    if p.is_zero:
        raise ZeroPolynomial("squarefree part of zero")
    if p.degree() <= 1:
        return p
    g = gcd_poly(p, p.derivative())
    if g.degree() == 0:
        return p
    q, r = p.divmod(g)
    assert r.is_zero
    return q


def isolate_roots(p: UPoly, max_width, certify: bool = True, refine: bool = True) -> RootIsolation:
    """Isolate every distinct real root of p.

    Returns disjoint rational-endpoint intervals of width <= max_width (or
    degenerate exact roots), each certified to contain exactly one distinct
    real root.  Isolation runs on the squarefree part; certification is one
    streaming Sturm pass over all interval endpoints plus +-infinity, which
    proves both count == 1 per interval and that no root lies outside.

    refine=False keeps the raw isolation brackets (only nudging endpoints
    off roots), for count-style queries where roots can be so large that
    shrinking their brackets to any fixed width would be prohibitive.
    """
    if p.is_zero:
        raise ZeroPolynomial("isolate_roots of zero polynomial")
    max_width = mpq(max_width)
    if not max_width > 0:
        raise ValueError("max_width must be positive")
    if p.degree() == 0:
        return RootIsolation([], [], True)

    sf = squarefree_part(p)
    v, _ = sf.primitive_z()

    # exact zero root: strip x^k for the Descartes engine
    val = 0
    while v and v[0] == 0:
        v = v[1:]
        val += 1

    found = []  # (lo, hi) mpq
    if val:
        found.append((ZERO, ZERO))
    if len(v) > 1:
        pos = _isolate_positive(v)
        neg = _isolate_positive([(-1) ** i * c for i, c in enumerate(v)])
        found.extend(pos)
        found.extend((-hi, -lo) for lo, hi in neg)
    found.sort()

    refined = []
    for lo, hi in found:
        if lo == hi:
            refined.append((lo, hi))
            continue
        if refine:
            lo, hi = _refine_interval(sf, lo, hi, max_width)
        elif sf.eval(lo) == 0 or sf.eval(hi) == 0 or _touches(refined, lo):
            # keep the bracket scale, just move endpoints strictly inside
            lo, hi = _refine_interval(sf, lo, hi, hi - lo)
        if lo != hi and refine:
            # upgrade to exact when the simplest rational in the bracket is a root
            cand = _simplest_rational_in(lo, hi)
            if sf.eval(cand) == 0:
                lo = hi = cand
        refined.append((lo, hi))
    refined.sort()

    certified = False
    if certify:
        certified = _certify_isolation(sf, refined)
        if not certified:
            raise AssertionError("Sturm certification of isolation failed")

    return RootIsolation(
        intervals=refined,
        exact_roots=[lo for lo, hi in refined if lo == hi],
        sturm_certified=certified,
    )


def _certify_isolation(sf: UPoly, intervals) -> bool:
    """One streaming Sturm pass: every interval holds exactly one distinct
    root (degenerate ones hold an exact root) and none lie elsewhere."""
    p_z, _ = sf.primitive_z()
    pts = [_NEG_INF]
    open_intervals = []
    for lo, hi in intervals:
        if lo == hi:
            if sf.eval(lo) != 0:
                return False
        else:
            if sf.eval(lo) == 0 or sf.eval(hi) == 0:
                return False
            open_intervals.append((len(pts), lo, hi))
            pts.extend([lo, hi])
    pts.append(_POS_INF)
    var = _sturm_variations_at(p_z, pts)
    total = var[0] - var[-1]
    if total != len(intervals):
        return False
    for idx, lo, hi in open_intervals:
        if var[idx] - var[idx + 1] != 1:
            return False
    return True


def descartes_no_root_certificate(p: UPoly, lo, hi, max_splits: int = 16) -> bool:
    """Certify p has no roots in the closed interval [lo, hi].

    Sound: returns True only with a proof (endpoint values nonzero and zero
    Descartes variations on each piece, splitting at most max_splits times).
    Returns False when no certificate was found at this depth (which is not
    a proof of a root).
    """
    lo, hi = mpq(lo), mpq(hi)
    if p.is_zero:
        return False
    if p.eval(lo) == 0 or p.eval(hi) == 0:
        return False
    if lo == hi:
        return True
    v, _ = p.primitive_z()
    pieces = [(lo, hi)]
    splits = 0
    while pieces:
        a, b = pieces.pop()
        if _variations_on_interval(v, a, b) == 0:
            continue
        if splits >= max_splits:
            return False
        m = (a + b) / 2
        if p.eval(m) == 0:
            return False
        splits += 1
        pieces.append((a, m))
        pieces.append((m, b))
    return True


def _variations_on_interval(v, a, b) -> int:
    """Descartes variation bound for roots of v in (a, b), exact integers.

    Maps x = (U + W t)/D with t in (0,1), then applies the (0,1) transform.
    """
    a, b = mpq(a), mpq(b)
    D = a.denominator * b.denominator // zgcd(a.denominator, b.denominator)
    U = mpz(a.numerator * (D // a.denominator))
    V = mpz(b.numerator * (D // b.denominator))
    W = V - U
    d = len(v) - 1
    # Horner: q(t) = D^d v((U + W t)/D)
    q = [mpz(0)]
    pw = mpz(1)  # D^(d-k)
    for k in range(d, -1, -1):
        # q = q*(U + W t) + v[k]*D^(d-k)
        nq = [mpz(0)] * (len(q) + 1)
        for i, c in enumerate(q):
            nq[i] += c * U
            nq[i + 1] += c * W
        nq[0] += v[k] * pw
        _zstrip(nq)
        q = nq if nq else [mpz(0)]
        pw *= D
    _zstrip(q)
    if not q:
        return 0
    return _transform_01_variations(q)


# ---------------------------------------------------------------------------
# resultants / discriminants / gcd
# ---------------------------------------------------------------------------


def sylvester_matrix(p: UPoly, q: UPoly):
    """Sylvester matrix rows: deg(q) shifts of p then deg(p) shifts of q,
    coefficients degree-descending (the determinant is Res(p, q))."""
    m, n = p.degree(), q.degree()
    if m < 0 or n < 0:
        raise ZeroPolynomial("resultant of zero polynomial")
    size = m + n
    rows = []
    pd = list(reversed(p.coeffs))
    qd = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([ZERO] * i + pd + [ZERO] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ZERO] * i + qd + [ZERO] * (size - n - 1 - i))
    return rows


def _res_bareiss(p: UPoly, q: UPoly):
    from .arith import RatMatrix, det_exact

    m, n = p.degree(), q.degree()
    if m == 0:
        return p.coeffs[0] ** n
    if n == 0:
        return q.coeffs[0] ** m
    return det_exact(RatMatrix(sylvester_matrix(p, q)))


def _zres_prs(A, B):
    """Resultant of nonzero integer polys by the subresultant PRS, with the
    sign bookkeeping that makes it equal det(Sylvester)."""
    s = 1
    dA, dB = len(A) - 1, len(B) - 1
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
    if dB == 0:
        return s * B[0] ** dA
    g = mpz(1)
    h = mpz(1)
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R, passes = _zprem(A, B)
        if passes < delta + 1:
            # top coefficient of lc(B)^(delta+1-passes) never applied
            R = [c * B[-1] ** (delta + 1 - passes) for c in R]
        A, B = B, R
        if not B:
            return mpz(0)
        denom = g * h ** delta
        B = [c // denom for c in B]
        g = A[-1]
        h = h * (g ** delta) // h ** delta if delta else h
        if len(B) - 1 == 0:
            dA = len(A) - 1
            # res = s * h^(1-dA) * lc(B)^dA  (exact division)
            val = B[0] ** dA
            if dA > 1:
                val = val // h ** (dA - 1)
            elif dA == 0:
                val = mpz(1)  # unreachable: loop requires deg A > deg B >= 0
            return s * val


_PRS_CUTOFF = 12  # Sylvester/Bareiss below, subresultant PRS above


def resultant(p: UPoly, q: UPoly):
    """Res(p, q) = det of the Sylvester matrix, exact over QQ."""
    if p.is_zero or q.is_zero:
        raise ZeroPolynomial("resultant of zero polynomial")
    m, n = p.degree(), q.degree()
    if m == 0:
        return p.coeffs[0] ** n
    if n == 0:
        return q.coeffs[0] ** m
    if max(m, n) <= _PRS_CUTOFF:
        return _res_bareiss(p, q)
    pz, ps = p.primitive_z()
    qz, qs = q.primitive_z()
    return ps ** n * qs ** m * _zres_prs(pz, qz)


def discriminant(p: UPoly):
    """Standard discriminant: (-1)^(n(n-1)/2) Res(p, p') / lc(p)."""
    n = p.degree() if not p.is_zero else -1
    if n < 2:
        raise DegreeTooLow("discriminant needs degree >= 2")
    sgn = -1 if (n * (n - 1) // 2) % 2 else 1
    return sgn * resultant(p, p.derivative()) / p.lc


_MODULAR_GCD_CUTOFF = 16


def gcd_poly(p: UPoly, q: UPoly) -> UPoly:
    """Monic greatest common divisor over QQ."""
    if p.is_zero and q.is_zero:
        raise ZeroPolynomial("gcd(0, 0) undefined")
    if p.is_zero:
        return q.monic()
    if q.is_zero:
        return p.monic()
    if min(p.degree(), q.degree()) > _MODULAR_GCD_CUTOFF:
        from .modular import gcd_int_poly_modular

        pz, _ = p.primitive_z()
        qz, _ = q.primitive_z()
        return UPoly.from_z(gcd_int_poly_modular(pz, qz)).monic()
    a, _ = p.primitive_z()
    b, _ = q.primitive_z()
    if len(a) - 1 < len(b) - 1:
        a, b = b, a
    g = mpz(1)
    h = mpz(1)
    while True:
        if not b:
            return UPoly.from_z(_zprim(a)).monic()
        if len(b) == 1:
            return UPoly((ONE,))
        delta = (len(a) - 1) - (len(b) - 1)
        r, passes = _zprem(a, b)
        if r and passes < delta + 1:
            r = [c * b[-1] ** (delta + 1 - passes) for c in r]
        a, b = b, r
        if b:
            denom = g * h ** delta
            b = [c // denom for c in b]
        g = a[-1]
        h = h * (g ** delta) // h ** delta if delta else h


_X = UPoly.x()
