"""The Landen map case study.

The planar map

    G(a,b) = ( (5a+5b+ab+9)/(a+b+2)^(4/3),  (a+b+6)/(a+b+2)^(2/3) )

with its five-variable extension and invariant integral, the resolvent
curve, and the complete certified pipelines: the three fixed points, the
nonexistence of minimal-period-2 points, and the existence of exactly four
3-periodic orbits with analytic coordinate localization.

Cube roots are always the real branch, so G is defined on both sides of
the line a+b+2 = 0 (where it is not defined at all).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq, mpz

from .arith import FloatCtx, ctx, rat_str, real_cbrt, real_pow23, real_pow43
from .cache import Cache
from .certify import (
    Box,
    BoundPair,
    Certificate,
    MIRANDA_CERTIFIED,
    discard_box,
    identify_lower_period,
    miranda_certify,
    precondition,
    sweep,
)
from .modular import gcd_int_poly_modular, resultant_bivariate
from .mpoly import MPoly, elim_resultant
from .upoly import RootIsolation, UPoly, isolate_roots

VARS3 = ("m", "n", "r")
VARS2 = ("m", "n")


class OnForbiddenLine(ValueError):
    """a + b + 2 = 0 (or numerically indistinguishable from it)."""


class DomainExcluded(ValueError):
    """Argument outside the domain of the one-dimensional conjugate map or
    the curve parametrization."""


class DivergentIntegral(ValueError):
    """The sextic denominator has a positive real root."""


class ZeroInR(ValueError):
    """Coordinate bounds need the r-interval to avoid 0."""


class FactorizationMismatch(ValueError):
    """An exact division claimed by the period-2 factorization failed."""


# ---------------------------------------------------------------------------
# the map and its invariants
# ---------------------------------------------------------------------------


def _forbidden_guard(a, b, fc: FloatCtx):
    s = a + b + 2
    if abs(s) <= fc.mpf(10) ** (-fc.digits + 5) * (1 + abs(a) + abs(b)):
        raise OnForbiddenLine(f"a+b+2 ~ {s}")
    return s


def g_map(p, digits: int = 60):
    """One step of G.  Rational input is screened for the exact forbidden
    line; evaluation is floating point at the requested precision."""
    a, b = p
    if isinstance(a, (int, mpq)) and isinstance(b, (int, mpq)):
        if mpq(a) + mpq(b) + 2 == 0:
            raise OnForbiddenLine("exact a+b+2 = 0")
    fc = ctx(digits)
    af, bf = fc.mpf(a), fc.mpf(b)
    s = _forbidden_guard(af, bf, fc)
    return (
        (5 * af + 5 * bf + af * bf + 9) / real_pow43(s, fc),
        (af + bf + 6) / real_pow23(s, fc),
    )


def g_map_iter(p, k: int, digits: int = 60):
    for _ in range(k):
        p = g_map(p, digits)
    return p


def landen5_step(state, digits: int = 60):
    """One step of the full five-variable recurrence; the first two
    coordinates are exactly G."""
    a, b, c, d, e = state
    fc = ctx(digits)
    af, bf, cf, df, ef = (fc.mpf(x) for x in (a, b, c, d, e))
    s = _forbidden_guard(af, bf, fc)
    cb = real_cbrt(s, fc)
    s23 = cb * cb
    s43 = s23 * s23
    return (
        (5 * af + 5 * bf + af * bf + 9) / s43,
        (af + bf + 6) / s23,
        (df + ef + cf) / s23,
        ((bf + 3) * cf + (af + 3) * ef + 2 * df) / s,
        (cf + ef) / cb,
    )


def resolvent(a, b):
    """R(a,b) = -a^2 b^2 + 4a^3 + 4b^3 - 18ab + 27; exact for rational
    input, floating point otherwise."""
    if isinstance(a, (int, mpq)) and isinstance(b, (int, mpq)):
        a, b = mpq(a), mpq(b)
    return -(a**2) * b**2 + 4 * a**3 + 4 * b**3 - 18 * a * b + 27


def _integral_converges(a, b, fc: FloatCtx):
    """No positive real root of x^3 + a x^2 + b x + 1 (Descartes sign
    screen first, then a numeric cubic-root check)."""
    if a >= 0 and b >= 0:
        return True
    roots = fc.mp.polyroots([fc.mpf(1), a, b, fc.mpf(1)], maxsteps=200, extraprec=60)
    tol = fc.mpf(10) ** (-fc.digits // 2)
    for r in roots:
        if abs(fc.mp.im(r)) < tol and fc.mp.re(r) > tol:
            return False
    return True


def integral_I(state, tol=None, digits: int = 60):
    """The invariant integral of the five-variable system:
    int_0^inf (c x^4 + d x^2 + e) / (x^6 + a x^4 + b x^2 + 1) dx,
    by adaptive quadrature after the substitution x = t/(1-t).

    Raises DivergentIntegral when the denominator has a positive real root.
    """
    a, b, c, d, e = state
    fc = ctx(digits)
    af, bf, cf, df, ef = (fc.mpf(x) for x in (a, b, c, d, e))
    if tol is None:
        tol = fc.mpf(10) ** (-min(digits - 10, 30))
    else:
        tol = fc.mpf(tol)
    if not _integral_converges(af, bf, fc):
        raise DivergentIntegral(f"positive denominator root for a={a}, b={b}")

    def f(t):
        x = t / (1 - t)
        x2 = x * x
        num = (cf * x2 + df) * x2 + ef
        den = ((x2 + af) * x2 + bf) * x2 + 1
        return num / den / (1 - t) ** 2

    for maxdegree in (6, 8, 10):
        val, err = fc.mp.quad(f, [0, 1], error=True, maxdegree=maxdegree)
        if err <= tol:
            return val
    return val


# ---------------------------------------------------------------------------
# polynomial systems
# ---------------------------------------------------------------------------

_D10_TERMS = [
    (-1, (4, 3, 4)),
    (1, (5, 0, 4)),
    (2, (4, 0, 4)),
    (1, (3, 0, 5)),
    (5, (3, 0, 4)),
    (4, (2, 0, 4)),
    (-1, (0, 0, 6)),
    (4, (3, 0, 2)),
    (-2, (0, 0, 5)),
    (-1, (0, 0, 4)),
    (-8, (0, 0, 3)),
    (-8, (0, 0, 2)),
    (-16, (0, 0, 0)),
]

_D7_TERMS = [
    (-1, (4, 7)),
    (1, (5, 4)),
    (2, (4, 4)),
    (1, (3, 5)),
    (5, (3, 4)),
    (4, (2, 4)),
    (-1, (0, 6)),
    (4, (3, 2)),
    (-2, (0, 5)),
    (-1, (0, 4)),
    (-8, (0, 3)),
    (-8, (0, 2)),
    (-16, (0, 0)),
]


def system_period3():
    """(d10, d11, d12): the coupled cubic-parameter equations whose
    nonzero solutions (m, n, r) with m n r != 0 are the 3-cycles (and the
    fixed points on the diagonal).  d11(m,n,r) = d10(n,r,m) and
    d12(m,n,r) = d10(r,m,n)."""
    d10 = MPoly.from_terms(VARS3, _D10_TERMS)
    return d10, d10.permute(("n", "r", "m")), d10.permute(("r", "m", "n"))


def system_period2():
    """(d7, d8) with d8(m,n) = d7(n,m)."""
    d7 = MPoly.from_terms(VARS2, _D7_TERMS)
    return d7, d7.permute(("n", "m"))


def param_to_ab(m, r):
    """The (a, b) coordinates of an orbit point from its own cubic-sum
    parameter m (m^3 = a+b+2) and the previous point's parameter r:
    a = m^3 - r - 2 - 4/r^2, b = r + 4/r^2."""
    m, r = mpq(m), mpq(r)
    if r == 0:
        raise ZeroInR("parameter r = 0")
    return m**3 - r - 2 - 4 / r**2, r + 4 / r**2


def fixed_param_poly() -> UPoly:
    """The fixed-point parameter polynomial in m (m^3 = a+b+2), obtained by
    eliminating a and b from the fixed-point system."""
    m = UPoly.x()
    B = UPoly((4, 0, 0, 1))  # m^3 + 4   (= b * m^2)
    A = UPoly((-4, 0, -2, -1, 0, 1))  # m^5 - m^3 - 2 m^2 - 4   (= a * m^2)
    m2 = UPoly((0, 0, 1))
    m4 = m2 * m2
    m6 = m4 * m2
    # -a m^4 + a b + 5a + 5b + 9, cleared by m^4
    N = -(A * m6) + A * B + 5 * (A + B) * m2 + 9 * m4
    return N


_CUBIC_MINUS = UPoly((-2, -1, 1, 1))  # m^3 + m^2 - m - 2  (root ~ 1.20557)
_CUBIC_PLUS = UPoly((2, 1, 1, 1))  # m^3 + m^2 + m + 2  (root ~ -1.35321)


@dataclass
class FixedPointRecord:
    name: str
    m_interval: tuple
    point: tuple  # floats at the working precision
    classification: str
    eigenvalues: tuple

    def to_json(self):
        return {
            "name": self.name,
            "m_interval": [rat_str(self.m_interval[0]), rat_str(self.m_interval[1])],
            "a": str(self.point[0]),
            "b": str(self.point[1]),
            "classification": self.classification,
            "eigenvalues": [str(e) for e in self.eigenvalues],
        }


def _classify_eigen(l1, l2, fc: FloatCtx):
    tol = fc.mpf(10) ** (-fc.digits + 12)
    if abs(l1) < tol and abs(l2) < tol:
        return "super-attractor"
    if abs(fc.mp.im(l1)) > tol:
        mod = abs(l1)
        if mod > 1:
            return "unstable focus"
        return "stable focus"
    r1, r2 = fc.mp.re(l1), fc.mp.re(l2)
    if (abs(r1) - 1) * (abs(r2) - 1) < 0:
        return "saddle"
    return "node"


def fixed_points(digits: int = 60):
    """The three fixed points: exact isolating m-intervals, float (a, b)
    coordinates, and the eigenvalue classification of DG."""
    from .manifold import jacobian_G

    fc = ctx(digits)
    d4 = fixed_param_poly()
    iso = isolate_roots(d4, mpq(1, mpz(10) ** (digits + 10)))
    assert len(iso) == 3
    out = []
    names = {0: "P3", 1: "P2", 2: "P1"}  # ascending m: m3 < m2 < m1=2
    for k, (lo, hi) in enumerate(iso.intervals):
        mm = fc.mpf((lo + hi) / 2)
        b = (mm**3 + 4) / mm**2
        a = mm**3 - b - 2
        J = jacobian_G((a, b), digits)
        tr = J[0][0] + J[1][1]
        det = J[0][0] * J[1][1] - J[0][1] * J[1][0]
        disc = tr * tr - 4 * det
        sq = fc.mp.sqrt(disc) if disc >= 0 else fc.mp.mpc(0, 1) * fc.mp.sqrt(-disc)
        l1, l2 = (tr + sq) / 2, (tr - sq) / 2
        out.append(
            FixedPointRecord(
                names[k], (lo, hi), (a, b), _classify_eigen(l1, l2, fc), (l1, l2)
            )
        )
    # report in the conventional order P1, P2, P3
    return sorted(out, key=lambda r: r.name)


# ---------------------------------------------------------------------------
# period 2: nonexistence
# ---------------------------------------------------------------------------


def _diag_substitute(p: MPoly, keep: str, other: str) -> UPoly:
    """p with other := keep, collapsed to a univariate in keep."""
    view = p.to_univariate(other)
    acc = UPoly.zero()
    for j, cj in enumerate(view):
        acc = acc + cj.collapse().shift_x(j)
    return acc


@dataclass
class Period2Report:
    d9_degree: int
    factor_degrees: dict
    p56_degree: int
    p56_real_roots: int
    candidates: list
    no_minimal_period2: bool

    def to_json(self):
        return {
            "d9_degree": self.d9_degree,
            "factor_degrees": self.factor_degrees,
            "p56_degree": self.p56_degree,
            "p56_real_roots": self.p56_real_roots,
            "candidates": self.candidates,
            "no_minimal_period2": self.no_minimal_period2,
        }


def period2_nonexistence(cache: Cache | None = None) -> Period2Report:
    """Prove G has no points of minimal period 2.

    d9 = Res(d7, d8; n) factors as m^4 (m-2) (m+1)^2 (m^3+m^2+m+2)
    (m^3+m^2-m-2) P56 with P56 of degree 56 and no real roots (Sturm); the
    16 candidate pairs from the nonzero real roots {-1, 2, rho-, rho+}^2
    are eliminated one by one: exact pairs by exact evaluation, algebraic
    pairs by corner bounds on width-1e-40 point boxes, with exact cubic
    divisibility confirming the diagonal (fixed point) solutions.
    """
    d7, d8 = system_period2()
    cache = cache or Cache()
    key_parts = [d7.content_hash(), "d9"]
    cached = cache.get_text("d9", key_parts)
    if cached is not None:
        d9_full = UPoly.from_text(cached)
    else:
        d9_full = elim_resultant(d7, d8, "n").collapse()
        cache.put_text("d9", key_parts, d9_full.to_text())
    d9_deg = d9_full.degree()

    # peel the claimed factors by exact division
    p = d9_full
    val = 0
    while p.coeffs[0] == 0:
        p = UPoly(p.coeffs[1:])
        val += 1
    if val != 4:
        raise FactorizationMismatch(f"m-valuation {val} != 4")
    factors = {
        "m^4": 4,
        "m-2": UPoly((-2, 1)),
        "(m+1)^2": UPoly((1, 1)) * UPoly((1, 1)),
        "m^3+m^2+m+2": _CUBIC_PLUS,
        "m^3+m^2-m-2": _CUBIC_MINUS,
    }
    for tag, f in factors.items():
        if tag == "m^4":
            continue
        q, rem = p.divmod(f)
        if not rem.is_zero:
            raise FactorizationMismatch(f"{tag} does not divide d9")
        p = q
    p56 = p
    from .upoly import count_roots_total

    p56_roots = count_roots_total(p56)

    # candidate set {-1, 2, rho-, rho+}^2
    iso_minus = isolate_roots(_CUBIC_MINUS, mpq(1, mpz(10) ** 40))
    iso_plus = isolate_roots(_CUBIC_PLUS, mpq(1, mpz(10) ** 40))
    assert len(iso_minus) == 1 and len(iso_plus) == 1
    cands = [
        ("-1", mpq(-1), None),
        ("2", mpq(2), None),
        ("rho-", iso_minus.intervals[0], _CUBIC_MINUS),
        ("rho+", iso_plus.intervals[0], _CUBIC_PLUS),
    ]
    records = []
    solutions = []
    for tu, u, cu in cands:
        for tv, v, cv in cands:
            rec = {"pair": [tu, tv]}
            iu = (u, u) if cu is None else u
            iv = (v, v) if cv is None else v
            box = Box.make([iu, iv])
            cert = discard_box([d7, d8], box, 4)
            if cert is not None:
                # a replayable exclusion certificate (exact evaluation for
                # point boxes, corner bound otherwise)
                rec["method"] = (
                    "exact-eval" if cert.witness.get("degenerate") else "corner-bound"
                )
                rec["outcome"] = "excluded"
                rec["certificate"] = cert.to_json()
            elif box.is_point:
                # exact zeros of both equations: a fixed-point parameter pair
                rec["method"] = "exact-eval"
                rec["outcome"] = "solution (fixed point)"
                solutions.append((tu, tv))
            elif tu == tv and cu is not None:
                # undetermined sign on the diagonal: confirm the true zero
                # by exact divisibility of the cubic into d7(m, m)
                diag = _diag_substitute(d7, "m", "n")
                _, rem = diag.divmod(cu)
                if not rem.is_zero:
                    raise FactorizationMismatch(f"undetermined candidate {tu},{tv}")
                rec["method"] = "cubic-divides-diagonal"
                rec["outcome"] = "solution (fixed point)"
                solutions.append((tu, tv))
            else:
                raise FactorizationMismatch(
                    f"off-diagonal candidate {tu},{tv} not excluded"
                )
            records.append(rec)
    expected = [("2", "2"), ("rho+", "rho+"), ("rho-", "rho-")]
    ok = p56_roots == 0 and sorted(solutions) == expected
    return Period2Report(
        d9_degree=d9_deg,
        factor_degrees={"gcd_peeled": d9_deg - p56.degree(), "p56": p56.degree()},
        p56_degree=p56.degree(),
        p56_real_roots=p56_roots,
        candidates=records,
        no_minimal_period2=bool(ok and p56_roots == 0),
    )


# ---------------------------------------------------------------------------
# period 3: the full certified pipeline
# ---------------------------------------------------------------------------


@dataclass
class ChainResult:
    d13: MPoly
    d14: MPoly
    d15: UPoly
    d16: UPoly
    gcd_degree: int
    gcd_valuation: int
    d17: UPoly

    def degree_summary(self):
        return {
            "d13_n": self.d13.degree_in("n"),
            "d13_r": self.d13.degree_in("r"),
            "d14_n": self.d14.degree_in("n"),
            "d14_r": self.d14.degree_in("r"),
            "d15": self.d15.degree(),
            "d16": self.d16.degree(),
            "gcd": self.gcd_degree,
            "gcd_valuation": self.gcd_valuation,
            "d17": self.d17.degree(),
        }


def period3_chain(cache: Cache | None = None) -> ChainResult:
    """d13, d14 by exact subresultant elimination; d15, d16 by the modular
    engine; d17 = gcd(d15, d16) / n^716.  All stages disk-cached."""
    cache = cache or Cache()
    d10, d11, d12 = system_period3()
    sig = [d10.content_hash()]

    def cached_mpoly(tag, build):
        s = cache.get_text(tag, sig)
        if s is not None:
            return MPoly.from_text(s)
        v = build()
        cache.put_text(tag, sig, v.to_text())
        return v

    def cached_upoly(tag, build):
        s = cache.get_text(tag, sig)
        if s is not None:
            return UPoly.from_text(s)
        v = build()
        cache.put_text(tag, sig, v.to_text())
        return v

    d13 = cached_mpoly("d13", lambda: elim_resultant(d10, d12, "m"))
    d14 = cached_mpoly("d14", lambda: elim_resultant(d11, d12, "m"))
    d15 = cached_upoly("d15", lambda: resultant_bivariate(d13, d14, "r", "n"))
    d16 = cached_upoly("d16", lambda: resultant_bivariate(d13, d14, "n", "r"))

    def build_gcd():
        f15, _ = d15.primitive_z()
        f16, _ = d16.primitive_z()
        return UPoly.from_z(gcd_int_poly_modular(f15, f16))

    g = cached_upoly("gcd1516", build_gcd)
    val = 0
    while g.coeffs[val] == 0:
        val += 1
    d17 = UPoly(g.coeffs[val:])
    return ChainResult(d13, d14, d15, d16, g.degree(), val, d17)


def period3_isolation(cache: Cache | None = None, width=None):
    """Isolate the 16 real roots of d17 and order the intervals the way the
    survivor table is indexed: the 14 non-exact roots ascending (I1..I14),
    then the exact roots ascending (I15 = [-1,-1], I16 = [2,2]).

    The default width 2^-73 (~1.06e-22, well under the 1e-20 contract) is
    what the localization needs: the (a, b) bound map magnifies parameter
    widths by |3 m^2| + |1 - 8/r^3| ~ 8e3 on the extreme orbit."""
    cache = cache or Cache()
    width = mpq(width) if width is not None else mpq(1, mpz(2) ** 73)
    chain = period3_chain(cache)
    d17 = chain.d17
    parts = [d17.content_hash(), str(width)]
    data = cache.get_json("d17iso", parts)
    if data is not None:
        iso = RootIsolation.from_json(data)
    else:
        iso = isolate_roots(d17, width)
        cache.put_json("d17iso", parts, iso.to_json())
    non_exact = [iv for iv in iso.intervals if iv[0] != iv[1]]
    exact = sorted(iv for iv in iso.intervals if iv[0] == iv[1])
    ordered = RootIsolation(
        intervals=non_exact + exact,
        exact_roots=[lo for lo, _ in exact],
        sturm_certified=iso.sturm_certified,
    )
    return chain, ordered


@dataclass
class PeriodicOrbitResult:
    period: int
    parameter_boxes: list
    orbits: list
    certificates: list
    sweep_stats: dict
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "period": self.period,
            "parameter_boxes": [b.to_json() for b in self.parameter_boxes],
            "orbits": self.orbits,
            "certificates": [c.to_json() for c in self.certificates],
            "sweep_stats": self.sweep_stats,
            "notes": self.notes,
        }


def _ab_bounds(m_iv, r_iv):
    """Lemma-style monotone bounds for a(m,r) = m^3 - r - 2 - 4/r^2 and
    b(r) = r + 4/r^2 over a parameter rectangle; the r-interval must not
    touch 0 (the sign picks the monotonicity case)."""
    m_lo, m_hi = m_iv
    r_lo, r_hi = r_iv
    if r_lo <= 0 <= r_hi:
        raise ZeroInR("r-interval contains 0")
    if r_lo > 0:
        a_lo = m_lo**3 - r_hi - 2 - 4 / r_lo**2
        a_hi = m_hi**3 - r_lo - 2 - 4 / r_hi**2
        b_lo = r_lo + 4 / r_hi**2
        b_hi = r_hi + 4 / r_lo**2
    else:
        a_lo = m_lo**3 - r_hi - 2 - 4 / r_hi**2
        a_hi = m_hi**3 - r_lo - 2 - 4 / r_lo**2
        b_lo = r_lo + 4 / r_lo**2
        b_hi = r_hi + 4 / r_hi**2
    return BoundPair(a_lo, a_hi), BoundPair(b_lo, b_hi)


def orbit_bounds(param_box: Box):
    """(a, b) bounds of the orbit point attached to a parameter box: for a
    3-d (m, n, r) box the point determined by (m, r); a 2-d box is read
    directly as (m, r)."""
    if param_box.dim == 3:
        return _ab_bounds(param_box.intervals[0], param_box.intervals[2])
    if param_box.dim == 2:
        return _ab_bounds(param_box.intervals[0], param_box.intervals[1])
    raise ValueError("orbit_bounds needs a 2-d or 3-d parameter box")


def _rotation_certificate(base: Certificate, k: int, rotated_box: Box) -> Certificate:
    """Cyclic-symmetry certificate: if (m0,n0,r0) solves the system then so
    do its rotations, so a Miranda certificate transports to the rotated
    box."""
    return Certificate(
        MIRANDA_CERTIFIED,
        rotated_box,
        {
            "rotation_of": list(base.box.labels),
            "shift": k,
            "base_witness_hashes": base.witness.get("system_hashes", []),
        },
    )


# the historically reported orbit grouping uses (4, 8, 14); the computed
# survivor table yields (4, 8, 10), and the discrepancy is flagged
REPORTED_ORBIT_CLASSES = [(1, 5, 11), (2, 6, 12), (3, 7, 13), (4, 8, 14)]


def period3_pipeline(
    cache: Cache | None = None,
    xi=30,
    width=None,
    workers: int = 1,
    refine_depth: int = 0,
) -> PeriodicOrbitResult:
    """The full certified proof that G has exactly four 3-periodic orbits.

    Stages: elimination chain -> root isolation -> discard sweep over the
    16^3 boxes (d10 only, shift xi) -> exact evaluation of degenerate
    survivors against d11/d12 -> fixed-point identification -> one
    Poincare-Miranda certification per cyclic class, rotated to the other
    two boxes -> analytic (a, b) bounds for all 12 orbit points.
    """
    cache = cache or Cache()
    xi = mpq(xi)
    d10, d11, d12 = system_period3()
    system = [d10, d11, d12]
    chain, iso = period3_isolation(cache, width)
    notes = []

    sweep_parts = [d10.content_hash(), chain.d17.content_hash(), str(xi), str(len(iso))]
    sweep_data = cache.get_json("sweep3", sweep_parts)
    if sweep_data is None:
        import time

        t0 = time.time()
        survivors, discard_certs = sweep([d10], [iso, iso, iso], xi,
                                         refine_depth=refine_depth, workers=workers)
        sweep_data = {
            "survivor_labels": [list(b.labels) for b in survivors],
            "n_discarded": len(discard_certs),
            "seconds": time.time() - t0,
        }
        cache.put_json("sweep3", sweep_parts, sweep_data)
    survivor_labels = [tuple(l) for l in sweep_data["survivor_labels"]]
    survivors = [
        Box(tuple(iso.intervals[i - 1] for i in lab), lab) for lab in survivor_labels
    ]

    certificates = []

    # exact evaluation of fully degenerate survivors against the rest of
    # the system (kills (2, 2, -1): d10 vanishes there but d11 = 2304)
    remaining = []
    for b in survivors:
        if b.is_point:
            cert = discard_box([d10, d11, d12], b, xi)
            if cert is not None and cert.witness.get("poly_index", 0) != 0:
                certificates.append(cert)
                continue
        remaining.append(b)

    # fixed-point identification on the diagonal-ish boxes
    d4 = fixed_param_poly()
    identified = []
    keep = []
    for b in remaining:
        cert = identify_lower_period(b, d4)
        if cert is not None:
            identified.append(b)
            certificates.append(cert)
        else:
            keep.append(b)

    # group the 3-cycles into cyclic classes
    classes = {}
    for b in keep:
        lab = b.labels
        canon = min(lab, lab[1:] + lab[:1], lab[2:] + lab[:2])
        classes.setdefault(canon, []).append(b)
    class_keys = sorted(classes)

    if set(class_keys) != set(REPORTED_ORBIT_CLASSES):
        notes.append(
            "survivor cyclic classes "
            + str(sorted(class_keys))
            + " differ from the historically reported grouping "
            + str(REPORTED_ORBIT_CLASSES)
            + " (known index inconsistency in the reference tables; the "
            "computed survivor table is authoritative here)"
        )

    orbit_groups = []
    param_boxes = []
    for canon in class_keys:
        members = {b.labels: b for b in classes[canon]}
        base_box = members[canon]
        showcase = 0 if canon == class_keys[0] else None
        cert_parts = [d10.content_hash(), str(canon), str(xi), str(len(iso))]
        stored = cache.get_json("miranda3", cert_parts)
        if stored is not None:
            base_cert = Certificate.from_json(stored)
        else:
            g, A = precondition(system, base_box)
            base_cert = miranda_certify(g, base_box, xi, showcase_component=showcase)
            base_cert.witness["preconditioner"] = [
                [rat_str(x) for x in row] for row in A.a
            ]
            cache.put_json("miranda3", cert_parts, base_cert.to_json())
        certificates.append(base_cert)
        group_boxes = [base_box]
        for k in (1, 2):
            rot_lab = canon[k:] + canon[:k]
            rb = members.get(rot_lab)
            if rb is None:
                raise AssertionError(f"rotation {rot_lab} of {canon} not a survivor")
            certificates.append(_rotation_certificate(base_cert, k, rb))
            group_boxes.append(rb)
        param_boxes.extend(group_boxes)

        # orbit coordinates: points from (m,r), (n,m), (r,n) of the base box
        m_iv, n_iv, r_iv = base_box.intervals
        pts = []
        for mm, rr in ((m_iv, r_iv), (n_iv, m_iv), (r_iv, n_iv)):
            a_bp, b_bp = _ab_bounds(mm, rr)
            pts.append(
                {
                    "a": a_bp.to_json(),
                    "b": b_bp.to_json(),
                    "a_decimal": _decimal_mid(a_bp),
                    "b_decimal": _decimal_mid(b_bp),
                    "max_width": rat_str(
                        max(a_bp.upper - a_bp.lower, b_bp.upper - b_bp.lower)
                    ),
                }
            )
        orbit_groups.append(
            {
                "class": [list(b.labels) for b in group_boxes],
                "points": pts,
            }
        )

    return PeriodicOrbitResult(
        period=3,
        parameter_boxes=param_boxes,
        orbits=orbit_groups,
        certificates=certificates,
        sweep_stats={
            "boxes": len(iso) ** 3,
            "discarded": sweep_data["n_discarded"],
            "survivors": len(survivor_labels),
            "survivor_labels": [list(l) for l in survivor_labels],
            "identified_fixed": [list(b.labels) for b in identified],
            "sweep_seconds": sweep_data["seconds"],
        },
        notes=notes,
    )


def _decimal_mid(bp: BoundPair, digits: int = 24) -> str:
    fc = ctx(digits + 10)
    return fc.mp.nstr(fc.mpf((bp.lower + bp.upper) / 2), digits)


# ---------------------------------------------------------------------------
# stable set of P2 and the one-dimensional conjugate map
# ---------------------------------------------------------------------------


@dataclass
class StableSetResult:
    kind: str  # ConvergesToP1 | ConvergesToP2 | HitsForbiddenLine | Undetermined
    steps: int
    entered_L2_at: int | None = None

    def to_json(self):
        return {"kind": self.kind, "steps": self.steps, "entered_L2_at": self.entered_L2_at}


def p2_coordinates(digits: int = 60):
    """Closed radical form of the saddle point P2 (float cross-check)."""
    fc = ctx(digits)
    s177 = fc.mp.sqrt(177)
    A = 172 + 12 * s177
    A13 = fc.mp.cbrt(A)
    A23 = A13 * A13
    a2 = (-43 + 3 * s177) / 384 * A23 - A13 / 6 - fc.mpf(8) / 3
    b2 = (13 - s177) / 48 * A23 + (7 + s177) / 48 * A13 + fc.mpf(4) / 3
    return a2, b2


def p3_coordinates(digits: int = 60):
    """Closed radical form of the unstable focus P3."""
    fc = ctx(digits)
    s249 = fc.mp.sqrt(249)
    B = 188 + 12 * s249
    B13 = fc.mp.cbrt(B)
    B23 = B13 * B13
    a3 = (-21 + s249) / 96 * B23 + (15 - s249) / 12 * B13 - 2
    b3 = (17 - s249) / 48 * B23 + (-13 + s249) / 24 * B13 - fc.mpf(4) / 3
    return a3, b3


def classify_stable_set(p, max_iters: int = 200, digits: int = 60) -> StableSetResult:
    """Numerically iterate G and classify the orbit's fate.  This is a
    numeric diagnostic, not a certificate: L2 membership is a tolerance
    test |R(a,b)| < 1e-20 on the a < -1 branch."""
    fc = ctx(digits)
    a, b = fc.mpf(p[0]), fc.mpf(p[1])
    a2, b2 = p2_coordinates(digits)
    tol = fc.mpf(10) ** (-20)
    entered = None
    for k in range(max_iters + 1):
        if abs(resolvent(a, b)) < tol and a < -1 and entered is None:
            entered = k
        if abs(a - 3) < tol and abs(b - 3) < tol:
            return StableSetResult("ConvergesToP1", k, entered)
        if abs(a - a2) < tol and abs(b - b2) < tol:
            return StableSetResult("ConvergesToP2", k, entered)
        s = a + b + 2
        if abs(s) <= fc.mpf(10) ** (-fc.digits + 5) * (1 + abs(a) + abs(b)):
            return StableSetResult("HitsForbiddenLine", k, entered)
        try:
            a, b = g_map((a, b), digits)
        except OnForbiddenLine:
            return StableSetResult("HitsForbiddenLine", k, entered)
    return StableSetResult("Undetermined", max_iters, entered)


def param_P(t):
    """Rational parametrization of the resolvent curve:
    P(t) = ((t^3+4)/t^2, (t^3+16)/(4t)); L2 is t < 0, L1 is t > 0."""
    if t == 0:
        raise DomainExcluded("t = 0")
    if isinstance(t, (int, mpq)):
        t = mpq(t)
    return (t**3 + 4) / t**2, (t**3 + 16) / (4 * t)


def param_P_inverse(p):
    """P^-1(a,b) = 4 (a^2 - 3b) / (a^2 b - 4 b^2 + 3 a)."""
    a, b = p
    den = a * a * b - 4 * b * b + 3 * a
    if den == 0:
        raise DomainExcluded("parametrization inverse undefined")
    return 4 * (a * a - 3 * b) / den


def g_one_dim(t, digits: int = 60):
    """The conjugated one-dimensional map g = P^-1 o G o P on t < 0:
    g(t) = 4^(1/3) * t/(t+2)^2 * ((t^2+4)(t+2)^2 / t^2)^(2/3)."""
    fc = ctx(digits)
    tf = fc.mpf(t)
    if tf == 0 or tf == -2:
        raise DomainExcluded("t in {0, -2}")
    u = (tf * tf + 4) * (tf + 2) ** 2 / (tf * tf)
    return real_cbrt(4, fc) * tf / (tf + 2) ** 2 * real_pow23(u, fc)


def g_fixed_point_t(digits: int = 60):
    """The unique fixed point p of g on (-inf, 0):
    p = -(4C + 2^(1/3) C^2 + 8*2^(2/3)) / (3C), C = (86 + 6 sqrt(177))^(1/3)."""
    fc = ctx(digits)
    C = fc.mp.cbrt(86 + 6 * fc.mp.sqrt(177))
    c2 = fc.mp.cbrt(2)
    return -(4 * C + c2 * C * C + 8 * c2 * c2) / (3 * C)


@dataclass
class IntervalDynamicsReport:
    m: str
    ell: str
    p_fixed: str
    g_at_max_points_is_minus4: bool
    ell1_is_minus4: bool
    invariant_interval_ok: bool
    monotone_decreasing_on_interval: bool
    sequences_converge_to_p: bool
    g_above_identity_left_of_p: bool
    final_gap: str

    def to_json(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def verify_interval_dynamics(digits: int = 60, samples: int = 64) -> IntervalDynamicsReport:
    """Numeric verification of the trapping-interval analysis of the
    one-dimensional map: the critical value structure, the invariant
    interval [m, ell], and the monotone even/odd iterate sequences
    squeezing onto the fixed point."""
    fc = ctx(digits)
    s3 = fc.mp.sqrt(3)
    m = -4 - 2 * s3
    m_img = g_one_dim(m, digits)
    other = g_one_dim(-4 + 2 * s3, digits)
    p = g_fixed_point_t(digits)
    eps = fc.mpf(10) ** (-digits + 8)
    crit_ok = abs(m_img + 4) < eps and abs(other + 4) < eps

    # ell in (p, -2) with g(ell) = m, by bisection on a sign change
    lo, hi = p + fc.mpf("0.01"), fc.mpf(-2) - fc.mpf("1e-6")
    flo = g_one_dim(lo, digits) - m
    for _ in range(int(digits * 3.5)):
        mid = (lo + hi) / 2
        fm = g_one_dim(mid, digits) - m
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    ell = (lo + hi) / 2
    ell1 = g_one_dim(m, digits)
    ell1_ok = abs(ell1 + 4) < eps

    inv_ok = True
    mono_ok = True
    prev = None
    for i in range(samples + 1):
        t = m + (ell - m) * i / samples
        v = g_one_dim(t, digits)
        if not (m - eps <= v <= -4 + eps):
            inv_ok = False
        if prev is not None and v > prev + eps:
            mono_ok = False  # g must be decreasing on [m, ell]
        prev = v

    mk, lk = m, ell
    for _ in range(200):
        lk = g_one_dim(mk, digits)
        mk = g_one_dim(lk, digits)
    gap = max(abs(mk - p), abs(lk - p))
    seq_ok = gap < fc.mpf(10) ** (-30)

    above = all(
        g_one_dim(p - fc.mpf(2) ** k, digits) > p - fc.mpf(2) ** k
        for k in range(-3, 8)
    )
    return IntervalDynamicsReport(
        m=str(m),
        ell=str(ell),
        p_fixed=str(p),
        g_at_max_points_is_minus4=bool(crit_ok),
        ell1_is_minus4=bool(ell1_ok),
        invariant_interval_ok=bool(inv_ok),
        monotone_decreasing_on_interval=bool(mono_ok),
        sequences_converge_to_p=bool(seq_ok),
        g_above_identity_left_of_p=bool(above),
        final_gap=str(gap),
    )
