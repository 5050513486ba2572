"""Rigorous certification engines.

* box discard by per-monomial corner bounds after a positivity-restoring
  coordinate shift (the only inequality machinery used inside proofs);
* the sweep bookkeeping over products of isolating intervals;
* identification of lower-period (fixed-point) boxes;
* exact-inverse-Jacobian preconditioning;
* the one-parameter-family no-root lemma (specialization + endpoint +
  discriminant conditions) and Poincare-Miranda face certification built
  on it.

Everything is exact rational arithmetic; a numeric value never decides a
certificate, only which side of a dichotomy is *attempted* first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from .arith import ONE, ZERO, RatMatrix, SingularMatrix, invert_exact, rat_str
from .mpoly import MPoly
from .upoly import (
    UPoly,
    count_roots,
    count_roots_total,
    descartes_no_root_certificate,
    isolate_roots,
)


class ShiftInsufficient(ValueError):
    """Shift xi leaves a coordinate interval touching the closed left
    half-line; corner bounds need the strictly positive orthant."""


class SingularJacobian(ValueError):
    """System Jacobian at the box midpoint is exactly singular."""


class HypothesisFailed(ValueError):
    """A no-root-family hypothesis failed; .part is 'i' or 'ii' and .tag
    names the failing polynomial."""

    def __init__(self, part, tag, detail=""):
        super().__init__(f"hypothesis ({part}) failed for {tag}: {detail}")
        self.part = part
        self.tag = tag


class FaceSignUndetermined(ValueError):
    """Miranda face condition could not be certified for a component."""

    def __init__(self, component, face, cause):
        super().__init__(f"component {component}, face {face}: {cause}")
        self.component = component
        self.face = face


# ---------------------------------------------------------------------------
# boxes, bounds, certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Box:
    """n-dimensional orthohedron with rational endpoints (possibly
    degenerate); labels, when present, are 1-based indices into a shared
    per-coordinate root isolation."""

    intervals: tuple
    labels: tuple | None = None

    @staticmethod
    def make(pairs, labels=None):
        ivs = tuple((mpq(a), mpq(b)) for a, b in pairs)
        for a, b in ivs:
            if a > b:
                raise ValueError("interval with lo > hi")
        return Box(ivs, tuple(labels) if labels is not None else None)

    @property
    def dim(self):
        return len(self.intervals)

    @property
    def is_point(self):
        return all(a == b for a, b in self.intervals)

    def midpoint(self):
        return [(a + b) / 2 for a, b in self.intervals]

    def widths(self):
        return [b - a for a, b in self.intervals]

    def rotate(self, k=1):
        """Cyclic coordinate rotation (solution symmetry of cyclic systems)."""
        n = self.dim
        k %= n
        ivs = self.intervals[k:] + self.intervals[:k]
        lbs = None if self.labels is None else self.labels[k:] + self.labels[:k]
        return Box(ivs, lbs)

    def split_all_axes(self):
        """2^k children, splitting every non-degenerate axis at its midpoint."""
        pieces = []
        for a, b in self.intervals:
            if a == b:
                pieces.append([(a, b)])
            else:
                m = (a + b) / 2
                pieces.append([(a, m), (m, b)])
        out = [[]]
        for choices in pieces:
            out = [acc + [c] for acc in out for c in choices]
        return [Box(tuple(ivs), self.labels) for ivs in out]

    def to_json(self):
        d = {"intervals": [[rat_str(a), rat_str(b)] for a, b in self.intervals]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @staticmethod
    def from_json(d):
        return Box.make(
            [(mpq(a), mpq(b)) for a, b in d["intervals"]],
            d.get("labels"),
        )


@dataclass(frozen=True)
class BoundPair:
    lower: object
    upper: object

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower > upper")

    def excludes_zero(self):
        return self.lower > 0 or self.upper < 0

    def to_json(self):
        return [rat_str(self.lower), rat_str(self.upper)]


DISCARDED_POSITIVE = "DiscardedPositive"
DISCARDED_NEGATIVE = "DiscardedNegative"
MIRANDA_CERTIFIED = "MirandaCertified"
IDENTIFIED_LOWER_PERIOD = "IdentifiedLowerPeriod"


@dataclass
class Certificate:
    kind: str
    box: Box
    witness: dict = field(default_factory=dict)

    def to_json(self):
        return {"kind": self.kind, "box": self.box.to_json(), "witness": self.witness}

    @staticmethod
    def from_json(d):
        return Certificate(d["kind"], Box.from_json(d["box"]), d["witness"])

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @staticmethod
    def loads(s):
        return Certificate.from_json(json.loads(s))


# ---------------------------------------------------------------------------
# monomial corner bounds (box discard)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=128)
def _shifted(p: MPoly, xi):
    return p.shift(xi)


def _corner_powers(box: Box, xi, max_exps, powcache=None):
    """Per coordinate: (lo+xi)^e and (hi+xi)^e tables up to max_exps."""
    los, his = [], []
    for (a, b), me in zip(box.intervals, max_exps):
        u, v = a + xi, b + xi
        if powcache is not None:
            key_u, key_v = ("p", u, me), ("p", v, me)
            if key_u in powcache:
                pu = powcache[key_u]
            else:
                pu = [ONE]
                for _ in range(me):
                    pu.append(pu[-1] * u)
                powcache[key_u] = pu
            if key_v in powcache:
                pv = powcache[key_v]
            else:
                pv = [ONE]
                for _ in range(me):
                    pv.append(pv[-1] * v)
                powcache[key_v] = pv
        else:
            pu = [ONE]
            for _ in range(me):
                pu.append(pu[-1] * u)
            pv = [ONE]
            for _ in range(me):
                pv.append(pv[-1] * v)
        los.append(pu)
        his.append(pv)
    return los, his


def _check_shift(box: Box, xi):
    for a, _ in box.intervals:
        if not a + xi > 0:
            raise ShiftInsufficient(
                f"interval start {a} + xi {xi} is not strictly positive"
            )


def bound_on_box(p: MPoly, box: Box, xi, powcache=None) -> BoundPair:
    """Proven lower/upper bounds of p on the box.

    Works on the shifted polynomial p(x - xi) over the translated box in
    the strictly positive orthant, where every monomial is monotone in
    each coordinate: a positive-coefficient monomial is bounded below at
    the lower corner and above at the upper corner, a negative one the
    other way around.
    """
    xi = mpq(xi)
    _check_shift(box, xi)
    sh = _shifted(p, xi)
    nv = len(sh.vars)
    max_exps = [sh.degree_in(v) for v in sh.vars]
    max_exps = [m if m >= 0 else 0 for m in max_exps]
    los, his = _corner_powers(box, xi, max_exps, powcache)
    L = ZERO
    U = ZERO
    for e, c in sh.terms.items():
        at_lo = c
        at_hi = c
        for i in range(nv):
            if e[i]:
                at_lo *= los[i][e[i]]
                at_hi *= his[i][e[i]]
        if c > 0:
            L += at_lo
            U += at_hi
        else:
            L += at_hi
            U += at_lo
    return BoundPair(L, U)


def _bound_one_side(p: MPoly, box: Box, xi, side, powcache=None):
    """Only the lower ('L') or upper ('U') corner bound."""
    xi = mpq(xi)
    _check_shift(box, xi)
    sh = _shifted(p, xi)
    nv = len(sh.vars)
    max_exps = [max(sh.degree_in(v), 0) for v in sh.vars]
    los, his = _corner_powers(box, xi, max_exps, powcache)
    acc = ZERO
    want_lower = side == "L"
    for e, c in sh.terms.items():
        corners = los if (c > 0) == want_lower else his
        v = c
        for i in range(nv):
            if e[i]:
                v *= corners[i][e[i]]
        acc += v
    return acc


def discard_box(system, box: Box, xi, powcache=None):
    """Try to prove some system polynomial has constant sign on the box.

    Returns a Certificate (DiscardedPositive / DiscardedNegative) or None.
    Fully degenerate boxes are decided by exact evaluation.  For proper
    boxes the exact sign at the center selects which one-sided bound can
    possibly succeed (the center value pins the other side's sign).
    """
    if box.is_point:
        pt = [a for a, _ in box.intervals]
        for idx, p in enumerate(system):
            v = p.eval_rat(pt)
            if v != 0:
                kind = DISCARDED_POSITIVE if v > 0 else DISCARDED_NEGATIVE
                return Certificate(
                    kind,
                    box,
                    {
                        "poly_index": idx,
                        "xi": rat_str(mpq(xi)),
                        "exact_value": rat_str(v),
                        "degenerate": True,
                    },
                )
        return None
    mid = box.midpoint()
    for idx, p in enumerate(system):
        c = p.eval_rat(mid)
        if c == 0:
            continue
        side = "L" if c > 0 else "U"
        b = _bound_one_side(p, box, xi, side, powcache)
        if side == "L" and b > 0:
            return Certificate(
                DISCARDED_POSITIVE,
                box,
                {"poly_index": idx, "xi": rat_str(mpq(xi)), "lower": rat_str(b)},
            )
        if side == "U" and b < 0:
            return Certificate(
                DISCARDED_NEGATIVE,
                box,
                {"poly_index": idx, "xi": rat_str(mpq(xi)), "upper": rat_str(b)},
            )
    return None


def _subdivide_discard(system, box, xi, depth, powcache=None):
    """Bisect once per axis and retry the discard on every child, up to
    `depth` levels; a box dies only when all children die."""
    if depth <= 0:
        return None
    child_certs = []
    for ch in box.split_all_axes():
        c = discard_box(system, ch, xi, powcache)
        if c is None:
            c = _subdivide_discard(system, ch, xi, depth - 1, powcache)
            if c is None:
                return None
        child_certs.append(c)
    return Certificate(
        child_certs[0].kind,
        box,
        {
            "xi": rat_str(mpq(xi)),
            "subdivision": [c.to_json() for c in child_certs],
        },
    )


def sweep(system, isolations, xi, refine_depth: int = 0, workers: int = 1):
    """Run the discard over the full product of isolating intervals.

    isolations: one RootIsolation per coordinate.  Returns (survivors,
    certificates); survivors keep their 1-based label tuples and the list
    is deterministic in label order regardless of worker count.
    """
    coords = [iso.intervals for iso in isolations]
    labels = [range(1, len(c) + 1) for c in coords]
    boxes = []

    def build(prefix_iv, prefix_lb, k):
        if k == len(coords):
            boxes.append(Box(tuple(prefix_iv), tuple(prefix_lb)))
            return
        for lb, iv in zip(labels[k], coords[k]):
            build(prefix_iv + [iv], prefix_lb + [lb], k + 1)

    build([], [], 0)

    if workers > 1:
        from multiprocessing import Pool

        chunks = [(system, b, mpq(xi), refine_depth) for b in boxes]
        with Pool(workers) as pool:
            results = pool.map(_sweep_one, chunks, chunksize=64)
    else:
        powcache = {}
        results = [_sweep_one((system, b, mpq(xi), refine_depth), powcache) for b in boxes]

    survivors = []
    certificates = []
    for b, cert in zip(boxes, results):
        if cert is None:
            survivors.append(b)
        else:
            certificates.append(cert)
    return survivors, certificates


def _sweep_one(args, powcache=None):
    system, box, xi, refine_depth = args
    cert = discard_box(system, box, xi, powcache)
    if cert is None and refine_depth > 0:
        cert = _subdivide_discard(system, box, xi, refine_depth, powcache)
    return cert


# ---------------------------------------------------------------------------
# lower-period identification
# ---------------------------------------------------------------------------


def identify_lower_period(box: Box, fixed_param_poly: UPoly):
    """A diagonal-ish box is a lower-period (fixed point) candidate when
    every coordinate interval holds a root of the fixed-point parameter
    polynomial and all the intervals pairwise intersect."""
    los = [a for a, _ in box.intervals]
    his = [b for _, b in box.intervals]
    if not max(los) <= min(his):  # 1-d Helly: pairwise iff common point
        return None
    counts = []
    for a, b in box.intervals:
        if a == b:
            if fixed_param_poly.eval(a) != 0:
                return None
            counts.append("exact")
        else:
            c = count_roots(fixed_param_poly, a, b)
            if c != 1:
                return None
            counts.append(1)
    return Certificate(
        IDENTIFIED_LOWER_PERIOD,
        box,
        {
            "fixed_param_poly": fixed_param_poly.content_hash(),
            "interval_root_counts": counts,
        },
    )


# ---------------------------------------------------------------------------
# preconditioning
# ---------------------------------------------------------------------------


def precondition(system, box: Box, var_names=None):
    """g = A f with A the exact inverse Jacobian of f at the box midpoint;
    same zero set, near-identity linearization at the midpoint."""
    names = var_names or system[0].vars
    n = len(system)
    if len(names) != n:
        raise ValueError("need a square system")
    mid = box.midpoint()
    J = RatMatrix([[p.partial(v).eval_rat(mid) for v in names] for p in system])
    try:
        A = invert_exact(J)
    except SingularMatrix as e:
        raise SingularJacobian(str(e)) from None
    g = []
    for i in range(n):
        acc = MPoly.zero(system[0].vars)
        for j in range(n):
            if A.a[i][j] != 0:
                acc = acc + system[j] * A.a[i][j]
        g.append(acc)
    return g, A


# ---------------------------------------------------------------------------
# the one-parameter-family no-root lemma
# ---------------------------------------------------------------------------


def _family_discriminant(family: MPoly, alpha: str, x: str) -> UPoly:
    """Discriminant of the family with respect to x: a univariate in alpha.

    Res_x(G, dG/dx) via the modular engine (the inputs are bivariate with
    large rational coefficients), then the exact division by the leading
    coefficient; standard sign normalization."""
    from .modular import resultant_bivariate

    d = family.degree_in(x)
    res = resultant_bivariate(family, family.partial(x), x, alpha)
    lc = [c for c in family.to_univariate(x)][d].collapse()
    q, r = res.divmod(lc)
    assert r.is_zero, "discriminant division must be exact"
    sgn = -1 if (d * (d - 1) // 2) % 2 else 1
    return q * sgn


def _family_discriminant_parts(f1: MPoly, f2: MPoly, alpha: str, x: str):
    """(disc(f1), disc(f2), Res_x(f1, f2)): the discriminant of the product
    family is disc(f1) disc(f2) Res(f1,f2)^2 (up to a root-free constant
    factor in degenerate degrees), and its root set in alpha is the union
    of the parts' root sets."""
    from .modular import resultant_bivariate

    one = UPoly((1,))

    def disc_part(f):
        return _family_discriminant(f, alpha, x) if f.degree_in(x) >= 2 else one

    def cross():
        a, b = f1.degree_in(x), f2.degree_in(x)
        if a > 0 and b > 0:
            return resultant_bivariate(f1, f2, x, alpha)
        if a <= 0:
            base = f1.subs(x, 0).collapse() if x in f1.vars else f1.collapse()
            other = max(b, 0)
        else:
            base = f2.subs(x, 0).collapse() if x in f2.vars else f2.collapse()
            other = max(a, 0)
        out = one
        for _ in range(other):
            out = out * base
        return out if other else base

    return disc_part(f1), disc_part(f2), cross()


def _family_discriminant_product(f1: MPoly, f2: MPoly, alpha: str, x: str) -> UPoly:
    """Discriminant of a product family via
    disc(fg) = disc(f) disc(g) Res(f, g)^2,
    which is much cheaper than the direct route because the factor
    resultants obey far smaller coefficient bounds."""
    d1, d2, r12 = _family_discriminant_parts(f1, f2, alpha, x)
    return _assemble_product_disc(d1, d2, r12)


def _assemble_product_disc(d1: UPoly, d2: UPoly, r12: UPoly) -> UPoly:
    from .upoly import _zmul

    # multiply on primitive integer parts; the rational scales (all from
    # denominator clearing) are restored once at the end
    z1, s1 = d1.primitive_z()
    z2, s2 = d2.primitive_z()
    zr, sr = r12.primitive_z()
    prod = _zmul(_zmul(z1, z2), _zmul(zr, zr))
    return UPoly.from_z(prod) * (s1 * s2 * sr * sr)


def _count_union_real_roots(polys):
    """Number of distinct reals that are a root of at least one of the
    polynomials: per-polynomial certified isolation plus inclusion-
    exclusion over exact pairwise/triple gcd root counts."""
    from itertools import combinations

    from .upoly import gcd_poly

    polys = [p for p in polys if not p.is_zero and p.degree() > 0]
    total = 0
    coarse = mpq(1)
    for p in polys:
        total += len(isolate_roots(p, coarse, certify=True, refine=False))
    for a, b in combinations(range(len(polys)), 2):
        g = gcd_poly(polys[a], polys[b])
        if g.degree() > 0:
            total -= len(isolate_roots(g, coarse, certify=True, refine=False))
    if len(polys) == 3:
        g12 = gcd_poly(polys[0], polys[1])
        if g12.degree() > 0:
            g = gcd_poly(g12, polys[2])
            if g.degree() > 0:
                total += len(isolate_roots(g, coarse, certify=True, refine=False))
    return total


def _no_roots_on_closed(p: UPoly, lo, hi, tag, part):
    """Certify p has no roots in [lo, hi]; raises HypothesisFailed.

    Sturm whenever the full chain is affordable (the subresultant chain
    grows like degree x coefficient size); otherwise a Descartes
    zero-variation certificate (with a few interval splits) first and the
    streaming Sturm count as the last resort."""
    if p.is_zero:
        raise HypothesisFailed(part, tag, "identically zero")
    if p.eval(lo) == 0 or p.eval(hi) == 0:
        raise HypothesisFailed(part, tag, "vanishes at an interval endpoint")
    z, _ = p.primitive_z()
    work = p.degree() * max(abs(c).bit_length() for c in z)
    if p.degree() <= 64 and work <= 120_000:
        if count_roots(p, lo, hi) != 0:
            raise HypothesisFailed(part, tag, "has a root in the interval")
        return {"method": "sturm"}
    if descartes_no_root_certificate(p, lo, hi, max_splits=32):
        return {"method": "descartes"}
    if count_roots(p, lo, hi) != 0:
        raise HypothesisFailed(part, tag, "has a root in the interval")
    return {"method": "sturm-stream"}


def zeros2_no_roots(
    family: MPoly, lambda_interval, j_interval, alpha0, showcase=False, factors=None
):
    """No member of the one-parameter polynomial family has a root in J.

    family: bivariate, variables (alpha, x) in order.  Hypotheses:
      (i)  the specialization at alpha0 has no real roots in J;
      (ii) family(x=J.lo), family(x=J.hi) and the x-discriminant, all
           univariate in alpha, have no roots in Lambda.
    Then no root of any member enters J while alpha runs over Lambda.
    Returns a witness dict; raises HypothesisFailed otherwise.
    With showcase=True the witness also records total real-root counts
    (whole-line Sturm / exact isolation) for reporting.
    """
    alpha, x = family.vars
    lam_lo, lam_hi = mpq(lambda_interval[0]), mpq(lambda_interval[1])
    j_lo, j_hi = mpq(j_interval[0]), mpq(j_interval[1])
    alpha0 = mpq(alpha0)
    if not lam_lo <= alpha0 <= lam_hi:
        raise ValueError("alpha0 outside Lambda")
    w = {
        "alpha": alpha,
        "x": x,
        "alpha0": rat_str(alpha0),
        "lambda": [rat_str(lam_lo), rat_str(lam_hi)],
        "J": [rat_str(j_lo), rat_str(j_hi)],
    }

    spec = family.subs(alpha, alpha0).collapse()
    if spec.is_zero:
        raise HypothesisFailed("i", "specialization", "identically zero")
    if j_lo == j_hi:
        if spec.eval(j_lo) == 0:
            raise HypothesisFailed("i", "specialization", "root at the point J")
    else:
        w["spec"] = _no_roots_on_closed(spec, j_lo, j_hi, "specialization", "i")
    if showcase:
        w["spec_total_real_roots"] = count_roots_total(spec)

    checks = [
        ("G_at_J_lo", family.subs(x, j_lo).collapse()),
        ("G_at_J_hi", family.subs(x, j_hi).collapse()),
    ]
    disc_parts = None
    disc_single = None
    if family.degree_in(x) >= 2:
        if factors is not None:
            # disc(f g) = disc(f) disc(g) Res(f,g)^2: checking the parts is
            # equivalent (same root set) and far cheaper than the product
            d1, d2, r12 = _family_discriminant_parts(factors[0], factors[1], alpha, x)
            disc_parts = [d1, d2, r12]
            w["disc_degree"] = d1.degree() + d2.degree() + 2 * r12.degree()
            checks.extend(
                [("disc_factor_lo", d1), ("disc_factor_hi", d2), ("face_cross_resultant", r12)]
            )
        else:
            disc_single = _family_discriminant(family, alpha, x)
            w["disc_degree"] = disc_single.degree()
            checks.append(("discriminant", disc_single))
    for tag, poly in checks:
        if poly.is_zero:
            raise HypothesisFailed("ii", tag, "identically zero")
        if lam_lo == lam_hi:
            if poly.eval(lam_lo) == 0:
                raise HypothesisFailed("ii", tag, "vanishes at the point Lambda")
            w[tag] = {"method": "exact-eval"}
        else:
            w[tag] = _no_roots_on_closed(poly, lam_lo, lam_hi, tag, "ii")
    if showcase:
        if disc_parts is not None:
            w["disc_total_real_roots"] = _count_union_real_roots(disc_parts)
        elif disc_single is not None:
            w["disc_total_real_roots"] = len(isolate_roots(disc_single, mpq(1)))
        if not (j_lo == j_hi):
            prod = family.subs(x, j_lo).collapse() * family.subs(x, j_hi).collapse()
            w["endpoint_product_total_real_roots"] = count_roots_total(prod)
    return w


# ---------------------------------------------------------------------------
# Poincare-Miranda certification
# ---------------------------------------------------------------------------


def _sign(x):
    return (x > 0) - (x < 0)


def _face_by_bounding(gi_face: MPoly, face_box: Box, xi, depth=3, powcache=None):
    """Fallback: constant-sign proof of a face restriction by corner bounds
    with adaptive subdivision.  Returns +1 or -1, or None."""
    b = bound_on_box(gi_face, face_box, xi, powcache)
    if b.lower > 0:
        return 1
    if b.upper < 0:
        return -1
    if depth <= 0:
        return None
    signs = set()
    for ch in face_box.split_all_axes():
        s = _face_by_bounding(gi_face, ch, xi, depth - 1, powcache)
        if s is None:
            return None
        signs.add(s)
    if len(signs) == 1:
        return signs.pop()
    return None


def miranda_certify(g, box: Box, xi=30, showcase_component=None):
    """Certify that the (preconditioned) system g has a zero in the box by
    the Poincare-Miranda theorem: component i keeps a constant sign on each
    of the two faces x_i = L_i, U_i, with opposite signs.

    Face non-vanishing goes through the no-root family lemma applied to
    the product g_i(face_lo) * g_i(face_hi): of the two variables free on
    a face, the first in canonical order is the family parameter, the
    second the polynomial variable.  Signs are exact evaluations at the
    face centers.  A corner-bound subdivision proof is the fallback when
    the family hypotheses fail.
    """
    names = g[0].vars
    n = box.dim
    if len(g) != n:
        raise ValueError("dimension mismatch")
    comps = []
    for i in range(n):
        vi = names[i]
        lo_i, hi_i = box.intervals[i]
        gi_lo = g[i].subs(vi, lo_i)
        gi_hi = g[i].subs(vi, hi_i)
        rest = [j for j in range(n) if j != i]
        rest_names = [names[j] for j in rest]
        rest_mid = [box.midpoint()[j] for j in rest]
        s_lo = _sign(gi_lo.eval_rat(rest_mid))
        s_hi = _sign(gi_hi.eval_rat(rest_mid))
        detail = {"component": i, "sign_lo": s_lo, "sign_hi": s_hi}
        if s_lo == 0 or s_hi == 0 or s_lo == s_hi:
            raise FaceSignUndetermined(i, "both", "face-center signs not opposite")
        try:
            if n == 1:
                pass  # endpoint signs suffice (Bolzano)
            elif n == 2:
                (a, b) = box.intervals[rest[0]]
                for tag, q in (("lo", gi_lo.collapse()), ("hi", gi_hi.collapse())):
                    if q.is_zero:
                        raise HypothesisFailed("i", f"face_{tag}", "identically zero")
                    if a == b:
                        if q.eval(a) == 0:
                            raise HypothesisFailed("i", f"face_{tag}", "zero on face")
                    else:
                        _no_roots_on_closed(q, a, b, f"face_{tag}", "i")
                detail["method"] = "sturm-faces"
            elif n == 3:
                fam = gi_lo * gi_hi
                lam = box.intervals[rest[0]]
                J = box.intervals[rest[1]]
                alpha0 = (lam[0] + lam[1]) / 2
                w = zeros2_no_roots(
                    fam,
                    lam,
                    J,
                    alpha0,
                    showcase=(showcase_component == i),
                    factors=(gi_lo, gi_hi),
                )
                detail["method"] = "zeros2-product-family"
                detail["zeros2"] = w
            else:
                raise HypothesisFailed("i", "dimension", "no family construction")
        except HypothesisFailed as hf:
            fb_lo = _face_by_bounding(gi_lo, _face_box(box, i, lo_i), xi)
            fb_hi = _face_by_bounding(gi_hi, _face_box(box, i, hi_i), xi)
            if fb_lo is None or fb_hi is None or fb_lo == fb_hi:
                raise FaceSignUndetermined(i, "both", str(hf)) from hf
            detail["method"] = "corner-bound-fallback"
            detail["sign_lo"], detail["sign_hi"] = fb_lo, fb_hi
        comps.append(detail)
    return Certificate(
        MIRANDA_CERTIFIED,
        box,
        {"components": comps, "system_hashes": [p.content_hash() for p in g]},
    )


def _face_box(box: Box, i, value):
    ivs = list(box.intervals)
    del ivs[i]
    return Box(tuple(ivs), None)


# ---------------------------------------------------------------------------
# certificate replay
# ---------------------------------------------------------------------------


def replay(cert: Certificate, system=None, fixed_param_poly=None):
    """Re-run the checks recorded in a certificate; True iff they all still
    succeed.  Discards recompute the stored bound or exact value; Miranda
    re-certifies from the stored preconditioner context; identification
    recounts the parameter roots."""
    w = cert.witness
    if cert.kind in (DISCARDED_POSITIVE, DISCARDED_NEGATIVE):
        if "subdivision" in w:
            return all(
                replay(Certificate.from_json(cj), system) for cj in w["subdivision"]
            )
        p = system[w["poly_index"]]
        if w.get("degenerate"):
            v = p.eval_rat([a for a, _ in cert.box.intervals])
            return rat_str(v) == w["exact_value"] and (
                (v > 0) == (cert.kind == DISCARDED_POSITIVE)
            )
        xi = mpq(w["xi"])
        if cert.kind == DISCARDED_POSITIVE:
            b = _bound_one_side(p, cert.box, xi, "L")
            return b > 0 and rat_str(b) == w["lower"]
        b = _bound_one_side(p, cert.box, xi, "U")
        return b < 0 and rat_str(b) == w["upper"]
    if cert.kind == IDENTIFIED_LOWER_PERIOD:
        if fixed_param_poly.content_hash() != w["fixed_param_poly"]:
            return False
        return identify_lower_period(cert.box, fixed_param_poly) is not None
    if cert.kind == MIRANDA_CERTIFIED:
        if "preconditioner" in w:
            A = RatMatrix([[mpq(x) for x in row] for row in w["preconditioner"]])
            gsys = []
            for i in range(len(system)):
                acc = MPoly.zero(system[0].vars)
                for j in range(len(system)):
                    if A.a[i][j] != 0:
                        acc = acc + system[j] * A.a[i][j]
                gsys.append(acc)
        else:
            gsys = system
        if [p.content_hash() for p in gsys] != w["system_hashes"]:
            return False
        try:
            miranda_certify(gsys, cert.box)
        except (FaceSignUndetermined, HypothesisFailed):
            return False
        return True
    raise ValueError(f"unknown certificate kind {cert.kind}")
