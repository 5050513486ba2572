import json

from gmpy2 import mpq

from expected_values import (
    REF_O1_A_BRACKET,
    REF_O1_B_BRACKET,
    REF_ORBITS,
    REF_PARAM_INTERVALS,
    REF_SURVIVORS,
)
from orbitcert import landen as L
from orbitcert.arith import ctx
from orbitcert.certify import Box, Certificate, replay

fc = ctx(60)


def test_chain_degrees(chain_iso):
    chain, iso = chain_iso
    s = chain.degree_summary()
    assert s["d13_n"] == 37 and s["d13_r"] == 37
    assert s["d14_n"] == 47 and s["d14_r"] == 37
    assert s["d15"] == 2521
    assert s["d16"] == 1985
    assert s["gcd"] == 1087          # gcd degree
    assert s["gcd_valuation"] == 716  # the n^716 factor
    assert s["d17"] == 371


def test_isolation_matches_reference_intervals(chain_iso):
    chain, iso = chain_iso
    assert len(iso) == 16
    assert iso.sturm_certified
    assert iso.exact_roots == [mpq(-1), mpq(2)]
    # reference indexing: 14 non-exact roots ascending, then the exact roots
    for k, (ref_lo, ref_hi) in enumerate(REF_PARAM_INTERVALS):
        lo, hi = iso.intervals[k]
        assert hi - lo <= mpq(1, 10**20)
        # both isolate the same root to width < 1e-20: must intersect
        assert not (hi < ref_lo or lo > ref_hi), f"I{k+1} does not match"
    assert iso.intervals[14] == (mpq(-1), mpq(-1))
    assert iso.intervals[15] == (mpq(2), mpq(2))


def test_sweep_survivors(p3):
    st = p3.sweep_stats
    assert st["boxes"] == 4096
    assert st["discarded"] == 4080
    assert st["survivors"] == 16
    assert {tuple(l) for l in st["survivor_labels"]} == REF_SURVIVORS
    assert st["sweep_seconds"] < 120


def test_degenerate_survivor_killed_by_exact_evaluation(p3):
    discards = [c for c in p3.certificates if c.kind == "DiscardedPositive"]
    assert len(discards) == 1
    c = discards[0]
    assert c.box.labels == (16, 16, 15)
    assert c.witness["degenerate"]
    assert c.witness["poly_index"] == 1  # second system polynomial
    assert c.witness["exact_value"] == "2304/1"


def test_fixed_point_boxes_identified(p3):
    idf = [c for c in p3.certificates if c.kind == "IdentifiedLowerPeriod"]
    assert sorted(c.box.labels for c in idf) == [(9, 9, 9), (14, 14, 14), (16, 16, 16)]


def test_twelve_certified_boxes(p3):
    mir = [c for c in p3.certificates if c.kind == "MirandaCertified"]
    assert len(mir) == 12
    base = [c for c in mir if "components" in c.witness]
    rot = [c for c in mir if "rotation_of" in c.witness]
    assert len(base) == 4 and len(rot) == 8
    assert sorted(c.box.labels for c in base) == [
        (1, 5, 11), (2, 6, 12), (3, 7, 13), (4, 8, 10)]
    assert len(p3.parameter_boxes) == 12
    # the known index inconsistency in the source tables is flagged
    assert any("(4, 8, 10)" in n for n in p3.notes)


def test_showcase_counts(p3):
    base = next(
        c for c in p3.certificates
        if c.kind == "MirandaCertified" and c.box.labels == (1, 5, 11)
    )
    z = base.witness["components"][0]["zeros2"]
    assert z["spec_total_real_roots"] == 6
    assert z["endpoint_product_total_real_roots"] == 4
    assert z["disc_degree"] == 192
    assert z["disc_total_real_roots"] == 37
    # J and Lambda are the r- and n-intervals of the box
    assert z["alpha"] == "n" and z["x"] == "r"


def test_orbit_coordinates_match_reference_to_15_digits(p3):
    assert len(p3.orbits) == 4
    for orb, ref in zip(p3.orbits, REF_ORBITS):
        for pt, (ra, rb) in zip(orb["points"], ref):
            a = (mpq(pt["a"][0]) + mpq(pt["a"][1])) / 2
            b = (mpq(pt["b"][0]) + mpq(pt["b"][1])) / 2
            for got, want in ((a, fc.mpf(ra)), (b, fc.mpf(rb))):
                rel = abs(fc.mpf(got) - want) / abs(want)
                assert rel < fc.mpf(1e-14)


def test_orbit1_bracket_and_width(p3):
    pt = p3.orbits[0]["points"][0]
    a_lo, a_hi = mpq(pt["a"][0]), mpq(pt["a"][1])
    b_lo, b_hi = mpq(pt["b"][0]), mpq(pt["b"][1])
    assert fc.mpf(REF_O1_A_BRACKET[0]) - fc.mpf(1e-17) < fc.mpf(a_lo)
    assert fc.mpf(a_hi) < fc.mpf(REF_O1_A_BRACKET[1]) + fc.mpf(1e-17)
    assert fc.mpf(REF_O1_B_BRACKET[0]) - fc.mpf(1e-17) < fc.mpf(b_lo)
    assert fc.mpf(b_hi) < fc.mpf(REF_O1_B_BRACKET[1]) + fc.mpf(1e-17)
    # all localization widths, this orbit point has the widest
    assert max(a_hi - a_lo, b_hi - b_lo) <= mpq(3, 10**18)


def test_certified_orbits_are_genuine_3_cycles(p3):
    for orb in p3.orbits:
        pts = [
            (fc.mpf((mpq(p["a"][0]) + mpq(p["a"][1])) / 2),
             fc.mpf((mpq(p["b"][0]) + mpq(p["b"][1])) / 2))
            for p in orb["points"]
        ]
        cyc = L.g_map_iter(pts[0], 3)
        assert abs(cyc[0] - pts[0][0]) < 1e-12 and abs(cyc[1] - pts[0][1]) < 1e-12
        # successive images hit the other two points (in some cyclic order)
        img = L.g_map(pts[0])
        dists = [abs(img[0] - q[0]) + abs(img[1] - q[1]) for q in pts]
        assert min(dists[1:]) < 1e-12
        # pairwise separation: genuinely minimal period 3
        for i in range(3):
            for j in range(i + 1, 3):
                d = abs(pts[i][0] - pts[j][0]) + abs(pts[i][1] - pts[j][1])
                assert d > 0.1


def test_orbit_bounds_cases():
    from orbitcert.landen import orbit_bounds

    a_bp, b_bp = orbit_bounds(Box.make([(1, 1), (5, 5), (1, 1)]))
    assert (a_bp.lower, a_bp.upper) == (-6, -6)
    assert (b_bp.lower, b_bp.upper) == (5, 5)
    a_bp, b_bp = orbit_bounds(Box.make([(1, 1), (1, 1)]))
    assert (a_bp.lower, a_bp.upper) == (-6, -6)
    # positive-r monotonicity case
    a_bp, b_bp = orbit_bounds(Box.make([(1, 2), (mpq(1, 2), 1)]))
    assert a_bp.lower == 1 - 1 - 2 - 16 and a_bp.upper == 8 - mpq(1, 2) - 2 - 4
    import pytest

    with pytest.raises(L.ZeroInR):
        orbit_bounds(Box.make([(1, 2), (-1, 1)]))


def test_certificates_replay(p3, cache):
    d10, d11, d12 = L.system_period3()
    system = [d10, d11, d12]
    d4 = L.fixed_param_poly()
    replayed = 0
    for c in p3.certificates:
        c2 = Certificate.loads(c.dumps())  # serialization round trip
        if c2.kind == "DiscardedPositive":
            assert replay(c2, system)
            replayed += 1
        elif c2.kind == "IdentifiedLowerPeriod":
            assert replay(c2, fixed_param_poly=d4)
            replayed += 1
        elif c2.kind == "MirandaCertified" and "components" in c2.witness:
            assert replay(c2, system)
            replayed += 1
        elif "rotation_of" in c2.witness:
            # rotation transport: the base certificate must exist and the
            # labels must be the stated rotation of its box
            base = next(
                b for b in p3.certificates
                if b.kind == "MirandaCertified"
                and b.box.labels == tuple(c2.witness["rotation_of"])
            )
            k = c2.witness["shift"]
            assert base.box.rotate(k).labels == c2.box.labels
            replayed += 1
    assert replayed == len(p3.certificates) == 16


def test_sweep_discard_certificates_sound(cache):
    # re-run a small deterministic slice of the sweep and sample-test the
    # discard bound soundness on random points inside each discarded box
    import random

    from orbitcert.certify import discard_box

    chain, iso = L.period3_isolation(cache)
    d10, _, _ = L.system_period3()
    rng = random.Random(42)
    tested = 0
    labels = [(1, 1, 1), (2, 9, 14), (16, 1, 8), (7, 7, 7), (3, 13, 5)]
    for lab in labels:
        box = Box(tuple(iso.intervals[i - 1] for i in lab), lab)
        cert = discard_box([d10], box, 30)
        assert cert is not None, lab
        lo_or_up = cert.witness.get("lower") or cert.witness.get("upper")
        bound = mpq(lo_or_up)
        for _ in range(50):
            pt = [a + (b - a) * mpq(rng.randint(0, 128), 128) for a, b in box.intervals]
            v = d10.eval_rat(pt)
            if cert.kind == "DiscardedPositive":
                assert v >= bound > 0
            else:
                assert v <= bound < 0
        tested += 1
    assert tested == len(labels)


def test_pipeline_result_serializes(p3):
    doc = json.dumps(p3.to_json(), sort_keys=True)
    assert "parameter_boxes" in doc and "certificates" in doc


def test_eliminants_vanish_on_certified_boxes(p3, chain_iso):
    # any solution of the coupled system zeroes both eliminants, so their
    # interval evaluation over each certified box must not exclude 0
    from orbitcert.certify import bound_on_box

    chain, iso = chain_iso
    for box in p3.parameter_boxes:
        n_iv, r_iv = box.intervals[1], box.intervals[2]
        nr_box = Box.make([n_iv, r_iv])
        for elim in (chain.d13, chain.d14):
            bp = bound_on_box(elim, nr_box, 30)
            assert bp.lower <= 0 <= bp.upper, box.labels


def test_miranda_boxes_contain_newton_limits(p3):
    # independent numeric confirmation: a 60-digit Newton iteration from
    # each certified box midpoint converges inside the box with tiny residual
    from orbitcert.arith import ctx

    fc = ctx(60)
    d10, d11, d12 = L.system_period3()
    system = [d10, d11, d12]
    names = d10.vars

    def newton3(start):
        x = [fc.mpf(v) for v in start]
        for _ in range(80):
            F = [p.eval_float(x, fc) for p in system]
            if sum(abs(v) for v in F) < fc.mpf(10) ** -45:
                break
            J = [[p.partial(v).eval_float(x, fc) for v in names] for p in system]
            det = (
                J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1])
                - J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0])
                + J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0])
            )
            assert det != 0
            adj = [
                [
                    (J[(i + 1) % 3][(j + 1) % 3] * J[(i + 2) % 3][(j + 2) % 3]
                     - J[(i + 1) % 3][(j + 2) % 3] * J[(i + 2) % 3][(j + 1) % 3])
                    for i in range(3)
                ]
                for j in range(3)
            ]
            x = [x[i] - sum(adj[i][j] * F[j] for j in range(3)) / det for i in range(3)]
        return x, sum(abs(p.eval_float(x, fc)) for p in system)

    bases = [c.box for c in p3.certificates
             if c.kind == "MirandaCertified" and "components" in c.witness]
    assert len(bases) == 4
    for box in bases:
        x, resid = newton3(box.midpoint())
        assert resid < fc.mpf(10) ** -40
        for xi, (lo, hi) in zip(x, box.intervals):
            assert fc.mpf(lo) <= xi <= fc.mpf(hi)
