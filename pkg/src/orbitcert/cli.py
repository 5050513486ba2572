"""Command-line front end.

Subcommands: fixed-points, period, manifold, homoclinic, integral-check,
classify, cache.  Reports are JSON (exact rationals as "num/den" strings),
CSV tables, or plain text.  Exit codes: 0 success, 2 certification
failure, 3 numeric non-convergence, 4 bad configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from gmpy2 import mpq

from . import __version__
from .arith import ctx
from .cache import Cache, default_cache_dir

EXIT_OK = 0
EXIT_CERTIFICATION = 2
EXIT_NUMERIC = 3
EXIT_CONFIG = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _build_parser():
    p = _Parser(prog="orbitcert", description=__doc__)
    p.add_argument("--version", action="version", version=f"orbitcert {__version__}")
    p.add_argument("--precision", type=int, default=60, help="working decimal digits (>= 30)")
    p.add_argument("--isolation-width", default=None,
                   help="isolating interval width bound (default: pipeline-specific, <= 1e-20)")
    p.add_argument("--shift-xi", type=int, default=30, help="positivity shift for corner bounds")
    p.add_argument("--cache-dir", default=None, help="cache directory (default: ORBITCERT_CACHE_DIR or ~/.cache/orbitcert)")
    p.add_argument("--no-cache", action="store_true", help="disable the disk cache")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--workers", type=int, default=1, help="sweep worker processes")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("fixed-points", help="the three fixed points with classifications")

    sp = sub.add_parser("period", help="periodic-point pipelines")
    sp.add_argument("p", type=int, choices=(2, 3))

    sm = sub.add_parser("manifold", help="local unstable manifold coefficients")
    sm.add_argument("--order", type=int, default=5)
    sm.add_argument("--emit-curves", metavar="PATH", default=None,
                    help="write manifold / D3 / D4 curve samples as CSV")

    sub.add_parser("homoclinic", help="homoclinic and forbidden-set points")

    si = sub.add_parser("integral-check", help="invariance of the integral under the 5-d step")
    si.add_argument("--samples", type=int, default=10)
    si.add_argument("--tol", default="1e-9")

    sc = sub.add_parser("classify", help="numeric orbit-fate classification")
    sc.add_argument("--a", required=True)
    sc.add_argument("--b", required=True)
    sc.add_argument("--iters", type=int, default=200)

    scache = sub.add_parser("cache", help="inspect or clear the cache")
    scache.add_argument("action", choices=("inspect", "clear"))
    return p


def _validate(args):
    if args.precision < 30:
        raise SystemExit(EXIT_CONFIG)
    if args.isolation_width is not None:
        w = mpq(_sci_to_rat(args.isolation_width))
        if not (0 < w < 1):
            raise SystemExit(EXIT_CONFIG)


def _sci_to_rat(s):
    s = str(s)
    if "e" in s or "E" in s:
        mant, exp = s.lower().split("e")
        exp = int(exp)
        m = mpq(mant)
        return m * mpq(10) ** exp if exp >= 0 else m / mpq(10) ** (-exp)
    return mpq(s)


def _emit(args, command, result, tables=None):
    """tables: {name: (header, rows)} used by the CSV format."""
    if args.format == "json":
        doc = {
            "command": command,
            "config": {
                "precision": args.precision,
                "isolation_width": str(args.isolation_width),
                "shift_xi": args.shift_xi,
                "format": args.format,
                "workers": args.workers,
            },
            "result": result,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
        }
        print(json.dumps(doc, sort_keys=True, indent=1))
    elif args.format == "csv" and tables:
        out = io.StringIO()
        w = csv.writer(out)
        for name, (header, rows) in tables.items():
            w.writerow([f"# {name}"])
            w.writerow(header)
            w.writerows(rows)
        sys.stdout.write(out.getvalue())
    else:
        _emit_text(command, result)


def _emit_text(command, result, indent=0):
    pad = " " * indent
    if isinstance(result, dict):
        for k, v in result.items():
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _emit_text(command, v, indent + 2)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(result, list):
        for v in result:
            _emit_text(command, v, indent)
            if isinstance(v, (dict, list)):
                print()
    else:
        print(f"{pad}{result}")


def cmd_fixed_points(args, cache):
    from . import landen

    records = landen.fixed_points(args.precision)
    result = [r.to_json() for r in records]
    rows = [[r.name, str(r.point[0]), str(r.point[1]), r.classification] for r in records]
    return result, {"fixed_points": (["name", "a", "b", "classification"], rows)}


def cmd_period(args, cache):
    from . import landen

    if args.p == 2:
        rep = landen.period2_nonexistence(cache)
        if not rep.no_minimal_period2:
            print("period-2 elimination FAILED", file=sys.stderr)
            raise SystemExit(EXIT_CERTIFICATION)
        result = rep.to_json()
        result["conclusion"] = "no minimal period-2 points"
        return result, {
            "period2_candidates": (
                ["pair", "method", "outcome"],
                [[" ".join(r["pair"]), r["method"], r["outcome"]] for r in rep.candidates],
            )
        }
    res = landen.period3_pipeline(
        cache,
        xi=args.shift_xi,
        width=_sci_to_rat(args.isolation_width) if args.isolation_width else None,
        workers=args.workers,
    )
    rows = []
    for i, orb in enumerate(res.orbits, start=1):
        for j, pt in enumerate(orb["points"], start=1):
            rows.append(
                [
                    f"O{i}",
                    j,
                    pt["a"][0],
                    pt["a"][1],
                    pt["b"][0],
                    pt["b"][1],
                    pt["a_decimal"],
                    pt["b_decimal"],
                ]
            )
    return res.to_json(), {
        "orbit_coordinates": (
            ["orbit", "point", "a_lo", "a_hi", "b_lo", "b_hi", "a_decimal", "b_decimal"],
            rows,
        )
    }


def cmd_manifold(args, cache):
    from . import manifold

    center, E, jet = manifold.saddle_frame(args.precision, args.order)
    result = {
        "P2": [str(center[0]), str(center[1])],
        "lambda1": str(E.l1),
        "lambda2": str(E.l2),
        "w": {str(k): str(v) for k, v in sorted(jet.coeffs.items())},
        "residual_bound": str(jet.residual_bound),
    }
    if args.emit_curves:
        _write_curves(args.emit_curves, center, E, jet, args.precision)
        result["curves_csv"] = args.emit_curves
    rows = [[k, str(v)] for k, v in sorted(jet.coeffs.items())]
    return result, {"manifold_coefficients": (["k", "w_k"], rows)}


def _write_curves(path, center, E, jet, digits):
    """Sample the truncated unstable manifold and the D3/D4 residuals along
    it (plot data; the zero crossings are the curve intersections)."""
    from . import manifold

    fc = ctx(digits)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["kind", "r", "a", "b", "value"])
        n = 400
        for i in range(n + 1):
            r = fc.mpf(-3.5) + fc.mpf(4.5) * i / n
            a, b = manifold.param_Wu(r, jet, E, center, digits)
            w.writerow(["manifold", str(r), str(a), str(b), ""])
            try:
                w.writerow(["D3_on_manifold", str(r), str(a), str(b),
                            str(manifold.eval_D3((a, b), digits))])
            except Exception:
                pass
            w.writerow(["D4_on_manifold", str(r), str(a), str(b),
                        str(manifold.eval_D4((a, b), digits))])


def cmd_homoclinic(args, cache):
    from . import manifold

    rep = manifold.homoclinic_report(args.precision)
    return rep.to_json(), None


def cmd_integral_check(args, cache):
    import random

    from . import landen

    fc = ctx(args.precision)
    tol = fc.mpf(str(args.tol))
    rng = random.Random(20260808)
    rows = []
    worst = fc.mpf(0)
    for i in range(args.samples):
        s = (
            3 + rng.uniform(-1.5, 1.5),
            3 + rng.uniform(-1.5, 1.5),
            rng.uniform(-2, 2),
            rng.uniform(-2, 2),
            rng.uniform(-2, 2),
        )
        i0 = landen.integral_I(s, tol=tol, digits=args.precision)
        i1 = landen.integral_I(landen.landen5_step(s, args.precision), tol=tol, digits=args.precision)
        defect = abs(i1 - i0)
        worst = max(worst, defect)
        rows.append([i, str(defect)])
    result = {
        "samples": args.samples,
        "tol": str(args.tol),
        "max_invariance_defect": str(worst),
        "within_10_tol": bool(worst < 10 * tol),
    }
    return result, {"integral_invariance": (["sample", "defect"], rows)}


def cmd_classify(args, cache):
    from . import landen

    res = landen.classify_stable_set(
        (mpq(_sci_to_rat(args.a)), mpq(_sci_to_rat(args.b))), args.iters, args.precision
    )
    return res.to_json(), None


def cmd_cache(args, cache):
    if args.action == "clear":
        n = cache.clear()
        return {"cleared": n, "dir": str(cache.root)}, None
    return {
        "dir": str(cache.root),
        "entries": [{"name": n, "bytes": s} for n, s in cache.entries()],
    }, None


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        _validate(args)
    except (ValueError, SystemExit):
        return EXIT_CONFIG
    root = args.cache_dir or os.environ.get("ORBITCERT_CACHE_DIR") or default_cache_dir()
    cache = Cache(root, enabled=not args.no_cache)
    handlers = {
        "fixed-points": cmd_fixed_points,
        "period": cmd_period,
        "manifold": cmd_manifold,
        "homoclinic": cmd_homoclinic,
        "integral-check": cmd_integral_check,
        "classify": cmd_classify,
        "cache": cmd_cache,
    }
    from .certify import FaceSignUndetermined, HypothesisFailed
    from .landen import FactorizationMismatch
    from .manifold import NoConvergence, NotHyperbolicSaddle

    try:
        out = handlers[args.command](args, cache)
    except (FaceSignUndetermined, HypothesisFailed, FactorizationMismatch, AssertionError) as e:
        print(f"certification failure [{args.command}]: {e}", file=sys.stderr)
        return EXIT_CERTIFICATION
    except (NoConvergence, NotHyperbolicSaddle) as e:
        print(f"numeric failure [{args.command}]: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except SystemExit as e:
        return int(e.code or 0)
    result, tables = out if isinstance(out, tuple) else (out, None)
    _emit(args, args.command, result, tables)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
