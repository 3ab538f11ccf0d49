"""Command-line front end.

    qdilog verify [--case ID ...] [--degree N] [--format text|json] [--out PATH]
    qdilog order --case A2 --count 5 [--side -|+] [--row R]
    qdilog root-vector --case A2 --family md-a2 --level 3
    qdilog expand --case A1 --side reversed --degree 6
    qdilog selftest

Exit codes: 0 success, 1 an identity failed to verify, 2 usage error.
QDILOG_THREADS caps the number of worker processes used by `verify`.
"""

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import commtree, identities, rootsys, skewalg, theta
from .qrat import QScalar, q_power


def _threads():
    try:
        return max(1, int(os.environ.get("QDILOG_THREADS", "1")))
    except ValueError:
        return 1


def _verify_one(args):
    ident_id, degree = args
    return identities.verify(identities.IdentityCase.get(ident_id, degree))


def run_verify(ids, degree, threads=1):
    jobs = [(i, degree) for i in ids]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
            return list(pool.map(_verify_one, jobs))
    return [_verify_one(j) for j in jobs]


# -- property suites ----------------------------------------------------------

def suite_convexity(length=50):
    """Window convexity of every row prefix, both sides, every case."""
    bad = []
    for cid in rootsys.CASE_IDS:
        case = rootsys.get_case(cid)
        for side, params in (("-", case.minus), ("+", case.plus)):
            for r in range(len(params.rows)):
                roots = [tuple(x) for x in rootsys.row_roots(case, side, r, length)]
                if not rootsys.window_convex(roots):
                    bad.append("%s %s row %d" % (cid, side, r))
    return bad


def _random_skew(rng, n, bound=2):
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            B[i][j] = rng.randint(-bound, bound)
            B[j][i] = -B[i][j]
    return B


def suite_psi_R(samples=100, seed=1):
    """psi_R sends :y^m: to :x^{Rm}: and is multiplicative on normal monomials."""
    rng = random.Random(seed)
    bad = []
    N = 40
    for k in range(samples):
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
        R = [[rng.randint(0, 2) for _ in range(cols)] for _ in range(rows)]
        for j in range(cols):
            if not any(R[a][j] for a in range(rows)):
                R[rng.randrange(rows)][j] = 1
        Bp = _random_skew(rng, rows)
        B = [[sum(R[a][i] * Bp[a][b] * R[b][j] for a in range(rows) for b in range(rows))
              for j in range(cols)] for i in range(cols)]
        src, dst = skewalg.SkewRing.from_B(B), skewalg.SkewRing.from_B(Bp)
        m1 = [rng.randint(0, 2) for _ in range(cols)]
        m2 = [rng.randint(0, 2) for _ in range(cols)]
        image = lambda m: [sum(R[a][j] * m[j] for j in range(cols)) for a in range(rows)]
        a = theta.normal_monomial(src, N, m1)
        b = theta.normal_monomial(src, N, m2)
        ok = skewalg.psi_R(a, R, dst, N) == theta.normal_monomial(dst, N, image(m1))
        ok = ok and skewalg.psi_R(a * b, R, dst, N) == skewalg.psi_R(a, R, dst, N) * skewalg.psi_R(b, R, dst, N)
        if not ok:
            bad.append("sample %d: R=%s m=%s" % (k, R, m1))
    return bad


def _random_series(rng, ring, N, terms=4):
    out = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, 2) for _ in range(ring.n))
        c = QScalar(rng.randint(-3, 3)) * q_power(rng.randint(-3, 3))
        if rng.random() < 0.3:
            c = c / (q_power(1) - q_power(-1))
        out[e] = out.get(e, QScalar(0)) + c
    return skewalg.SkewSeries(ring, N, out)


def suite_ring_laws(samples=100, seed=2):
    """Associativity, distributivity and units for truncated skew series."""
    rng = random.Random(seed)
    bad = []
    N = 5
    for k in range(samples):
        n = rng.randint(1, 3)
        ring = skewalg.SkewRing.from_B(_random_skew(rng, n))
        a, b, c = (_random_series(rng, ring, N) for _ in range(3))
        one = skewalg.SkewSeries.one(ring, N)
        laws = ((a * b) * c == a * (b * c),
                a * (b + c) == a * b + a * c,
                (a + b) * c == a * c + b * c,
                a * one == a and one * a == a,
                a + (-a) == skewalg.SkewSeries.zero(ring, N),
                a + b == b + a)
        if not all(laws):
            bad.append("sample %d: law %d" % (k, laws.index(False)))
    return bad


SUITES = (("convexity", suite_convexity), ("psi_R", suite_psi_R), ("ring laws", suite_ring_laws))


# -- subcommands --------------------------------------------------------------

def cmd_verify(args, out):
    reports = run_verify(args.case or list(identities.IDENTITY_IDS), args.degree, _threads())
    if args.format == "json":
        body = [r.to_json() for r in reports]
        out.write(json.dumps(body[0] if len(body) == 1 else body, indent=2) + "\n")
    else:
        for r in reports:
            out.write(r.text() + "\n")
    return 0 if all(r.equal for r in reports) else 1


def cmd_order(args, out):
    case = rootsys.get_case(args.case)
    roots = rootsys.row_roots(case, args.side, args.row, args.count)
    out.write(", ".join(rootsys.root_label(case.cartan, r) for r in roots) + "\n")
    return 0


def cmd_root_vector(args, out):
    out.write(str(commtree.closed_form_tree(args.case, args.family, args.level)) + "\n")
    return 0


def cmd_expand(args, out):
    s = theta.theta_image(args.case.upper(), args.side, N=args.degree)
    body = {"case": args.case.upper(), "side": args.side, "degree": args.degree,
            "commutation": [list(r) for r in s.ring.M], "terms": s.to_json()}
    out.write(json.dumps(body) + "\n")
    return 0


def cmd_selftest(args, out):
    status = 0
    for name, fn in SUITES:
        t0 = time.perf_counter()
        bad = fn()
        ms = int((time.perf_counter() - t0) * 1000)
        out.write("%-10s %s  %d ms\n" % (name, "ok" if not bad else "FAILED", ms))
        for b in bad[:5]:
            out.write("  " + b + "\n")
        status = status or (1 if bad else 0)
    return status


def _case_id(text):
    if text.upper() not in rootsys.CASE_IDS:
        raise argparse.ArgumentTypeError("unknown case %r (choose from %s)" % (text, ", ".join(rootsys.CASE_IDS)))
    return text.upper()


def _identity_id(text):
    try:
        return identities.IdentityCase.get(text).id
    except KeyError:
        raise argparse.ArgumentTypeError("unknown identity %r (choose from %s)"
                                         % (text, ", ".join(identities.IDENTITY_IDS)))


def _degree(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("degree must be >= 0")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="qdilog", description="Verify quantum dilogarithm identities.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="expand both sides of identities and compare")
    v.add_argument("--case", nargs="+", type=_identity_id, metavar="ID")
    v.add_argument("--degree", type=_degree, default=identities.DEFAULT_DEGREE)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out", metavar="PATH")
    v.set_defaults(fn=cmd_verify)

    o = sub.add_parser("order", help="print a prefix of a convex-order row")
    o.add_argument("--case", type=_case_id, required=True)
    o.add_argument("--count", type=_degree, required=True)
    o.add_argument("--side", choices=("-", "+"), default="-")
    o.add_argument("--row", type=int, default=0)
    o.set_defaults(fn=cmd_order)

    r = sub.add_parser("root-vector", help="print a closed-form root vector tree")
    r.add_argument("--case", type=_case_id, required=True)
    r.add_argument("--family", required=True)
    r.add_argument("--level", type=int, required=True)
    r.set_defaults(fn=cmd_root_vector)

    e = sub.add_parser("expand", help="expand a product formula side as JSON")
    e.add_argument("--case", type=_case_id, required=True)
    e.add_argument("--side", choices=theta.SIDES, required=True)
    e.add_argument("--degree", type=_degree, default=identities.DEFAULT_DEGREE)
    e.set_defaults(fn=cmd_expand)

    s = sub.add_parser("selftest", help="run the property suites")
    s.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "order":
        params = rootsys.get_case(args.case).minus if args.side == "-" else rootsys.get_case(args.case).plus
        if not 0 <= args.row < len(params.rows):
            parser.error("row must be in 0..%d" % (len(params.rows) - 1))
    out_path = getattr(args, "out", None)
    try:
        if out_path:
            with open(out_path, "w") as fh:
                return args.fn(args, fh)
        return args.fn(args, sys.stdout)
    except (KeyError, ValueError) as exc:
        print("qdilog: error: %s" % (exc.args[0] if exc.args else exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
