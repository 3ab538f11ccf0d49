"""Catalog of the verifiable identities and the verification harness."""

import time
from dataclasses import dataclass, field

from .qrat import q_power
from .skewalg import (SkewSeries, chi_rewrite, dilog_E, psi_R, quad,
                      series_inverse, w_ring, x_ring)
from .theta import quiver_for, theta_image, normal_monomial

CASE_NAMES = ("A1", "A2", "A3", "D4")
IDENTITY_IDS = tuple("%s-y" % c for c in CASE_NAMES) + tuple("%s-dgs" % c for c in CASE_NAMES)
DEFAULT_DEGREE = 12

# substitutions y_i -> :x^{R[:, i]}:
R_MATRICES = {
    "A1": ((0, 2), (1, 3)),
    "A2": ((0, 1, 1), (1, 2, 1)),
    "A3": ((0, 1, 0, 1), (1, 1, 1, 1)),
    # y_2 -> :x_1: ; the printed matrix has y_2 -> :x_1 x_2^2: (see R_D4_PRINTED)
    "D4": ((0, 0, 1, 0, 0), (1, 1, 0, 1, 1)),
}
R_D4_PRINTED = ((0, 0, 1, 0, 0), (1, 1, 2, 1, 1))


# -- the (w_1, w_2) side ----------------------------------------------------------

class OutOfRing(ValueError):
    pass


def u_argument(m, n):
    """(scalar, w-exponents) with scalar * w^v = q^{-mn} x_1^m x_2^n = :w^{(m, n+2m)}:."""
    if n + 2 * m < 0 or m < 0:
        raise OutOfRing("U_{%d,%d} leaves Q(q)[[x1/x2^2, x2]]" % (m, n))
    v = (m, n + 2 * m)
    return q_power(quad(w_ring().normal_lower, v, v)), v


def build_U(m, n, ring=None, N=DEFAULT_DEGREE):
    ring = ring or w_ring()
    c, v = u_argument(m, n)
    return dilog_E(SkewSeries.monomial(ring, N, v, c))


def dgs_block(ring, N):
    """E(-q x_1^2)^-1 E(-q^-1 x_1^2)^-1 with x_1^2 = :w_1^2 w_2^4:."""
    c, v = u_argument(2, 0)
    X = SkewSeries.monomial(ring, N, v, c)
    return series_inverse(dilog_E(X.scale(-q_power(1)))) * series_inverse(dilog_E(X.scale(-q_power(-1))))


def _w_degree(m, n):
    return 3 * m + n


def dgs_factors(case, side, N):
    """Factor list (left to right): ('U', m, n) or ('block',), dropping factors above degree N."""
    U = lambda m, n, k=1: [("U", m, n)] * k
    out = []
    if side == "lhs":
        out = {"A1": U(2, -1) + U(0, 1),
               "A2": U(1, -1) + U(1, 0) + U(0, 1),
               "A3": U(1, -1, 2) + U(0, 1, 2),
               "D4": U(1, -2) + U(0, 1, 4)}[case]
        return out
    K = N + 2
    if case == "A1":
        for k in range(K):
            out += U(2 * k, 1)
        out += [("block",)]
        for k in range(K, 0, -1):
            out += U(2 * k, -1)
    elif case in ("A2", "A3"):
        p = 1 if case == "A2" else 2
        for k in range(K):
            out += U(k, 1, p)
        out += U(1, 0, 2 * p) + [("block",)]
        for k in range(K, 0, -1):
            out += U(k, -1, p)
    elif case == "D4":
        for k in range(K):
            out += U(k, 1, 4) + U(2 * k + 1, 2)
        out += U(1, 0, 6) + [("block",)]
        for k in range(K, 0, -1):
            out += U(k, -1, 4) + U(2 * k - 1, -2)
    else:
        raise ValueError("unknown case %r" % case)
    return [f for f in out if f[0] == "block" or _w_degree(f[1], f[2]) <= N]


def dgs_product(case, side, N):
    ring = w_ring()
    acc = SkewSeries.one(ring, N)
    cache = {}
    for f in dgs_factors(case, side, N):
        if f not in cache:
            cache[f] = dgs_block(ring, N) if f[0] == "block" else build_U(f[1], f[2], ring, N)
        acc = acc * cache[f]
    return acc


# -- golden factor lists (y-ring) ---------------------------------------------

def _golden_a1(N):
    left = [(m + 1, m) for m in range(N + 1)]
    right = [(m, m + 1) for m in range(N, -1, -1)]
    return left + ["block"] + right


def _golden_a2(N):
    left = []
    for m in range(N + 1):
        left += [(m + 1, m, m), (m + 1, m + 1, m)]
    right = []
    for m in range(N, -1, -1):
        right += [(m, m + 1, m + 1), (m, m, m + 1)]
    return left + [(1, 0, 1), "block", (0, 1, 0)] + right


def _golden_a3(N):
    X = lambda m: [(m + 1, m, m, m), (m, m, m + 1, m), (m + 1, m + 1, m + 1, m), (m + 1, m, m + 1, m + 1)]
    Y = lambda m: [(m + 1, m + 1, m, m + 1), (m, m + 1, m + 1, m + 1), (m, m, m, m + 1), (m, m + 1, m, m)]
    left = [r for m in range(N + 1) for r in X(m)]
    right = [r for m in range(N, -1, -1) for r in Y(m)]
    return left + [(0, 1, 1, 0), (0, 0, 1, 1), "block", (1, 1, 0, 0), (1, 0, 0, 1)] + right


def _golden_d4(N):
    def X(m):
        return [(m + 1, m, 2 * m, m, m), (m, m + 1, 2 * m, m, m), (m, m, 2 * m, m + 1, m),
                (m, m, 2 * m, m, m + 1), (2 * m + 1, 2 * m + 1, 4 * m + 1, 2 * m + 1, 2 * m + 1),
                (m, m + 1, 2 * m + 1, m + 1, m + 1), (m + 1, m, 2 * m + 1, m + 1, m + 1),
                (m + 1, m + 1, 2 * m + 1, m, m + 1), (m + 1, m + 1, 2 * m + 1, m + 1, m),
                (2 * m + 2, 2 * m + 2, 4 * m + 3, 2 * m + 2, 2 * m + 2)]

    def Y(m):
        # the fourth factor is printed as a repeat of the first; (m+1, m, ...) is meant
        return [(m, m + 1, 2 * m + 2, m + 1, m + 1), (m + 1, m + 1, 2 * m + 2, m + 1, m),
                (m + 1, m + 1, 2 * m + 2, m, m + 1), (m + 1, m, 2 * m + 2, m + 1, m + 1),
                (2 * m + 1, 2 * m + 1, 4 * m + 3, 2 * m + 1, 2 * m + 1), (m + 1, m, 2 * m + 1, m, m),
                (m, m, 2 * m + 1, m, m + 1), (m, m, 2 * m + 1, m + 1, m), (m, m + 1, 2 * m + 1, m, m),
                (2 * m, 2 * m, 4 * m + 1, 2 * m, 2 * m)]
    left = [r for m in range(N + 1) for r in X(m)]
    right = [r for m in range(N, -1, -1) for r in Y(m)]
    mid = [(0, 0, 1, 1, 1), (0, 1, 1, 0, 1), (0, 1, 1, 1, 0), "block",
           (1, 0, 1, 0, 1), (1, 0, 1, 1, 0), (1, 1, 1, 0, 0)]
    return left + mid + right


_GOLDEN_LHS = {
    "A1": [(0, 1), (1, 0)],
    "A2": [(0, 0, 1), (0, 1, 0), (1, 0, 0)],
    "A3": [(0, 1, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0), (1, 0, 0, 0)],
    "D4": [(0, 0, 1, 0, 0), (0, 0, 0, 0, 1), (0, 0, 0, 1, 0), (0, 1, 0, 0, 0), (1, 0, 0, 0, 0)],
}
_GOLDEN_RHS = {"A1": _golden_a1, "A2": _golden_a2, "A3": _golden_a3, "D4": _golden_d4}


def golden_factors(case, side, N):
    """Hand-written factor lists: exponent vectors m of E(:y^m:) and 'block', degree <= N."""
    if side == "lhs":
        return list(_GOLDEN_LHS[case])
    out = _GOLDEN_RHS[case](N)
    return [f for f in out if f == "block" or (sum(f) <= N and min(f) >= 0 and any(f))]


def golden_product(case, side, N):
    quiver = quiver_for(case)
    ring = quiver.y_ring()
    delta = quiver.cartan.delta
    acc = SkewSeries.one(ring, N)
    for f in golden_factors(case, side, N):
        if f == "block":
            Z = normal_monomial(ring, N, delta)
            s = series_inverse(dilog_E(Z.scale(-q_power(1)))) * series_inverse(dilog_E(Z.scale(-q_power(-1))))
        else:
            s = dilog_E(normal_monomial(ring, N, f))
        acc = acc * s
    return acc


# -- verification -----------------------------------------------------------------

@dataclass
class IdentityCase:
    id: str
    case: str
    kind: str              # 'y' or 'dgs'
    degree: int = DEFAULT_DEGREE
    drop_rhs_factor: int = None     # mutation control: index into the RHS factor list

    @classmethod
    def get(cls, identity_id, degree=DEFAULT_DEGREE):
        ident = identity_id.upper().replace("-Y", "-y").replace("-DGS", "-dgs")
        if ident not in IDENTITY_IDS:
            raise KeyError("unknown identity %r" % identity_id)
        case, kind = ident.split("-")
        return cls(ident, case, kind, degree)


@dataclass
class VerificationReport:
    id: str
    degree: int
    equal: bool
    counts: dict
    witness: dict = None
    millis: int = 0
    checks: dict = field(default_factory=dict)

    def to_json(self):
        return {"id": self.id, "degree": self.degree, "equal": self.equal,
                "counts": self.counts, "witness": self.witness, "millis": self.millis}

    def text(self):
        status = "EQUAL" if self.equal else "NOT EQUAL"
        line = "%-7s N=%-3d %-9s lhs=%d rhs=%d terms  %d ms" % (
            self.id, self.degree, status, self.counts["lhs"], self.counts["rhs"], self.millis)
        if self.witness:
            line += "\n  first difference at %s: lhs %s, rhs %s" % (
                self.witness["monomial"], self.witness["lhs"], self.witness["rhs"])
        for name, ok in self.checks.items():
            line += "\n  %s: %s" % (name, "ok" if ok else "FAILED")
        return line


def first_difference(a, b):
    keys = sorted(set(a.terms) | set(b.terms), key=lambda e: (sum(e), e))
    for e in keys:
        x, y = a.terms.get(e), b.terms.get(e)
        if x != y:
            return {"monomial": list(e), "lhs": str(x) if x is not None else "0",
                    "rhs": str(y) if y is not None else "0"}
    return None


def _y_sides(case, N, drop=None):
    quiver = quiver_for(case)
    lhs = theta_image(case, "forward", quiver, N)
    if drop is None:
        rhs = theta_image(case, "reversed", quiver, N)
    else:
        from .theta import factor_images
        acc = SkewSeries.one(quiver.y_ring(), N)
        live = [s for _, s in factor_images(case, "reversed", quiver, N) if len(s.terms) > 1]
        for k, s in enumerate(live):
            if k != drop:
                acc = acc * s
        rhs = acc
    return lhs, rhs


def to_w_ring(series, case, N):
    return chi_rewrite(psi_R(series, R_MATRICES[case], x_ring(), N))


def verify(ident):
    t0 = time.perf_counter()
    N = ident.degree
    lhs_y, rhs_y = _y_sides(ident.case, N, ident.drop_rhs_factor)
    checks = {}
    if ident.kind == "y":
        lhs, rhs = lhs_y, rhs_y
    else:
        lhs, rhs = dgs_product(ident.case, "lhs", N), dgs_product(ident.case, "rhs", N)
        checks["lhs matches substituted y-side"] = to_w_ring(lhs_y, ident.case, N) == lhs
        checks["rhs matches substituted y-side"] = to_w_ring(rhs_y, ident.case, N) == rhs
    witness = first_difference(lhs, rhs)
    equal = witness is None and all(checks.values())
    ms = int(round(1000 * (time.perf_counter() - t0)))
    return VerificationReport(ident.id, N, equal, {"lhs": len(lhs.terms), "rhs": len(rhs.terms)},
                              witness, ms, checks)
