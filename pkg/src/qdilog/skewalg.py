"""Skew polynomial / power series rings and the projection of q-commutator trees.

Monomials are stored in ascending variable order, x^a = x_0^{a_0} ... x_n^{a_n},
with the commutation q-powers folded into the coefficient:

    x^a x^b = q^{sum_{i>j} M_ij a_i b_j} x^{a+b}      (x_i x_j = q^{M_ij} x_j x_i)
"""

from fractions import Fraction

from .qrat import ONE, ZERO, QScalar, q_power, qfact
from .commtree import CommTree


def _lower(M):
    n = len(M)
    return tuple(tuple(M[i][j] if i > j else 0 for j in range(n)) for i in range(n))


def _mat(M):
    return tuple(tuple(int(x) for x in row) for row in M)


def quad(L, a, b):
    """a^T L b for a strictly lower triangular L."""
    s = 0
    for i in range(1, len(a)):
        ai = a[i]
        if ai:
            row = L[i]
            for j in range(i):
                if b[j] and row[j]:
                    s += ai * row[j] * b[j]
    return s


class QuiverOrientation:
    """Signs sigma_ij on the edges of the Dynkin diagram and the derived B, L, <.,.>_B."""

    def __init__(self, cartan, b_matrix):
        self.cartan = cartan
        B = _mat(b_matrix)
        n = cartan.rank
        c = cartan.c
        self.sigma = {}
        for i in range(n):
            for j in range(n):
                if B[i][j] != -B[j][i]:
                    raise ValueError("B is not skew-symmetric")
                if i < j:
                    if c[i][j] == 0:
                        if B[i][j]:
                            raise ValueError("B has an entry off the diagram")
                        continue
                    s = Fraction(B[i][j], c[i][j])
                    if s not in (1, -1):
                        raise ValueError("b_ij must equal +-c_ij")
                    self.sigma[(i, j)] = int(s)
        self.b_matrix = B
        self.lower = _lower(B)
        self.pairing = tuple(tuple(c[i][j] - B[i][j] for j in range(n)) for i in range(n))
        if any(x % 2 for row in self.pairing for x in row):
            raise ValueError("pairing values must be even")

    @classmethod
    def from_signs(cls, cartan, sigma):
        n = cartan.rank
        B = [[0] * n for _ in range(n)]
        for (i, j), s in sigma.items():
            B[i][j] = s * cartan.c[i][j]
            B[j][i] = -B[i][j]
        return cls(cartan, B)

    def pair(self, a, b):
        P = self.pairing
        n = len(a)
        return sum(a[i] * P[i][j] * b[j] for i in range(n) if a[i] for j in range(n) if b[j])

    def e_ring(self):
        """P_B: e_i e_j = q^{b_ij} e_j e_i."""
        return SkewRing(self.b_matrix)

    def y_ring(self):
        """S_B: y_i y_j = q^{2 b_ij} y_j y_i, normal ordering by the lower part of B."""
        return SkewRing([[2 * x for x in row] for row in self.b_matrix], normal_lower=self.lower)


class SkewRing:
    def __init__(self, commutation, allows_negative_exponents=False, normal_lower=None):
        self.M = _mat(commutation)
        n = len(self.M)
        for i in range(n):
            for j in range(n):
                if self.M[i][j] != -self.M[j][i]:
                    raise ValueError("commutation matrix must be skew-symmetric")
        self.lower = _lower(self.M)
        self.allows_negative_exponents = allows_negative_exponents
        self.normal_lower = _mat(normal_lower) if normal_lower is not None else None
        self._rows = [[(j, self.M[i][j]) for j in range(i) if self.M[i][j]] for i in range(n)]

    @property
    def n(self):
        return len(self.M)

    @classmethod
    def from_B(cls, B, allows_negative_exponents=False):
        B = _mat(B)
        return cls([[2 * x for x in row] for row in B], allows_negative_exponents, _lower(B))

    def __eq__(self, other):
        return (isinstance(other, SkewRing) and self.M == other.M
                and self.allows_negative_exponents == other.allows_negative_exponents
                and self.normal_lower == other.normal_lower)

    def __hash__(self):
        return hash((self.M, self.allows_negative_exponents, self.normal_lower))

    def twist(self, a, b):
        """Exponent k with x^a x^b = q^k x^{a+b}."""
        return quad(self.lower, a, b)

    def b_matrix(self):
        if any(x % 2 for row in self.M for x in row):
            raise ValueError("ring does not come from a B matrix")
        return tuple(tuple(x // 2 for x in row) for row in self.M)


def normal_order(ring, m):
    """Scalar q^{m^T L m} with :y^m: = q^{m^T L m} y^m."""
    if ring.normal_lower is None:
        raise ValueError("ring carries no normal-ordering data")
    return q_power(quad(ring.normal_lower, m, m))


def _deg(e):
    return sum(e)


class SkewSeries:
    """Truncated series: {exponent tuple: QScalar}, total degree <= N."""

    __slots__ = ("ring", "N", "terms")

    def __init__(self, ring, N, terms=None):
        self.ring = ring
        self.N = N
        out = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != ring.n:
                raise ValueError("exponent vector has wrong length")
            if not ring.allows_negative_exponents:
                if min(e) < 0:
                    raise ValueError("negative exponent in a power-series ring")
                if _deg(e) > N:
                    continue
            if not isinstance(c, QScalar):
                c = QScalar(c)
            if c:
                out[e] = out[e] + c if e in out else c
        self.terms = {e: c for e, c in out.items() if c}

    @classmethod
    def _raw(cls, ring, N, terms):
        obj = cls.__new__(cls)
        obj.ring, obj.N, obj.terms = ring, N, terms
        return obj

    @classmethod
    def one(cls, ring, N):
        return cls._raw(ring, N, {(0,) * ring.n: ONE})

    @classmethod
    def zero(cls, ring, N):
        return cls._raw(ring, N, {})

    @classmethod
    def monomial(cls, ring, N, e, c=ONE):
        return cls(ring, N, {tuple(e): c})

    @classmethod
    def variable(cls, ring, N, i):
        e = [0] * ring.n
        e[i] = 1
        return cls.monomial(ring, N, e)

    def _check(self, other):
        if not isinstance(other, SkewSeries) or other.ring != self.ring:
            raise ValueError("ring mismatch")

    def constant(self):
        return self.terms.get((0,) * self.ring.n, ZERO)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, SkewSeries):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def truncate(self, N):
        return SkewSeries._raw(self.ring, N, {e: c for e, c in self.terms.items() if _deg(e) <= N})

    def __add__(self, other):
        self._check(other)
        N = min(self.N, other.N)
        out = {e: c for e, c in self.terms.items() if _deg(e) <= N}
        for e, c in other.terms.items():
            if _deg(e) > N:
                continue
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return SkewSeries._raw(self.ring, N, out)

    def __neg__(self):
        return SkewSeries._raw(self.ring, self.N, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        k = k if isinstance(k, QScalar) else QScalar(k)
        if not k:
            return SkewSeries.zero(self.ring, self.N)
        return SkewSeries._raw(self.ring, self.N, {e: c * k for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, QScalar)):
            return self.scale(other)
        return series_mul(self, other)

    def __rmul__(self, k):
        return self.scale(k)

    def __pow__(self, k):
        out = SkewSeries.one(self.ring, self.N)
        for _ in range(k):
            out = out * self
        return out

    def min_degree(self):
        return min((_deg(e) for e in self.terms), default=None)

    def items(self):
        return sorted(self.terms.items())

    def to_json(self):
        return [[list(e), str(c)] for e, c in self.items()]

    def __repr__(self):
        return "SkewSeries(N=%d, %d terms)" % (self.N, len(self.terms))


def series_add(a, b):
    return a + b


def series_scale(a, k):
    return a.scale(k)


def series_mul(a, b, N=None):
    a._check(b)
    if a.ring.allows_negative_exponents:
        raise ValueError("series arithmetic is not defined over the Laurent ring")
    ring = a.ring
    N = min(a.N, b.N) if N is None else N
    rows = ring._rows
    n = ring.n
    # put the sparser factor outside
    A = sorted(((e, _deg(e), c) for e, c in a.terms.items()), key=lambda t: t[1])
    out = {}
    for eb, db, cb in ((e, _deg(e), c) for e, c in b.terms.items()):
        if db > N:
            continue
        cap = N - db
        vec = [sum(Mij * eb[j] for j, Mij in rows[i]) for i in range(n)]
        nz = [(i, v) for i, v in enumerate(vec) if v]
        for ea, da, ca in A:
            if da > cap:
                break
            k = 0
            for i, v in nz:
                if ea[i]:
                    k += ea[i] * v
            e = tuple(x + y for x, y in zip(ea, eb))
            val = (ca * cb)
            if k:
                val = val.shift(k)
            if e in out:
                out[e] = out[e] + val
            else:
                out[e] = val
    return SkewSeries._raw(ring, N, {e: c for e, c in out.items() if c})


# -- single-monomial powers and the dilogarithm family --------------------------

def _single_term(s):
    if len(s.terms) != 1:
        return None
    (e, c), = s.terms.items()
    return e, c


def _monomial_powers(s, K):
    """[(exponent, coefficient) of s^k for k = 0..K] when s is one term."""
    e, c = _single_term(s)
    self_twist = s.ring.twist(e, e)
    out = [((0,) * s.ring.n, ONE)]
    ek, ck = out[0]
    for k in range(1, K + 1):
        # s^{k-1} * s : the twist between e^{k-1} and e is (k-1)*self_twist
        ck = (ck * c).shift((k - 1) * self_twist)
        ek = tuple(x + y for x, y in zip(ek, e))
        out.append((ek, ck))
    return out


def _require_no_constant(arg):
    if arg.constant():
        raise ValueError("argument must have zero constant term")


def power_series_in(arg, coeffs):
    """sum_k coeffs(k) arg^k, truncated at arg.N."""
    _require_no_constant(arg)
    N = arg.N
    d = arg.min_degree()
    if d is None:
        return SkewSeries.one(arg.ring, N)
    K = N // d
    if _single_term(arg) is not None:
        terms = {}
        for k, (e, c) in enumerate(_monomial_powers(arg, K)):
            a = coeffs(k)
            if a:
                terms[e] = c * a
        return SkewSeries._raw(arg.ring, N, terms)
    out = SkewSeries.one(arg.ring, N).scale(coeffs(0))
    p = SkewSeries.one(arg.ring, N)
    for k in range(1, K + 1):
        p = p * arg
        if p.is_zero():
            break
        a = coeffs(k)
        if a:
            out = out + p.scale(a)
    return out


_TWO_POW = {}


def dilog_coeff(k):
    """Coefficient of x^k in E(x) = 1/(-qx; q^2)_inf: (-q)^k / ((1-q^2)...(1-q^{2k}))."""
    if k not in _TWO_POW:
        den = ONE
        for j in range(1, k + 1):
            den = den * (ONE - q_power(2 * j))
        _TWO_POW[k] = q_power(k) * QScalar(-1 if k % 2 else 1) / den
    return _TWO_POW[k]


def dilog_E(arg):
    """E(arg) = exp(Li_{2,q^2}(-q arg))."""
    return power_series_in(arg, dilog_coeff)


def dilog_E_from_log(arg):
    """E(arg) computed literally as exp(sum (-q arg)^n / (n(1-q^{2n})))."""
    def li(n):
        if n == 0:
            return ZERO
        return (q_power(n) * QScalar(-1 if n % 2 else 1)) / (QScalar(n) * (ONE - q_power(2 * n)))
    return exp_of(power_series_in(arg, li))


def exp_q_coeff(k):
    return q_power(-(k * (k - 1)) // 2) / qfact(k)


def exp_q_of(arg):
    return power_series_in(arg, exp_q_coeff)


def exp_of(arg):
    _require_no_constant(arg)
    return power_series_in(arg, lambda k: ONE / _fact(k))


def _fact(k):
    out = 1
    for j in range(2, k + 1):
        out *= j
    return QScalar(out)


def log_of(u):
    """log(u) for a series with constant term 1."""
    if u.constant() != ONE:
        raise ValueError("log needs constant term 1")
    f = u - SkewSeries.one(u.ring, u.N)
    return power_series_in(f, lambda k: ZERO if k == 0 else QScalar(-1 if k % 2 == 0 else 1) / QScalar(k))


def series_inverse(u):
    c0 = u.constant()
    if not c0:
        raise ValueError("series has no inverse (zero constant term)")
    inv0 = c0.inverse()
    f = u.scale(inv0) - SkewSeries.one(u.ring, u.N)
    return power_series_in(f, lambda k: QScalar(-1 if k % 2 else 1)).scale(inv0)


def pochhammer(arg, base_exp):
    """Truncated (arg; q^base_exp)_inf = sum_k (-1)^k Q^{k(k-1)/2} arg^k / (Q;Q)_k, Q = q^base_exp."""
    def coeff(k):
        den = ONE
        for j in range(1, k + 1):
            den = den * (ONE - q_power(base_exp * j))
        return QScalar(-1 if k % 2 else 1) * q_power(base_exp * k * (k - 1) // 2) / den
    return power_series_in(arg, coeff)


# -- projection of trees ----------------------------------------------------------

def _project(quiver, node, n):
    if isinstance(node, int):
        e = [0] * n
        e[node] = 1
        return ONE, tuple(e)
    left = _project(quiver, node[0], n)
    if left is None:
        return None
    right = _project(quiver, node[1], n)
    if right is None:
        return None
    (c1, a), (c2, b) = left, right
    k = quiver.pair(a, b)
    if k == 0:
        return None
    coef = c1 * c2 * (ONE - q_power(k))
    t = quad(quiver.lower, a, b)
    if t:
        coef = coef.shift(t)
    return coef, tuple(x + y for x, y in zip(a, b))


def project_tree(quiver, tree):
    """pi_B^+ of a tree: (coefficient, e-exponents) or None when it vanishes."""
    out = _project(quiver, tree.node, quiver.cartan.rank)
    if out is None or not tree.prefactor:
        return None
    return out[0] * tree.prefactor, out[1]


def project_tree_direct(quiver, tree, side="+"):
    """Oracle: evaluate the brackets literally in P_B (or P_B^- for side '-')."""
    ring = quiver.e_ring()
    n = quiver.cartan.rank
    form = quiver.cartan.form

    def ev(node):
        if isinstance(node, int):
            e = [0] * n
            e[node] = 1
            return SkewSeries.monomial(ring, 10 ** 6, e), tuple(e)
        x, a = ev(node[0])
        y, b = ev(node[1])
        return x * y - (y * x).scale(q_power(form(a, b))), tuple(u + v for u, v in zip(a, b))

    value, w = ev(tree.node)
    value = value.scale(tree.prefactor)
    if value.is_zero():
        return None
    (e, c), = value.terms.items()
    return c, e


def mirror_image(quiver, image):
    """Omega-bar of an e-image (c, a): returns (c', a) meaning c' f^a, f ascending."""
    if image is None:
        return None
    c, a = image
    return c.bar().shift(quad(quiver.lower, a, a)), a


def mirror_image_direct(quiver, tree):
    """Oracle for pi^-(Omega(tree)): bracket signs -q^{-(a,b)} times the F-tree in P_B^-."""
    n = quiver.cartan.rank
    form = quiver.cartan.form
    scalar = tree.prefactor.bar()

    def walk(node):
        nonlocal scalar
        if isinstance(node, int):
            e = [0] * n
            e[node] = 1
            return tuple(e)
        a, b = walk(node[0]), walk(node[1])
        scalar = scalar * q_power(-form(a, b)) * QScalar(-1)
        return tuple(x + y for x, y in zip(a, b))

    walk(tree.node)
    # P_B^- has the same relations, so the F-tree evaluates like the E-tree
    val = project_tree_direct(quiver, CommTree(tree.node))
    if val is None:
        return None
    return val[0] * scalar, val[1]


# -- substitutions --------------------------------------------------------------

def check_admissible(R, B, Bp):
    R = _mat(R)
    rows, cols = len(R), len(R[0])
    B, Bp = _mat(B), _mat(Bp)
    for i in range(cols):
        for j in range(cols):
            v = sum(R[a][i] * Bp[a][b] * R[b][j] for a in range(rows) for b in range(rows))
            if v != B[i][j]:
                raise ValueError("admissibility: tR B' R != B at (%d,%d)" % (i, j))
    if any(x < 0 for row in R for x in row):
        raise ValueError("admissibility: R has a negative entry")
    for j in range(cols):
        if not any(R[a][j] for a in range(rows)):
            raise ValueError("continuity: column %d of R is zero" % j)
    return R


def psi_R(s, R, target, N=None):
    """Substitute y_i -> :x^{R v_i}: in a normal-order-preserving way."""
    B = s.ring.b_matrix()
    Bp = target.b_matrix()
    R = check_admissible(R, B, Bp)
    rows, cols = len(R), len(R[0])
    if N is None:
        N = s.N * max(sum(R[a][j] for a in range(rows)) for j in range(cols))
    out = {}
    for m, c in s.terms.items():
        v = tuple(sum(R[a][j] * m[j] for j in range(cols)) for a in range(rows))
        if _deg(v) > N:
            continue
        # c y^m = c q^{-mLm} :y^m:  ->  c q^{-mLm} :x^v: = c q^{-mLm + vL'v} x^v
        k = -quad(s.ring.normal_lower, m, m) + quad(target.normal_lower, v, v)
        val = c.shift(k)
        out[v] = out[v] + val if v in out else val
    return SkewSeries._raw(target, N, {e: c for e, c in out.items() if c})


X_B = ((0, 1), (-1, 0))
S_MATRIX = ((1, 0), (-2, 1))


def x_ring():
    return SkewRing.from_B(X_B)


def w_ring():
    return SkewRing.from_B(X_B)


def laurent_x_ring():
    return SkewRing.from_B(X_B, allows_negative_exponents=True)


def _apply2(S, v):
    return (S[0][0] * v[0] + S[0][1] * v[1], S[1][0] * v[0] + S[1][1] * v[1])


def _inverse_unimodular(S):
    (a, b), (c, d) = S
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError("S is not unimodular")
    return ((d * det, -b * det), (-c * det, a * det))


def psi_S(s, S=S_MATRIX):
    """:x^v: -> :x^{Sv}: into the Laurent ring (a finite map, no truncation)."""
    L = s.ring.normal_lower
    check_admissible(S, X_B, X_B) if min(min(r) for r in S) >= 0 else _check_symplectic(S)
    target = laurent_x_ring()
    out = {}
    for v, c in s.terms.items():
        u = _apply2(S, v)
        k = -quad(L, v, v) + quad(target.normal_lower, u, u)
        out[u] = c.shift(k)
    return SkewSeries._raw(target, s.N, out)


def _check_symplectic(S):
    B = X_B
    for i in range(2):
        for j in range(2):
            v = sum(S[a][i] * B[a][b] * S[b][j] for a in range(2) for b in range(2))
            if v != B[i][j]:
                raise ValueError("tS B' S != B'")


def chi_rewrite(s, S=S_MATRIX):
    """x-ring series -> w-ring series, through psi_S and w_1 = :x_1 x_2^{-2}:, w_2 = x_2."""
    lau = psi_S(s, S)
    Sinv = _inverse_unimodular(S)
    target = w_ring()
    L = lau.ring.normal_lower
    out = {}
    for u, c in lau.terms.items():
        v = _apply2(Sinv, u)
        if min(v) < 0:
            raise ValueError("image leaves the w power-series ring")
        # x^u = q^{-uL'u} :x^u: = q^{-uL'u} :w^v: = q^{-uL'u + vLv} w^v
        out[v] = c.shift(-quad(L, u, u) + quad(target.normal_lower, v, v))
    return SkewSeries._raw(target, s.N, out)


# -- D_B = P_B^+ (x) P_B^- --------------------------------------------------------

class DoubleMonomial:
    """c e^a (x) f^b with both sides in ascending order."""

    __slots__ = ("coefficient", "e_exponents", "f_exponents")

    def __init__(self, coefficient, e_exponents, f_exponents):
        self.coefficient = coefficient
        self.e_exponents = tuple(e_exponents)
        self.f_exponents = tuple(f_exponents)

    def mul(self, other, quiver):
        # (a (x) b)(c (x) d) = ac (x) bd; P_B^- has the relations of P_B
        L = quiver.lower
        k = quad(L, self.e_exponents, other.e_exponents) + quad(L, self.f_exponents, other.f_exponents)
        add = lambda x, y: tuple(u + v for u, v in zip(x, y))
        return DoubleMonomial((self.coefficient * other.coefficient).shift(k),
                              add(self.e_exponents, other.e_exponents),
                              add(self.f_exponents, other.f_exponents))

    def to_y(self, kappa):
        """(scalar, m) with self = scalar y^m, where y_i = kappa e_i (x) f_i."""
        if self.e_exponents != self.f_exponents:
            raise ValueError("only balanced monomials lie in the y-subring")
        m = self.e_exponents
        return self.coefficient * kappa ** (-sum(m)), m

    def __eq__(self, other):
        return (isinstance(other, DoubleMonomial) and self.coefficient == other.coefficient
                and self.e_exponents == other.e_exponents and self.f_exponents == other.f_exponents)

    def __repr__(self):
        return "DoubleMonomial(%s, %s, %s)" % (self.coefficient, self.e_exponents, self.f_exponents)
