"""Exact arithmetic in Q(q).

Elements are stored as ``q**v * n(q) / d(q)`` with ``n`` and ``d`` integer
polynomials (python-flint ``fmpz_poly``).  The canonical form keeps
``n(0) != 0``, ``d(0) != 0``, ``gcd(n, d) = 1`` (content included) and a
positive leading coefficient on ``d``, so equality is structural.
"""

import re
from functools import lru_cache

from flint import fmpz_poly

_ONE = fmpz_poly([1])
_ZERO = fmpz_poly([])


def _valuation(p):
    i = 0
    while p[i] == 0:
        i += 1
    return i


def _strip(p):
    """Split a nonzero poly into (p / q**k, k) with nonzero constant term."""
    if p[0] != 0:
        return p, 0
    k = _valuation(p)
    return p.right_shift(k), k


def _reverse(p):
    return fmpz_poly(p.coeffs()[::-1])


class LaurentPoly:
    """Laurent polynomial ``sum c_k q**(lowest_exponent + k)``."""

    __slots__ = ("_p", "_v")

    def __init__(self, lowest_exponent=0, coefficients=()):
        p = fmpz_poly([int(c) for c in coefficients])
        if p.is_zero():
            self._p, self._v = _ZERO, 0
        else:
            p, k = _strip(p)
            self._p, self._v = p, int(lowest_exponent) + k

    @classmethod
    def _raw(cls, p, v):
        obj = cls.__new__(cls)
        obj._p, obj._v = p, v
        return obj

    @property
    def lowest_exponent(self):
        return self._v

    @property
    def coefficients(self):
        return tuple(int(c) for c in self._p.coeffs())

    @property
    def highest_exponent(self):
        return self._v + self._p.degree()

    def is_zero(self):
        return self._p.is_zero()

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._v == other._v and self._p == other._p

    def __hash__(self):
        return hash((self._v, self.coefficients))

    def __repr__(self):
        return "LaurentPoly(%d, %r)" % (self._v, self.coefficients)

    def __str__(self):
        return _render_laurent(self._p, self._v)


def _render_laurent(p, v):
    if p.is_zero():
        return "0"
    parts = []
    coeffs = p.coeffs()
    for k in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[k])
        if c == 0:
            continue
        e = v + k
        if e == 0:
            mono = ""
        elif e == 1:
            mono = "q"
        else:
            mono = "q^%d" % e
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = "%d%s" % (mag, mono)
        else:
            body = str(mag)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


class QDivisionByZero(ZeroDivisionError):
    pass


class QScalar:
    """Element of Q(q) in canonical reduced form."""

    __slots__ = ("_n", "_v", "_d", "_hash")

    def __init__(self, value=0):
        if isinstance(value, QScalar):
            self._n, self._v, self._d = value._n, value._v, value._d
        elif isinstance(value, LaurentPoly):
            self._n, self._v, self._d = value._p, value._v, _ONE
        else:
            value = int(value)
            self._n = fmpz_poly([value]) if value else _ZERO
            self._v, self._d = 0, _ONE
        self._hash = None

    @classmethod
    def _raw(cls, n, v, d):
        obj = cls.__new__(cls)
        obj._n, obj._v, obj._d, obj._hash = n, v, d, None
        return obj

    @classmethod
    def _make(cls, n, v, d):
        # n arbitrary, d with nonzero constant term
        if n.is_zero():
            return ZERO
        n, k = _strip(n)
        v += k
        if not d.is_one():
            g = n.gcd(d)
            if not g.is_one():
                n = n // g
                d = d // g
            if d.leading_coefficient() < 0:
                n, d = -n, -d
            if d.is_constant() and d[0] == 1:
                d = _ONE
        return cls._raw(n, v, d)

    @classmethod
    def from_laurent(cls, lowest_exponent, coefficients):
        return cls(LaurentPoly(lowest_exponent, coefficients))

    @classmethod
    def fraction(cls, num, den):
        return cls(num) / cls(den)

    # -- accessors -------------------------------------------------------

    @property
    def numerator(self):
        return LaurentPoly._raw(self._n, self._v if not self._n.is_zero() else 0)

    @property
    def denominator(self):
        return LaurentPoly._raw(self._d, 0)

    def is_zero(self):
        return self._n.is_zero()

    def is_one(self):
        return self._v == 0 and self._n.is_one() and self._d.is_one()

    def is_laurent(self):
        return self._d.is_one()

    def monomial_exponent(self):
        """Return k if self == q**k, else None."""
        if self._d.is_one() and self._n.is_one():
            return self._v
        return None

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QScalar):
            if isinstance(other, int):
                other = QScalar(other)
            else:
                return NotImplemented
        if self._n.is_zero():
            return other
        if other._n.is_zero():
            return self
        v = min(self._v, other._v)
        a = self._n.left_shift(self._v - v) if self._v > v else self._n
        b = other._n.left_shift(other._v - v) if other._v > v else other._n
        if self._d == other._d:
            return QScalar._make(a + b, v, self._d)
        return QScalar._make(a * other._d + b * self._d, v, self._d * other._d)

    __radd__ = __add__

    def __neg__(self):
        return QScalar._raw(-self._n, self._v, self._d)

    def __sub__(self, other):
        if not isinstance(other, QScalar):
            if isinstance(other, int):
                other = QScalar(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QScalar):
            if isinstance(other, int):
                other = QScalar(other)
            else:
                return NotImplemented
        if self._n.is_zero() or other._n.is_zero():
            return ZERO
        if self._d.is_one() and other._d.is_one():
            return QScalar._raw(self._n * other._n, self._v + other._v, _ONE)
        n1, d1, n2, d2 = self._n, self._d, other._n, other._d
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 // g, d2 // g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 // g, d1 // g
        n, d = n1 * n2, d1 * d2
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        if d.is_constant() and d[0] == 1:
            d = _ONE
        return QScalar._raw(n, self._v + other._v, d)

    __rmul__ = __mul__

    def inverse(self):
        if self._n.is_zero():
            raise QDivisionByZero("division by zero in Q(q)")
        n, d = self._d, self._n
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        if d.is_constant() and d[0] == 1:
            d = _ONE
        return QScalar._raw(n, -self._v, d)

    def __truediv__(self, other):
        if not isinstance(other, QScalar):
            if isinstance(other, int):
                other = QScalar(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QScalar(other) * self.inverse()

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        if self.monomial_exponent() is not None:
            return q_power(self._v * k)
        if self._d.is_one():
            return QScalar._raw(self._n ** k, self._v * k, _ONE)
        return QScalar._raw(self._n ** k, self._v * k, self._d ** k)

    def shift(self, k):
        """Multiply by q**k."""
        if k == 0 or self._n.is_zero():
            return self
        return QScalar._raw(self._n, self._v + k, self._d)

    def bar(self):
        """The involution q -> 1/q."""
        if self._n.is_zero():
            return self
        v = -self._v - self._n.degree() + self._d.degree()
        n = _reverse(self._n)
        d = _reverse(self._d) if not self._d.is_one() else _ONE
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return QScalar._raw(n, v, d)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = QScalar(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        return (self._n == other._n and self._d == other._d
                and (self._v == other._v or self._n.is_zero()))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._v, tuple(int(c) for c in self._n.coeffs()),
                               tuple(int(c) for c in self._d.coeffs())))
        return self._hash

    def __bool__(self):
        return not self._n.is_zero()

    def __repr__(self):
        return "QScalar(%r)" % str(self)

    def __str__(self):
        if self._d.is_one():
            return _render_laurent(self._n, self._v)
        # balance the denominator around q^0 for readability
        s = self._d.degree() // 2
        num = _render_laurent(self._n, self._v - s)
        den = _render_laurent(self._d, -s)
        return "(%s)/(%s)" % (num, den)


ZERO = QScalar._raw(_ZERO, 0, _ONE)
ONE = QScalar._raw(_ONE, 0, _ONE)


@lru_cache(maxsize=None)
def q_power(k):
    return QScalar._raw(_ONE, int(k), _ONE)


Q = q_power(1)


def arith(a, b, kind):
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError("unknown operation %r" % (kind,))


@lru_cache(maxsize=None)
def qint(n):
    """[n]_q = (q^n - q^-n)/(q - q^-1)."""
    n = int(n)
    if n == 0:
        return ZERO
    if n < 0:
        return -qint(-n)
    coeffs = [0] * (2 * n - 1)
    coeffs[::2] = [1] * n
    return QScalar._raw(fmpz_poly(coeffs), 1 - n, _ONE)


@lru_cache(maxsize=None)
def qfact(n):
    if n < 0:
        raise ValueError("qfact of negative integer")
    out = ONE
    for k in range(2, n + 1):
        out = out * qint(k)
    return out


@lru_cache(maxsize=None)
def qbinom(n, k):
    if n < 0 or k < 0:
        raise ValueError("qbinom of negative integer")
    if k > n:
        raise ValueError("qbinom requires k <= n")
    return qfact(n) / (qfact(k) * qfact(n - k))


# q - q^-1 shows up everywhere
QQ = QScalar.from_laurent(-1, (-1, 0, 1))


# -- parsing the canonical rendering back --------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d*)(q(?:\^(-?\d+))?)?")


def _parse_laurent(text):
    text = text.strip()
    if text == "0":
        return {}
    out = {}
    pos = 0
    text = text.replace(" ", "")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse %r" % text)
        sign, digits, qpart, exp = m.groups()
        if not digits and not qpart:
            raise ValueError("cannot parse %r" % text)
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        e = 0 if not qpart else (int(exp) if exp is not None else 1)
        out[e] = out.get(e, 0) + c
        pos = m.end()
    return out


def _laurent_from_dict(d):
    d = {e: c for e, c in d.items() if c}
    if not d:
        return ZERO
    lo, hi = min(d), max(d)
    return QScalar.from_laurent(lo, [d.get(e, 0) for e in range(lo, hi + 1)])


def parse_scalar(text):
    """Inverse of str(QScalar)."""
    text = text.strip()
    m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
    if m:
        return (_laurent_from_dict(_parse_laurent(m.group(1)))
                / _laurent_from_dict(_parse_laurent(m.group(2))))
    return _laurent_from_dict(_parse_laurent(text))
