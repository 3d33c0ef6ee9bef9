"""Exact arithmetic in Q(beta), beta = (1 + sqrt 5) / 2.

An element is stored as ``(p + q*beta) / d`` with integers ``p, q`` and
``d > 0`` reduced so that ``gcd(p, q, d) == 1``.  That triple is canonical,
so equality and hashing are structural.  Comparisons never touch floating
point.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

import mpmath

__all__ = ["QBeta", "BETA", "ZERO", "ONE", "as_qbeta", "parse_qbeta", "to_float", "compare", "render"]


class QBeta:
    __slots__ = ("_p", "_q", "_d", "_hash")

    def __init__(self, a=0, b=0):
        a = Fraction(a)
        b = Fraction(b)
        d = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self._set(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d)

    def _set(self, p: int, q: int, d: int) -> None:
        g = math.gcd(p, q, d)
        if g != 1:
            p //= g
            q //= g
            d //= g
        self._p = p
        self._q = q
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, p: int, q: int, d: int) -> QBeta:
        if d < 0:
            p, q, d = -p, -q, -d
        g = math.gcd(p, q, d)
        if g != 1:
            p //= g
            q //= g
            d //= g
        obj = _new(cls)
        obj._p = p
        obj._q = q
        obj._d = d
        obj._hash = None
        return obj

    @classmethod
    def from_record(cls, rec: dict) -> QBeta:
        """Inverse of :meth:`to_record`."""
        return cls(Fraction(rec["a_num"], rec["a_den"]), Fraction(rec["b_num"], rec["b_den"]))

    # coefficients -------------------------------------------------------
    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._d)

    def to_record(self) -> dict:
        a, b = self.a, self.b
        return {"a_num": a.numerator, "a_den": a.denominator,
                "b_num": b.numerator, "b_den": b.denominator}

    def conjugate(self) -> QBeta:
        # beta -> 1 - beta
        return QBeta._raw(self._p + self._q, -self._q, self._d)

    def norm(self) -> Fraction:
        p, q = self._p, self._q
        return Fraction(p * p + p * q - q * q, self._d * self._d)

    def is_rational(self) -> bool:
        return self._q == 0

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = other if type(other) is QBeta else _coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return QBeta._raw(self._p + o._p, self._q + o._q, self._d)
        return QBeta._raw(self._p * o._d + o._p * self._d,
                          self._q * o._d + o._q * self._d, self._d * o._d)

    __radd__ = __add__

    def __neg__(self):
        obj = _new(QBeta)
        obj._p = -self._p
        obj._q = -self._q
        obj._d = self._d
        obj._hash = None
        return obj

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = other if type(other) is QBeta else _coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return QBeta._raw(self._p - o._p, self._q - o._q, self._d)
        return QBeta._raw(self._p * o._d - o._p * self._d,
                          self._q * o._d - o._q * self._d, self._d * o._d)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if type(other) is QBeta:
            o = other
        elif type(other) is int or isinstance(other, int):
            return QBeta._raw(self._p * other, self._q * other, self._d)
        else:
            o = _coerce(other)
            if o is None:
                return NotImplemented
        p1, q1, p2, q2 = self._p, self._q, o._p, o._q
        qq = q1 * q2
        # beta^2 = beta + 1
        return QBeta._raw(p1 * p2 + qq, p1 * q2 + q1 * p2 + qq, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self) -> QBeta:
        p, q = self._p, self._q
        n = p * p + p * q - q * q
        if n == 0:
            raise ZeroDivisionError("QBeta division by zero")
        # x * conj(x) = n / d^2
        return QBeta._raw((p + q) * self._d, -q * self._d, n)

    def __truediv__(self, other):
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("QBeta division by zero")
            return QBeta._raw(self._p, self._q, self._d * other)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # order --------------------------------------------------------------
    def sign(self) -> int:
        return _sign(2 * self._p + self._q, self._q)

    def _cmp(self, other) -> int:
        o = other if type(other) is QBeta else _coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QBeta with {type(other).__name__}")
        d1, d2 = self._d, o._d
        if d1 == d2:
            p, q = self._p - o._p, self._q - o._q
        else:
            p, q = self._p * d2 - o._p * d1, self._q * d2 - o._q * d1
        u = 2 * p + q
        # inlined _sign(u, q)
        if u >= 0 and q >= 0:
            return 0 if (u == 0 and q == 0) else 1
        if u <= 0 and q <= 0:
            return -1
        if u * u > 5 * q * q:
            return 1 if u > 0 else -1
        return 1 if q > 0 else -1

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        o = other if type(other) is QBeta else _coerce(other)
        if o is None:
            return NotImplemented
        return self._p == o._p and self._q == o._q and self._d == o._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._p, self._q, self._d))
        return self._hash

    def __bool__(self):
        return self._p != 0 or self._q != 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # conversion ---------------------------------------------------------
    def __float__(self):
        return float(to_float(self, 64))

    def __repr__(self):
        return f"QBeta({self.a!s}, {self.b!s})"

    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        bs = "b" if b == 1 else "-b" if b == -1 else f"{b}*b"
        if a == 0:
            return bs
        return f"{a}{bs}" if bs.startswith("-") else f"{a}+{bs}"


_new = object.__new__


def _sign(u: int, v: int) -> int:
    """Sign of u + v*sqrt(5), integers only."""
    if u >= 0 and v >= 0:
        return 0 if (u == 0 and v == 0) else 1
    if u <= 0 and v <= 0:
        return -1
    if u * u > 5 * v * v:
        return 1 if u > 0 else -1
    return 1 if v > 0 else -1


def _coerce(x) -> QBeta | None:
    t = type(x)
    if t is Fraction:
        return QBeta._raw(x.numerator, 0, x.denominator)
    if t is int:
        return QBeta._raw(x, 0, 1)
    if isinstance(x, QBeta):
        return x
    if isinstance(x, int):
        return QBeta._raw(x, 0, 1)
    if isinstance(x, Rational):
        return QBeta._raw(x.numerator, 0, x.denominator)
    return None


_TERM = re.compile(r"([+-])?(\d+(?:\.\d+)?(?:/\d+)?)?\*?(beta|b)?")


def parse_qbeta(text: str) -> QBeta:
    """Parse a linear form in beta such as ``"3/2"``, ``"2b-3"`` or ``"-1+beta"``."""
    s = text.replace(" ", "").lower()
    if not s:
        raise ValueError("empty number")
    a = b = Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m.group(2) is None and m.group(3) is None:
            raise ValueError(f"cannot parse {text!r} as a + b*beta")
        if pos > 0 and m.group(1) is None:
            raise ValueError(f"cannot parse {text!r} as a + b*beta")
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            coef = -coef
        if m.group(3):
            b += coef
        else:
            a += coef
        pos = m.end()
    return QBeta(a, b)


def as_qbeta(x) -> QBeta:
    """Coerce ints, Fractions, strings and QBeta; floats are converted exactly."""
    if isinstance(x, float):
        return QBeta(Fraction(x))
    if isinstance(x, str):
        return parse_qbeta(x)
    o = _coerce(x)
    if o is None:
        raise TypeError(f"cannot convert {type(x).__name__} to QBeta")
    return o


def compare(x, y) -> int:
    """-1, 0 or 1 as x <, ==, > y (exact)."""
    return as_qbeta(x)._cmp(y)


def to_float(x, precision: int = 53):
    """Real value of ``x``; a Python float at 53 bits, an mpf above that."""
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    x = as_qbeta(x)
    with mpmath.workprec(precision + 16):
        sqrt5 = mpmath.sqrt(5)
        val = (mpmath.mpf(2 * x._p + x._q) + x._q * sqrt5) / (2 * x._d)
    if precision == 53:
        return float(val)
    with mpmath.workprec(precision):
        return +val


ZERO = QBeta._raw(0, 0, 1)
ONE = QBeta._raw(1, 0, 1)
BETA = QBeta._raw(0, 1, 1)


def render(x, precision: int = 53) -> dict:
    """Exact record plus float and decimal renderings, for machine-readable output."""
    x = as_qbeta(x)
    digits = max(15, int(precision * math.log10(2)))
    rec = x.to_record()
    rec["float"] = to_float(x)
    rec["decimal"] = mpmath.nstr(to_float(x, max(precision, 64)), digits)
    rec["precision_bits"] = precision
    return rec
