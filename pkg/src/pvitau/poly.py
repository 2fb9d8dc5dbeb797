"""Dense univariate polynomials in ``t`` with exact rational coefficients.

A :class:`Poly` is stored as a tuple of integer numerators (ascending degree)
over one positive common denominator, kept in lowest terms.  Integer
polynomials, which is what the tau recurrences produce, therefore never
touch :class:`fractions.Fraction` in the hot loops.

Multiplication is schoolbook below :data:`KARATSUBA_THRESHOLD` coefficients
and Karatsuba above it.  GCDs use the heuristic evaluation/interpolation
method with a primitive-PRS fallback; resultants use the subresultant PRS.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from numbers import Rational
from typing import Iterable, Sequence

from .errors import ConstantPolynomial, NonExactDivision, NonIntegralInput

KARATSUBA_THRESHOLD = 24


def _strip(c: list[int]) -> list[int]:
    while c and not c[-1]:
        c.pop()
    return c


def _content(c: Sequence[int]) -> int:
    g = 0
    for x in c:
        g = igcd(g, x)
        if g == 1:
            break
    return g


# ---------------------------------------------------------------------------
# integer coefficient-list kernels
# ---------------------------------------------------------------------------

def _add_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    res = list(a)
    for i, y in enumerate(b):
        res[i] += y
    return res


def _sub_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    res = list(a)
    if len(res) < len(b):
        res.extend([0] * (len(b) - len(res)))
    for i, y in enumerate(b):
        res[i] -= y
    return res


def _school(a: Sequence[int], b: Sequence[int]) -> list[int]:
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b, i):
                res[j] += x * y
    return res


def _mul_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    la, lb = len(a), len(b)
    if not la or not lb:
        return []
    if la < lb:
        a, b, la, lb = b, a, lb, la
    if lb < KARATSUBA_THRESHOLD:
        return _school(a, b)
    if la >= 2 * lb:
        res = [0] * (la + lb - 1)
        for k in range(0, la, lb):
            for i, c in enumerate(_mul_int(a[k:k + lb], b), k):
                res[i] += c
        return res
    h = la // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _mul_int(a0, b0)
    z2 = _mul_int(a1, b1)
    z1 = _sub_int(_sub_int(_mul_int(_add_int(a0, a1), _add_int(b0, b1)), z0), z2)
    res = [0] * (la + lb - 1)
    for i, c in enumerate(z0):
        res[i] += c
    for i, c in enumerate(z1, h):
        if c:
            res[i] += c
    for i, c in enumerate(z2, 2 * h):
        res[i] += c
    return res


def _divexact_int(a: Sequence[int], b: Sequence[int]) -> list[int] | None:
    """Quotient of ``a`` by ``b`` in Z[t], or ``None`` if ``b`` does not divide ``a``."""
    if not a:
        return []
    db = len(b) - 1
    if len(a) - 1 < db:
        return None
    lcb = b[-1]
    r = list(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        top = r[i + db]
        if top:
            c, m = divmod(top, lcb)
            if m:
                return None
            q[i] = c
            for j in range(db):
                if b[j]:
                    r[i + j] -= c * b[j]
    # the top entries were cancelled implicitly; check the low part
    if any(r[:db]):
        return None
    return q


def _prem_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, in Z[t]."""
    db = len(b) - 1
    lcb = b[-1]
    r = list(a)
    for i in range(len(a) - 1 - db, -1, -1):
        top = r[i + db] if i + db < len(r) else 0
        r = [lcb * c for c in r]
        if top:
            for j, y in enumerate(b):
                r[i + j] -= top * y
        del r[i + db:]
    return _strip(r)


def _horner_int(c: Sequence[int], x: int) -> int:
    v = 0
    for y in reversed(c):
        v = v * x + y
    return v


def _primitive_int(c: list[int]) -> list[int]:
    g = _content(c)
    if g == 0:
        return []
    if c[-1] < 0:
        g = -g
    return c if g == 1 else [x // g for x in c]


def _heuristic_gcd(f: list[int], g: list[int]) -> list[int] | None:
    """GCD of primitive integer polynomials by evaluation at a large integer.

    The evaluation point is at least ``2*min(|f|, |g|) + 2``, so a candidate
    that divides both inputs is the true gcd.  Returns ``None`` after a few
    unlucky points; callers fall back to the PRS route.
    """
    nf = max(abs(x) for x in f)
    ng = max(abs(x) for x in g)
    x = 2 * min(nf, ng) + 29
    for _ in range(6):
        hv = igcd(_horner_int(f, x), _horner_int(g, x))
        if hv:
            h = []
            half = x // 2
            while hv:
                c = hv % x
                if c > half:
                    c -= x
                h.append(c)
                hv = (hv - c) // x
            h = _primitive_int(h)
            if h and _divexact_int(f, h) is not None and _divexact_int(g, h) is not None:
                return h
        x = 73794 * x * _isqrt(_isqrt(x)) // 27011
    return None


def _isqrt(n: int) -> int:
    from math import isqrt

    return isqrt(n)


def _prs_gcd(f: list[int], g: list[int]) -> list[int]:
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = _prem_int(f, g)
        f, g = g, _primitive_int(r)
    return _primitive_int(f)


def _zz_gcd(f: list[int], g: list[int]) -> list[int]:
    """Primitive gcd (positive leading coefficient) of integer polynomials."""
    f, g = _primitive_int(list(f)), _primitive_int(list(g))
    if not f:
        return g
    if not g:
        return f
    if len(f) == 1 or len(g) == 1:
        return [1]
    h = _heuristic_gcd(f, g)
    if h is None:
        h = _prs_gcd(f, g)
    return h


def _zz_resultant(a: list[int], b: list[int]) -> int:
    """Resultant of integer polynomials by the subresultant algorithm."""
    if not a or not b:
        return 0
    da, db = len(a) - 1, len(b) - 1
    if da == 0 and db == 0:
        return 1
    if db == 0:
        return b[0] ** da
    if da == 0:
        return a[0] ** db
    ca, cb = _content(a), _content(b)
    if a[-1] < 0:
        ca = -ca
    if b[-1] < 0:
        cb = -cb
    A = [x // ca for x in a]
    B = [x // cb for x in b]
    t = ca ** db * cb ** da
    s = 1
    if da < db:
        A, B = B, A
        if da % 2 and db % 2:
            s = -s
    g = h = 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _prem_int(A, B)
        A = B
        div = g * h ** delta
        B = [x // div for x in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)
        if not B:
            return 0
        if len(B) == 1:
            dA = len(A) - 1
            if dA == 0:
                return s * t * h
            h = B[0] ** dA // h ** (dA - 1)
            return s * t * h


# ---------------------------------------------------------------------------
# Poly
# ---------------------------------------------------------------------------

class Poly:
    """Immutable dense polynomial over Q in the variable ``t``.

    >>> Poly([1, -5, 5])
    Poly([1, -5, 5])
    >>> str(Poly([1, -5, 5]))
    '5*t^2 - 5*t + 1'
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        fr = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            d = c.denominator
            if d != 1:
                den = den * d // igcd(den, d)
        num = [c.numerator * (den // c.denominator) for c in fr]
        self._set(_strip(num), den)

    def _set(self, num: list[int], den: int) -> None:
        if den != 1:
            if den < 0:
                num, den = [-x for x in num], -den
            g = igcd(_content(num), den) if num else den
            if g != 1:
                num = [x // g for x in num]
                den //= g
        self._num = tuple(num)
        self._den = den
        self._hash = None

    @classmethod
    def _make(cls, num: list[int], den: int = 1) -> "Poly":
        p = cls.__new__(cls)
        p._set(_strip(num), den)
        return p

    @classmethod
    def t(cls) -> "Poly":
        return cls._make([0, 1])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls._make([1])
        for x in roots:
            p = p * cls([-Fraction(x), 1])
        return p

    # -- inspection ---------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(c, d) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self._num) - 1

    @property
    def is_zero(self) -> bool:
        return not self._num

    @property
    def is_integral(self) -> bool:
        return self._den == 1

    @property
    def lc(self) -> Fraction:
        return Fraction(self._num[-1], self._den) if self._num else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._num):
            return Fraction(self._num[k], self._den)
        return Fraction(0)

    def integer_coeffs(self) -> tuple[int, ...]:
        if self._den != 1:
            raise NonIntegralInput(f"{self} has non-integral coefficients")
        return self._num

    def max_bits(self) -> int:
        return max((abs(c).bit_length() for c in self._num), default=0) + (self._den.bit_length() - 1)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return Poly._make([other.numerator], other.denominator)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._den == o._den:
            return Poly._make(_add_int(self._num, o._num), self._den)
        d = self._den * o._den // igcd(self._den, o._den)
        a = [x * (d // self._den) for x in self._num]
        b = [x * (d // o._den) for x in o._num]
        return Poly._make(_add_int(a, b), d)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make([-x for x in self._num], self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly._make(_mul_int(self._num, other._num), self._den * other._den)
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            other = Fraction(other)
            return Poly._make([x * other.numerator for x in self._num], self._den * other.denominator)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            other = Fraction(other)
            if not other:
                raise ZeroDivisionError("polynomial divided by zero scalar")
            return self * (1 / other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly._make([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def __bool__(self):
        return bool(self._num)

    def __call__(self, x):
        return evaluate(self, x)

    def derivative(self, k: int = 1) -> "Poly":
        num = list(self._num)
        for _ in range(k):
            num = [i * c for i, c in enumerate(num)][1:]
        return Poly._make(num, self._den)

    def compose(self, other: "Poly") -> "Poly":
        """``self(other(t))``."""
        res = Poly._make([])
        for c in reversed(self.coeffs):
            res = res * other + c
        return res

    def exact_div(self, other: "Poly") -> "Poly":
        return exact_div(self, other)

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return Poly._make(list(self._num), self._num[-1]) if self._num[-1] > 0 else \
            Poly._make([-x for x in self._num], -self._num[-1])

    def shift_degree(self, k: int) -> "Poly":
        """Multiply by ``t**k``."""
        if not self._num:
            return self
        return Poly._make([0] * k + list(self._num), self._den)

    def __repr__(self):
        return "Poly([%s])" % ", ".join(str(c) for c in self.coeffs)

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly, var: str = "t") -> str:
    if p.is_zero:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    s0, b0 = parts[0]
    out = ("-" if s0 == "-" else "") + b0
    for sgn, body in parts[1:]:
        out += f" {sgn} {body}"
    return out


# ---------------------------------------------------------------------------
# functional surface
# ---------------------------------------------------------------------------

def add(a: Poly, b: Poly) -> Poly:
    return a + b


def sub(a: Poly, b: Poly) -> Poly:
    return a - b


def mul(a: Poly, b: Poly) -> Poly:
    return a * b


def scalar_mul(c, a: Poly) -> Poly:
    return a * Fraction(c)


def derivative(a: Poly, k: int = 1) -> Poly:
    return a.derivative(k)


def evaluate(a: Poly, x) -> Fraction:
    """Exact value of ``a`` at a rational point."""
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    num = a.numerators
    if not num:
        return Fraction(0)
    if q == 1:
        return Fraction(_horner_int(num, p), a.denominator)
    # homogenised Horner: sum c_i p^i q^(d-i)
    v = 0
    qpow = 1
    for c in reversed(num):
        v = v * p + c * qpow
        qpow *= q
    d = len(num) - 1
    return Fraction(v, a.denominator * q ** d)


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division over Q."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a.coeffs)
    bc = b.coeffs
    db = len(bc) - 1
    lcb = bc[-1]
    if len(r) - 1 < db:
        return Poly(), a
    q = [Fraction(0)] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db] / lcb
        q[i] = c
        if c:
            for j in range(db + 1):
                r[i + j] -= c * bc[j]
    return Poly(q), Poly(r[:db])


def exact_div(a: Poly, b: Poly) -> Poly:
    """Quotient ``q`` with ``a == q*b`` exactly.

    Raises :class:`NonExactDivision` carrying the remainder otherwise.
    Works in Z[t] on the primitive part of ``b`` (Gauss's lemma), so the
    inner loop is pure integer arithmetic.
    """
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero:
        return a
    bn = b.numerators
    cb = _content(bn)
    if bn[-1] < 0:
        cb = -cb
    pb = [x // cb for x in bn]
    q = _divexact_int(a.numerators, pb)
    if q is None:
        raise NonExactDivision(divmod_poly(a, b)[1])
    # a = A/da, b = cb*pb/db  =>  a/b = (A/pb) * db / (da*cb)
    return Poly._make(q, a.denominator * cb) * b.denominator if b.denominator != 1 \
        else Poly._make(q, a.denominator * cb)


def divides(b: Poly, a: Poly) -> bool:
    try:
        exact_div(a, b)
    except NonExactDivision:
        return False
    return True


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor over Q (zero if both inputs are zero)."""
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    g = _zz_gcd(list(a.numerators), list(b.numerators))
    return Poly._make(g).monic()


def prs_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the primitive PRS only; an independent route to :func:`gcd`."""
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    f, g = _primitive_int(list(a.numerators)), _primitive_int(list(b.numerators))
    return Poly._make(_prs_gcd(f, g)).monic()


def content_primitive(a: Poly) -> tuple[int, Poly]:
    """Split an integer polynomial into positive content and primitive part.

    The primitive part keeps the sign of the input, so ``-6t + 12`` gives
    ``(6, -t + 2)``.  The zero polynomial has content 0.
    """
    c = a.integer_coeffs()
    g = _content(c)
    if g == 0:
        return 0, a
    return g, Poly._make([x // g for x in c])


def content(a: Poly) -> int:
    return content_primitive(a)[0]


def resultant(a: Poly, b: Poly) -> Fraction:
    """Res(a, b) over Q via the subresultant PRS on integer scalings."""
    if a.is_zero or b.is_zero:
        return Fraction(0)
    r = _zz_resultant(list(a.numerators), list(b.numerators))
    # a = A/da, b = B/db ; Res(cF, G) = c^deg G Res(F, G)
    return Fraction(r, a.denominator ** b.degree * b.denominator ** a.degree)


def discriminant(a: Poly) -> Fraction:
    """(-1)^(d(d-1)/2) * Res(a, a') / lc(a), with ``d = deg a``."""
    d = a.degree
    if d < 1:
        raise ConstantPolynomial(f"discriminant of constant polynomial {a}")
    if d == 1:
        return Fraction(1)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(a, a.derivative()) / a.lc


def sylvester_resultant(a: Poly, b: Poly) -> Fraction:
    """Resultant as the Sylvester determinant (Fraction Gaussian elimination).

    Quadratic-memory reference route, independent of the PRS machinery.
    """
    m, n = a.degree, b.degree
    if m < 0 or n < 0:
        return Fraction(0)
    size = m + n
    if size == 0:
        return Fraction(1)
    ac = list(reversed(a.coeffs))
    bc = list(reversed(b.coeffs))
    M = []
    for i in range(n):
        M.append([Fraction(0)] * i + ac + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        M.append([Fraction(0)] * i + bc + [Fraction(0)] * (size - n - 1 - i))
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if M[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        for r in range(col + 1, size):
            f = M[r][col] / M[col][col]
            if f:
                for k in range(col, size):
                    M[r][k] -= f * M[col][k]
    return det


T = Poly.t()
ONE = Poly._make([1])
ZERO = Poly._make([])
