"""Polynomials in ``t`` with coefficients in the rational function field Q(r, s).

Coefficients are elements of a sympy ``FracField`` over QQ in the generators
``r, s`` with graded-lex order (r > s).  sympy keeps each fraction cancelled
and puts a positive leading coefficient on the denominator, which is the
normal form used for witnesses.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable

from sympy import QQ
from sympy.polys.fields import field
from sympy.polys.orderings import grlex

from .errors import NonExactDivision, ParameterPole
from .poly import Poly

FIELD, R, S = field("r,s", QQ, grlex)


def scalar(x):
    """Coerce an int, Fraction or field element to a ParamScalar."""
    if isinstance(x, Fraction):
        return FIELD(QQ(x.numerator, x.denominator))
    if isinstance(x, int):
        return FIELD(x)
    if isinstance(x, Rational):
        return FIELD(QQ(int(x.numerator), int(x.denominator)))
    return FIELD(x)


def _to_fraction(q) -> Fraction:
    return Fraction(int(QQ.numer(q)), int(QQ.denom(q)))


def scalar_eval(c, r0, s0) -> Fraction:
    r0, s0 = Fraction(r0), Fraction(s0)
    args = (QQ(r0.numerator, r0.denominator), QQ(s0.numerator, s0.denominator))
    d = c.denom(*args)
    if not d:
        raise ParameterPole(f"denominator {c.denom} vanishes at r={r0}, s={s0}")
    return _to_fraction(c.numer(*args)) / _to_fraction(d)


def scalar_is_integral(c) -> bool:
    """True iff ``c`` lies in Z[r, s]."""
    if c.denom != 1:
        return False
    return all(QQ.denom(v) == 1 for v in c.numer.coeffs()) if c.numer else True


class ParamPoly:
    """Immutable polynomial in ``t`` over Q(r, s), ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls) -> "ParamPoly":
        return cls([0, 1])

    @classmethod
    def from_poly(cls, p: Poly) -> "ParamPoly":
        return cls(p.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else FIELD(0)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else FIELD(0)

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] = res[i] + c
        return ParamPoly(res)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, ParamPoly):
            if isinstance(other, Poly):
                other = ParamPoly.from_poly(other)
            else:
                c = scalar(other)
                return ParamPoly([x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ParamPoly()
        res = [FIELD(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b, i):
                    res[j] = res[j] + x * y
        return ParamPoly(res)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = scalar(other)
        if not c:
            raise ZeroDivisionError("ParamPoly divided by zero scalar")
        return ParamPoly([x / c for x in self.coeffs])

    def __pow__(self, k: int):
        res = ParamPoly([1])
        for _ in range(k):
            res = res * self
        return res

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self, k: int = 1) -> "ParamPoly":
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [c * i for i, c in enumerate(cs)][1:]
        return ParamPoly(cs)

    def divmod(self, b: "ParamPoly") -> tuple["ParamPoly", "ParamPoly"]:
        if b.is_zero:
            raise ZeroDivisionError("ParamPoly division by zero")
        r = list(self.coeffs)
        db = b.degree
        if len(r) - 1 < db:
            return ParamPoly(), self
        lcb = b.lc
        q = [FIELD(0)] * (len(r) - db)
        for i in range(len(r) - 1 - db, -1, -1):
            c = r[i + db] / lcb
            q[i] = c
            if c:
                for j, y in enumerate(b.coeffs):
                    r[i + j] = r[i + j] - c * y
        return ParamPoly(q), ParamPoly(r[:db])

    def exact_div(self, b: "ParamPoly") -> "ParamPoly":
        q, rem = self.divmod(_coerce(b))
        if not rem.is_zero:
            raise NonExactDivision(rem)
        return q

    def __call__(self, r0, s0) -> Poly:
        return pp_eval(self, r0, s0)

    def __repr__(self):
        return "ParamPoly([%s])" % ", ".join(str(c) for c in self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c:
                mono = "" if k == 0 else ("*t" if k == 1 else f"*t^{k}")
                terms.append(f"({c}){mono}")
        return " + ".join(terms)


def _coerce(x) -> ParamPoly | None:
    if isinstance(x, ParamPoly):
        return x
    if isinstance(x, Poly):
        return ParamPoly.from_poly(x)
    try:
        return ParamPoly([scalar(x)])
    except Exception:
        return None


def pp_eval(a: ParamPoly, r0, s0) -> Poly:
    """Specialize r and s to rational values, coefficient by coefficient."""
    return Poly([scalar_eval(c, r0, s0) for c in a.coeffs])


def pp_is_in_Zrst(a: ParamPoly) -> tuple[bool, object]:
    """``(True, None)`` if ``a`` has coefficients in Z[r, s], else ``(False, (k, coeff))``."""
    for k, c in enumerate(a.coeffs):
        if not scalar_is_integral(c):
            return False, (k, c)
    return True, None


def pp_exact_div(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    return a.exact_div(b)
