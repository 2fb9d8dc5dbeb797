"""Reduced rational functions in ``t`` over Q."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZeroFunction, PoleEvaluation
from .poly import ONE, Poly, evaluate, exact_div, gcd


class RatFunc:
    """``num/den`` with ``den`` monic and ``gcd(num, den) == 1``.

    Every constructor call reduces, so equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = _as_poly(num)
        den = ONE if den is None else _as_poly(den)
        if den.is_zero:
            raise DivisionByZeroFunction("rational function with zero denominator")
        if num.is_zero:
            den = ONE
        elif not _reduced:
            g = gcd(num, den)
            if g.degree > 0:
                num = exact_div(num, g)
                den = exact_div(den, g)
            lc = den.lc
            if lc != 1:
                num = num / lc
                den = den / lc
        self.num = num
        self.den = den

    @classmethod
    def t(cls) -> "RatFunc":
        return cls(Poly.t(), _reduced=True)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    @property
    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        g = gcd(self.den, o.den)
        if g.degree == 0:
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)
        a = exact_div(o.den, g)
        b = exact_div(self.den, g)
        return RatFunc(self.num * a + o.num * b, self.den * a)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

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
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.is_constant:
            c = o.num.coeff(0)
            return RatFunc(self.num * c, self.den, _reduced=True) if c else RatFunc(0)
        # cross-cancel before multiplying keeps the final gcd small
        g1 = gcd(self.num, o.den)
        g2 = gcd(o.num, self.den)
        n1, d2 = exact_div(self.num, g1), exact_div(o.den, g1)
        n2, d1 = exact_div(o.num, g2), exact_div(self.den, g2)
        return RatFunc(n1 * n2, d1 * d2, _reduced=True)._normalize_lc()

    __rmul__ = __mul__

    def _normalize_lc(self) -> "RatFunc":
        lc = self.den.lc
        if lc == 1:
            return self
        return RatFunc(self.num / lc, self.den / lc, _reduced=True)

    def inverse(self) -> "RatFunc":
        if self.num.is_zero:
            raise DivisionByZeroFunction("inverse of the zero function")
        return RatFunc(self.den, self.num, _reduced=True)._normalize_lc()

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise DivisionByZeroFunction("division by the zero function")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self) -> "RatFunc":
        n, d = self.num, self.den
        if d.degree == 0:
            return RatFunc(n.derivative(), d, _reduced=True)
        # (n/d)' = (n'd - nd')/d^2 ; with d = g*e, g = gcd(d, d'), reduce early
        dd = d.derivative()
        g = gcd(d, dd)
        e = exact_div(d, g)
        if g.degree > 0:
            top = n.derivative() * e - n * exact_div(dd, g)
            bottom = e * d
        else:
            top = n.derivative() * d - n * dd
            bottom = d * d
        return RatFunc(top, bottom)

    def compose(self, p: Poly) -> "RatFunc":
        """Substitute a polynomial for ``t``."""
        return RatFunc(self.num.compose(p), self.den.compose(p))

    def __call__(self, x):
        return self.evaluate(x)

    def evaluate(self, x) -> Fraction:
        dv = evaluate(self.den, x)
        if not dv:
            raise PoleEvaluation(f"pole of {self} at t={x}")
        return evaluate(self.num, x) / dv

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return Poly.const(x)
    raise TypeError(f"cannot build a polynomial from {x!r}")


def _coerce(x) -> RatFunc | None:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x, _reduced=True)
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return RatFunc(Poly.const(x), _reduced=True)
    return None


def add(a: RatFunc, b: RatFunc) -> RatFunc:
    return a + b


def sub(a: RatFunc, b: RatFunc) -> RatFunc:
    return a - b


def mul(a: RatFunc, b: RatFunc) -> RatFunc:
    return a * b


def div(a: RatFunc, b: RatFunc) -> RatFunc:
    return a / b


def derivative(a: RatFunc) -> RatFunc:
    return a.derivative()


def compose(a: RatFunc, p: Poly) -> RatFunc:
    return a.compose(p)


def evaluate_rf(a: RatFunc, x) -> Fraction:
    return a.evaluate(x)
