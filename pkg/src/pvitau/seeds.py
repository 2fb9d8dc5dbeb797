"""Closed-form inputs: W(r, m, s), the terminating 2F1 seed, V(a, m, b, n),
the seed solution q and the three parameter charts.

Scalars may be rationals or symbolic elements of Q(r, s); polynomial builders
return a :class:`~pvitau.poly.Poly` or a :class:`~pvitau.parampoly.ParamPoly`
accordingly, from the same code path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import ParameterPole
from .parampoly import FIELD, ParamPoly
from .poly import Poly
from .ratfunc import RatFunc


def _is_symbolic(*xs) -> bool:
    return any(getattr(x, "field", None) is FIELD for x in xs)


def _poly(coeffs, symbolic: bool):
    return ParamPoly(coeffs) if symbolic else Poly(coeffs)


def _q(x):
    return x if _is_symbolic(x) else Fraction(x)


def binom(x, k: int):
    """Generalized binomial x(x-1)...(x-k+1)/k!; zero for negative ``k``."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num = num * (x - i)
    return num / factorial(k) if _is_symbolic(num) else Fraction(num) / factorial(k)


def pochhammer(x, k: int):
    """Rising factorial x(x+1)...(x+k-1)."""
    res = 1
    for i in range(k):
        res = res * (x + i)
    return res


@dataclass(frozen=True)
class SeedParams:
    r: Fraction
    m: int
    s: Fraction

    def __post_init__(self):
        if self.m < 0:
            raise ValueError(f"m must be a nonnegative integer, got {self.m}")
        object.__setattr__(self, "r", _q(self.r))
        object.__setattr__(self, "s", _q(self.s))

    def as_tuple(self):
        return (self.r, self.m, self.s)


@dataclass(frozen=True)
class OkamotoParams:
    b1: Fraction
    b2: Fraction
    b3: Fraction
    b4: Fraction

    def as_tuple(self):
        return (self.b1, self.b2, self.b3, self.b4)


@dataclass(frozen=True)
class PviParams:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    def perturbed(self, **shifts) -> "PviParams":
        vals = {k: getattr(self, k) + Fraction(v) for k, v in shifts.items()}
        return PviParams(**{**self.__dict__, **vals})


def w_poly(r, m: int, s):
    """W(r, m, s) = sum_j (-1)^j C(r+m+1-j, m-j) C(s+m, j) t^(m-j)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    r, s = _q(r), _q(s)
    coeffs = [0] * (m + 1)
    for j in range(m + 1):
        coeffs[m - j] = (-1) ** j * binom(r + m + 1 - j, m - j) * binom(s + m, j)
    return _poly(coeffs, _is_symbolic(r, s))


def hypergeom_z(p: SeedParams):
    """Terminating 2F1(r, -m; s; t) as a polynomial of degree <= m."""
    r, m, s = p.r, p.m, p.s
    coeffs = []
    for j in range(m + 1):
        den = binom(s + j - 1, j)
        if not _is_symbolic(den) and den == 0:
            raise ParameterPole(f"C(s+{j}-1, {j}) vanishes at s={s}")
        coeffs.append((-1) ** j * binom(r + j - 1, j) * binom(m, j) / den)
    return _poly(coeffs, _is_symbolic(r, s))


def v_poly(a, m: int, b: int, n: int) -> Poly:
    """V(a, m, b, n) = sum_{j<=b} (-1)^(j+1) C(n+m+a, b-j) C(a+j, j) t^j."""
    a = Fraction(a)
    return Poly([(-1) ** (j + 1) * binom(n + m + a, b - j) * binom(a + j, j) for j in range(b + 1)])


def chart_okamoto(p: SeedParams) -> OkamotoParams:
    r, m, s = p.r, p.m, p.s
    return OkamotoParams(
        b1=(m + r + 1) / Fraction(2),
        b2=(m - r + 2 * s - 1) / Fraction(2),
        b3=(r + m - 1) / Fraction(2),
        b4=(m - r - 1) / Fraction(2),
    )


def chart_sigma_shift(p: SeedParams) -> SeedParams:
    """The chart move b4 -> b4 + 1, i.e. (r, m, s) -> (r-1, m+1, s-1)."""
    return SeedParams(p.r - 1, p.m + 1, p.s - 1)


def chart_sigma_unshift(p: SeedParams) -> SeedParams:
    return SeedParams(p.r + 1, p.m - 1, p.s + 1)


def pvi_params_from_okamoto(b: OkamotoParams, n: int = 0) -> PviParams:
    """P_VI parameters of the n-th b3-shift of ``b``."""
    b1, b2, b3, b4 = b.as_tuple()
    b3 = b3 + n
    half = Fraction(1, 2)
    return PviParams(
        alpha=(b3 - b4) ** 2 * half,
        beta=-(b1 + b2) ** 2 * half,
        gamma=(b1 - b2) ** 2 * half,
        delta=-(b3 + b4) * (b3 + b4 + 2) * half,
    )


def pvi_params_direct(n: int, p: SeedParams) -> PviParams:
    r, m, s = p.r, p.m, p.s
    half = Fraction(1, 2)
    return PviParams(
        alpha=(n + r) ** 2 * half,
        beta=-(m + s) ** 2 * half,
        gamma=(r - s + 1) ** 2 * half,
        delta=(1 - (n + m) ** 2) * half,
    )


def pvi_params_at(n: int, p: SeedParams) -> PviParams:
    """P_VI parameters solved by q_n (n = 0 is the seed).

    Computed in the (r, m, s) chart and cross-checked against the Okamoto
    chart; a disagreement is a programming error.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    direct = pvi_params_direct(n, p)
    via_b = pvi_params_from_okamoto(chart_okamoto(p), n)
    if direct != via_b:
        raise AssertionError(f"chart mismatch: {direct} vs {via_b}")
    return direct


def seed_q(p: SeedParams) -> RatFunc:
    """q = t + t(t-1) z'/(r z) with z the terminating 2F1."""
    if p.r == 0:
        raise ParameterPole("seed solution needs r != 0")
    z = hypergeom_z(p)
    if z.is_zero:
        raise ParameterPole("hypergeometric seed vanishes identically")
    t = Poly.t()
    return RatFunc(t) + RatFunc(t * (t - 1) * z.derivative(), z * p.r)


def lemma1_sides(p: SeedParams):
    """Both sides of the z/W identity, as polynomials."""
    r, m, s = p.r, p.m, p.s
    z = hypergeom_z(p)
    dz = z.derivative()
    t = Poly.t()
    lhs = dz * (s - r - 1) + (t * dz + z * r) * (r + m + 1)
    poch = pochhammer(s, m)
    if poch == 0:
        raise ParameterPole(f"(s)_m vanishes at s={s}")
    const = Fraction((-1) ** m * factorial(m)) * r * (r + 1) / poch
    return lhs, w_poly(r, m, s) * const


def lemma1_residual(p: SeedParams) -> Poly:
    lhs, rhs = lemma1_sides(p)
    return lhs - rhs


def hypergeometric_ode_residual(p: SeedParams, reading: str = "printed") -> Poly:
    """Residual of the 2F1 equation for z.

    ``printed``: t(1-t)z'' + (s - (r-m+1)t)z' + m r z;
    ``standard``: t(1-t)z'' + (s - (r-m+1)t)z' + m r z with the Gauss form
    c - (a+b+1)t for a=r, b=-m, c=s, which coincides with the printed one.
    ``flipped``: the sign of the z term reversed.
    """
    r, m, s = p.r, p.m, p.s
    z = hypergeom_z(p)
    t = Poly.t()
    a, b, c = r, -m, s
    if reading in ("printed", "standard"):
        mid = Poly([c, -(a + b + 1)])
        return t * (1 - t) * z.derivative(2) + mid * z.derivative() - z * (a * b)
    if reading == "flipped":
        mid = Poly([s, -(r - m + 1)])
        return t * (1 - t) * z.derivative(2) + mid * z.derivative() - z * (m * r)
    raise ValueError(f"unknown reading {reading!r}")
