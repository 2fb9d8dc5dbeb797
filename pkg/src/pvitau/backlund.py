"""Okamoto's Hamiltonian machinery for P_VI and the b3 -> b3 + 1 transformation.

The formula helpers (names ending in ``_expr``) accept any field-like values
for p, q, t: rationals for point checks, :class:`RatFunc` for functions of t.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ChartViolation, DegenerateQ, DegenerateTransformation, ParameterPole, RiccatiViolation
from .poly import Poly
from .ratfunc import RatFunc
from .seeds import (OkamotoParams, SeedParams, chart_okamoto, hypergeom_z, seed_q, w_poly)

HALF = Fraction(1, 2)


def _t() -> RatFunc:
    return RatFunc.t()


def sigma2(*xs) -> Fraction:
    """Second elementary symmetric function."""
    total = Fraction(0)
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            total += xs[i] * xs[j]
    return total


# ---------------------------------------------------------------------------
# Hamiltonian
# ---------------------------------------------------------------------------

def hamiltonian_expr(p, q, t, b: OkamotoParams):
    b1, b2, b3, b4 = b.as_tuple()
    body = (q * (q - 1) * (q - t) * p * p
            - p * ((b1 + b2) * (q - 1) * (q - t) + (b1 - b2) * q * (q - t) + (b3 + b4) * q * (q - 1))
            + (b1 + b3) * (b1 + b4) * (q - t))
    return body / (t * (t - 1))


def dH_dp_expr(p, q, t, b: OkamotoParams):
    b1, b2, b3, b4 = b.as_tuple()
    body = (2 * p * q * (q - 1) * (q - t)
            - ((b1 + b2) * (q - 1) * (q - t) + (b1 - b2) * q * (q - t) + (b3 + b4) * q * (q - 1)))
    return body / (t * (t - 1))


def dH_dq_expr(p, q, t, b: OkamotoParams):
    b1, b2, b3, b4 = b.as_tuple()
    body = (p * p * (3 * q * q - 2 * (1 + t) * q + t)
            - p * ((b1 + b2) * (2 * q - 1 - t) + (b1 - b2) * (2 * q - t) + (b3 + b4) * (2 * q - 1))
            + (b1 + b3) * (b1 + b4))
    return body / (t * (t - 1))


def _check_q(q: RatFunc) -> None:
    t = _t()
    if q.is_constant and q.num.coeff(0) in (0, 1) or q == t:
        raise DegenerateQ(f"q = {q} is a fixed singular value")


def hamiltonian_H(pfun: RatFunc, qfun: RatFunc, b: OkamotoParams) -> RatFunc:
    _check_q(qfun)
    return hamiltonian_expr(pfun, qfun, _t(), b)


def h_function(pfun: RatFunc, qfun: RatFunc, b: OkamotoParams) -> RatFunc:
    """h = t(t-1)H + sigma'(b) t - sigma(b)/2."""
    t = _t()
    b1, b2, b3, b4 = b.as_tuple()
    return t * (t - 1) * hamiltonian_H(pfun, qfun, b) + t * sigma2(b1, b3, b4) - sigma2(b1, b2, b3, b4) / 2


def h_plus(pfun: RatFunc, qfun: RatFunc, b: OkamotoParams) -> RatFunc:
    b1, b2, b3, b4 = b.as_tuple()
    return (h_function(pfun, qfun, b) - pfun * qfun * (qfun - 1) + (b1 + b4) * qfun
            - (b1 + b2 + b4) * HALF)


@dataclass(frozen=True)
class HamiltonianData:
    H: RatFunc
    h: RatFunc
    hplus: RatFunc


def hamiltonian_data(pfun: RatFunc, qfun: RatFunc, b: OkamotoParams) -> HamiltonianData:
    return HamiltonianData(hamiltonian_H(pfun, qfun, b), h_function(pfun, qfun, b), h_plus(pfun, qfun, b))


# ---------------------------------------------------------------------------
# Riccati reduction
# ---------------------------------------------------------------------------

def riccati_rhs(qfun, b: OkamotoParams, t=None):
    b1, b2, b3, b4 = b.as_tuple()
    t = _t() if t is None else t
    return ((b4 - b3) * qfun * qfun + (2 * b1 * t + b2 - b4 - 1) * qfun - (b1 + b2) * t) / (t * (t - 1))


def riccati_residual(qfun: RatFunc, b: OkamotoParams) -> RatFunc:
    """q' minus the Riccati right-hand side."""
    return qfun.derivative() - riccati_rhs(qfun, b)


def p_long_form(qfun: RatFunc, b: OkamotoParams) -> RatFunc:
    """p recovered from dq/dt = dH/dp."""
    b1, b2, b3, b4 = b.as_tuple()
    t = _t()
    q = qfun
    return (t * (t - 1) * q.derivative() / (2 * q * (q - 1) * (q - t))
            + ((b1 + b2) / q + (b1 - b2) / (q - 1) + (b3 + b4) / (q - t)) * HALF)


def p_from_seed(qfun: RatFunc, b: OkamotoParams) -> RatFunc:
    """p = (b1 + b4)/(q - t), valid when q solves the Riccati equation."""
    res = riccati_residual(qfun, b)
    if not res.is_zero:
        raise RiccatiViolation(f"q does not satisfy the Riccati equation; residual {res}")
    short = (b.b1 + b.b4) / (qfun - _t())
    long = p_long_form(qfun, b)
    if long != short:
        raise RiccatiViolation(f"long and short forms of p disagree: {long - short}")
    return short


# ---------------------------------------------------------------------------
# the + transformation
# ---------------------------------------------------------------------------

_READINGS = ("corrected", "printed")


def _check_reading(reading: str) -> None:
    if reading not in _READINGS:
        raise ValueError(f"unknown reading {reading!r}")


def backlund_uv_expr(p, q, t, b: OkamotoParams, reading: str = "corrected"):
    """Numerator U and denominator V of q+ = U/V, assembled term by term.

    ``printed`` takes the first factor of U literally, with -(b1+b4)(q-1);
    ``corrected`` uses -b1(q-t) - b4(q-1), which is what the A+, B+, C+
    route produces. V is the same in both readings.
    """
    _check_reading(reading)
    b1, b2, b3, b4 = b.as_tuple()
    b3p = b3 + 1
    if reading == "printed":
        lin = (b1 + b4) * (q - 1)
    else:
        lin = b1 * (q - t) + b4 * (q - 1)
    U = (t * (p * (q - 1) * (q - t) - b3p * (t - 1) - lin)
         * (p * q * (q - 1) * (q - t) - (b1 + b4) * q * (q - 1) - b3p * q * (t - 1)
            + b1 * t * (q - 1) + b2 * (q - t)))
    V = (q - t) * (p * p * q * (q - 1) * (q - t) ** 2
                   - p * (q - t) * (2 * (b1 + b4) * q * q - (b1 + b2 + 2 * b4 + 2 * b1 * t) * q + (b1 + b2) * t)
                   + (b1 * b1 - b3p * b3p) * t * t
                   + (b1 * b2 + b1 * b4 + b2 * b4 + b3p * b3p) * t
                   + (b1 + b4) ** 2 * q * q
                   - (b1 + b4) * (2 * b1 * t + b2 + b4) * q)
    return U, V


def backlund_collapsed_expr(p, q, t, b: OkamotoParams, reading: str = "printed"):
    """q+ after substituting b3 = b1 - 1 and cancelling p(q-t) - (b1+b4).

    ``printed`` keeps the numerator factor (2b1 + b4 + b2) q as printed;
    ``symmetric`` uses (2b1 t + b2 + b4) q as in the denominator.
    """
    b1, b2, b3, b4 = b.as_tuple()
    base = p * q * (q - 1) * (q - t) - (b1 + b4) * q * q - (b1 + b2) * t
    if reading == "printed":
        top = base + (2 * b1 + b4 + b2) * q
    elif reading == "symmetric":
        top = base + (2 * b1 * t + b2 + b4) * q
    else:
        raise ValueError(f"unknown reading {reading!r}")
    bottom = base + (2 * b1 * t + b2 + b4) * q
    return t * (q - 1) * top / ((q - t) * bottom)


def abc_expr(hp, dhp, d2hp, t, b: OkamotoParams, reading: str = "corrected"):
    """A+, B+, C+ from h+ and its first two derivatives.

    The dh+/dt coefficient in B+ is b1+b2+(b3+1)+b4 when ``corrected`` and
    b1+b2+b3+b4 when ``printed``.
    """
    _check_reading(reading)
    b1, b2, b3, b4 = b.as_tuple()
    b3p = b3 + 1
    lin = b1 + b2 + b4 + (b3p if reading == "corrected" else b3)
    A = (dhp + b3p * b3p) * (dhp + b4 * b4)
    B = (t * (t - 1) * d2hp + lin * dhp
         - (b1 * b2 * b3p + b1 * b2 * b4 + b1 * b3p * b4 + b2 * b3p * b4))
    C = 2 * (t * dhp - hp) - sigma2(b1, b2, b3p, b4)
    return A, B, C


def qplus_from_abc(hp, dhp, d2hp, t, b: OkamotoParams, reading: str = "corrected"):
    b1, b2, b3, b4 = b.as_tuple()
    A, B, C = abc_expr(hp, dhp, d2hp, t, b, reading)
    return ((b3 + 1 + b4) * B + (dhp - (b3 + 1) * b4) * C) / (2 * A)


class Jet:
    """Truncated Taylor series c0 + c1 e + ... + c_{k} e^k over Q."""

    __slots__ = ("c",)
    ORDER = 3

    def __init__(self, c):
        c = [Fraction(x) for x in c][:self.ORDER]
        self.c = c + [Fraction(0)] * (self.ORDER - len(c))

    @staticmethod
    def _lift(x):
        return x if isinstance(x, Jet) else Jet([x])

    def __add__(self, o):
        o = Jet._lift(o)
        return Jet([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Jet([-a for a in self.c])

    def __sub__(self, o):
        return self + (-Jet._lift(o))

    def __rsub__(self, o):
        return Jet._lift(o) - self

    def __mul__(self, o):
        o = Jet._lift(o)
        n = self.ORDER
        return Jet([sum(self.c[i] * o.c[k - i] for i in range(k + 1)) for k in range(n)])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Jet([1])
        for _ in range(k):
            out = out * self
        return out

    def inverse(self):
        if self.c[0] == 0:
            raise ZeroDivisionError("jet with zero constant term")
        inv = [1 / self.c[0]]
        for k in range(1, self.ORDER):
            inv.append(-sum(self.c[i] * inv[k - i] for i in range(1, k + 1)) / self.c[0])
        return Jet(inv)

    def __truediv__(self, o):
        return self * Jet._lift(o).inverse()

    def __rtruediv__(self, o):
        return Jet._lift(o) * self.inverse()

    def integrate(self, c0):
        return Jet([c0] + [self.c[k] / (k + 1) for k in range(self.ORDER - 1)])


def flow_jets(p0, q0, t0, b: OkamotoParams):
    """Taylor jets of (p, q, t) at t0 for the Hamiltonian flow through (p0, q0)."""
    t = Jet([t0, 1])
    p, q = Jet([p0]), Jet([q0])
    for _ in range(Jet.ORDER):
        p, q = (-dH_dq_expr(p, q, t, b)).integrate(p0), dH_dp_expr(p, q, t, b).integrate(q0)
    return p, q, t


def hplus_derivatives_at(p0, q0, t0, b: OkamotoParams):
    """h+, dh+/dt, d2h+/dt2 at a point of phase space, exactly."""
    p, q, t = flow_jets(p0, q0, t0, b)
    b1, b2, b3, b4 = b.as_tuple()
    h = t * (t - 1) * hamiltonian_expr(p, q, t, b) + t * sigma2(b1, b3, b4) - sigma2(b1, b2, b3, b4) / 2
    hp = h - p * q * (q - 1) + (b1 + b4) * q - (b1 + b2 + b4) * HALF
    return hp.c[0], hp.c[1], 2 * hp.c[2]


def qplus_point(p0, q0, t0, b: OkamotoParams, route: str = "uv", reading: str = "corrected") -> Fraction:
    """q+ at a rational point (p0, q0, t0) through either route."""
    p0, q0, t0 = Fraction(p0), Fraction(q0), Fraction(t0)
    if route == "uv":
        U, V = backlund_uv_expr(p0, q0, t0, b, reading)
        if V == 0:
            raise DegenerateTransformation("V vanishes at this point")
        return U / V
    if route == "abc":
        hp, d1, d2 = hplus_derivatives_at(p0, q0, t0, b)
        A, _, _ = abc_expr(hp, d1, d2, t0, b, reading)
        if A == 0:
            raise DegenerateTransformation("A+ vanishes at this point")
        return qplus_from_abc(hp, d1, d2, t0, b, reading)
    raise ValueError(f"unknown route {route!r}")


def backlund_qplus(pfun: RatFunc, qfun: RatFunc, b: OkamotoParams, route: str = "uv",
                   reading: str = "corrected") -> RatFunc:
    """q(b1, b2, b3 + 1, b4) from a solution (p, q) with parameters b.

    ``uv`` assembles U/V; ``abc`` goes through h+ and A+, B+, C+ with exact
    differentiation of h+ along the solution. On the Riccati locus with
    b1 = b3 + 1 both U and V vanish identically through the common factor
    p(q-t) - (b1+b4); the uv route then returns the cancelled fraction.
    """
    t = _t()
    if route == "uv":
        U, V = backlund_uv_expr(pfun, qfun, t, b, reading)
        if not V.is_zero:
            return U / V
        if b.b1 == b.b3 + 1 and U.is_zero:
            return backlund_collapsed_expr(pfun, qfun, t, b)
        raise DegenerateTransformation("V vanishes identically")
    if route == "abc":
        hp = h_plus(pfun, qfun, b)
        dhp = hp.derivative()
        d2hp = dhp.derivative()
        A, _, _ = abc_expr(hp, dhp, d2hp, t, b, reading)
        if A.is_zero:
            raise DegenerateTransformation("A+ vanishes identically")
        return qplus_from_abc(hp, dhp, d2hp, t, b, reading)
    raise ValueError(f"unknown route {route!r}")


def _require_chart(b: OkamotoParams) -> None:
    if b.b1 != b.b3 + 1:
        raise ChartViolation(f"need b1 = b3 + 1, got b1={b.b1}, b3={b.b3}")


def q1_collapsed_expr(q, t, b: OkamotoParams):
    b1, b2 = b.b1, b.b2
    return (b1 + b2) * t * (q - 1) / ((2 * b1 * t + b2 - b1) * q - (b1 + b2) * t)


def q1_collapsed(qfun: RatFunc, b: OkamotoParams) -> RatFunc:
    """q1 = (b1+b2) t (q-1) / ((2 b1 t + b2 - b1) q - (b1+b2) t)."""
    _require_chart(b)
    return q1_collapsed_expr(qfun, _t(), b)


# ---------------------------------------------------------------------------
# tau functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyTimesExponents:
    """poly * t^et * (t-1)^et1 with rational exponents."""

    poly: Poly
    et: Fraction
    et1: Fraction

    def log_derivative(self) -> RatFunc:
        t = _t()
        p = RatFunc(self.poly)
        return p.derivative() / p + self.et / t + self.et1 / (t - 1)

    def as_poly(self) -> Poly:
        if self.et == 0 and self.et1 == 0:
            return self.poly
        if self.et.denominator == 1 and self.et1.denominator == 1 and self.et >= 0 and self.et1 >= 0:
            return self.poly * Poly.t() ** int(self.et) * Poly([-1, 1]) ** int(self.et1)
        raise ValueError(f"t^{self.et} (t-1)^{self.et1} is not a polynomial factor")


def h1_and_tau1(b: OkamotoParams):
    """H1, and the (t, t-1) exponents of tau_1 and sigma_1."""
    _require_chart(b)
    b1, b2, b3, b4 = b.as_tuple()
    t = _t()
    H1 = -(b1 + b2) * (b1 + b4) / t - (b1 - b2) * (b1 + b4) / (t - 1)
    tau1 = (-(b1 + b2) * (b1 + b4), -(b1 - b2) * (b1 + b4))
    sigma1 = (-(b1 + b2) * (b1 + b4 + 1), -(b1 - b2) * (b1 + b4 + 1))
    return H1, tau1, sigma1


def h1_from_backlund(pfun: RatFunc, qfun: RatFunc, b: OkamotoParams) -> RatFunc:
    """H+ = H - (p q (q-1) - (b1+b4)(q-t)) / (t(t-1)) along the seed."""
    t = _t()
    return hamiltonian_H(pfun, qfun, b) - (pfun * qfun * (qfun - 1) - (b.b1 + b.b4) * (qfun - t)) / (t * (t - 1))


def ansatz_exponents(n: int, b: OkamotoParams) -> tuple[Fraction, Fraction]:
    b1, b2, b3, b4 = b.as_tuple()
    return (b1 + b4) * (b1 + b2 + n - 1), (b1 + b4) * (b1 - b2 + n - 1)


def tau_ansatz_split(n: int, b: OkamotoParams, tau_n: PolyTimesExponents) -> PolyTimesExponents:
    """T_n = tau_n * t^a (t-1)^b; exponents vanish when the ansatz fits."""
    a, c = ansatz_exponents(n, b)
    return PolyTimesExponents(tau_n.poly, tau_n.et + a, tau_n.et1 + c)


def tau_ansatz_implant(n: int, b: OkamotoParams, T_n: Poly) -> PolyTimesExponents:
    a, c = ansatz_exponents(n, b)
    return PolyTimesExponents(T_n, -a, -c)


# ---------------------------------------------------------------------------
# tau_2 = W
# ---------------------------------------------------------------------------

def prop1_expression(p: SeedParams) -> RatFunc:
    """The log-derivative of T_2 written through z and z'."""
    r, m, s = p.r, p.m, p.s
    z = RatFunc(hypergeom_z(p))
    dz = z.derivative()
    t = _t()
    L = (s - r - 1) * dz + (r + m + 1) * (t * dz + r * z)
    if L.is_zero:
        raise ParameterPole("Lemma-1 combination vanishes")
    M = r * (m + s) * z - (r + m + 1) * t * ((t - 1) * dz + r * z)
    return -s / t + (m - r + s - 1) / (t - 1) - (r + 1) / (t * (t - 1)) * M / L


def prop1_b_route(p: SeedParams) -> RatFunc:
    """(b4-b2)/t + (b4+b2)/(t-1) - (b1-b4)(q1-t)/(t(t-1)) along the collapsed q1."""
    b = chart_okamoto(p)
    t = _t()
    q1 = q1_collapsed(seed_q(p), b)
    return (b.b4 - b.b2) / t + (b.b4 + b.b2) / (t - 1) - (b.b1 - b.b4) * (q1 - t) / (t * (t - 1))


def prop1_check(p: SeedParams) -> Poly:
    """Numerator of W'/W minus the z-expression; zero confirms T_2 = W."""
    W = RatFunc(w_poly(p.r, p.m, p.s))
    res = W.derivative() / W - prop1_expression(p)
    return res.num


# ---------------------------------------------------------------------------
# sigma form
# ---------------------------------------------------------------------------

def h_sigma_residual(hfun: RatFunc, b: OkamotoParams, reading: str = "printed") -> RatFunc:
    """LHS - RHS of the second-order equation for h.

    ``printed``: t^2 (t-1)^2 h' h''^2 + {(2h - (2t-1)h')h' + b1 b2 b3 b4}^2
    = prod (h' + b_j^2).  ``no-hprime`` drops the h' factor in front.
    """
    b1, b2, b3, b4 = b.as_tuple()
    t = _t()
    d1 = hfun.derivative()
    d2 = d1.derivative()
    tt = t * t * (t - 1) * (t - 1)
    if reading == "printed":
        first = tt * d1 * d2 * d2
    elif reading == "no-hprime":
        first = tt * d2 * d2
    else:
        raise ValueError(f"unknown reading {reading!r}")
    second = ((2 * hfun - (2 * t - 1) * d1) * d1 + b1 * b2 * b3 * b4) ** 2
    rhs = (d1 + b1 * b1) * (d1 + b2 * b2) * (d1 + b3 * b3) * (d1 + b4 * b4)
    return first + second - rhs


def seed_solution(p: SeedParams):
    """(p, q, b) for the hypergeometric seed."""
    b = chart_okamoto(p)
    q = seed_q(p)
    return p_from_seed(q, b), q, b
