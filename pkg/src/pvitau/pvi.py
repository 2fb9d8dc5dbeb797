"""Exact P_VI verification and the identities built on the tau polynomials.

Residuals are assembled over an explicit common denominator; the numerator
polynomial is the witness and no floating point is involved anywhere.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateQ, SequenceTooShort
from .poly import ONE, Poly, exact_div, NonExactDivision
from .ratfunc import RatFunc
from .seeds import PviParams, SeedParams, chart_sigma_shift, pvi_params_at, v_poly, w_poly
from .toda import CACHE, RAW, NormalizationStrategy, TauSequence, scheduled

_t = Poly.t()
_t1 = _t - 1


def _check_q(q: RatFunc, pv: PviParams) -> bool:
    """True when q sits on a singular value whose pole term is switched off.

    q = 0 with beta = 0 and q = 1 with gamma = 0 solve P_VI formally; any
    other singular q has no residual and raises.
    """
    if q == RatFunc.t():
        raise DegenerateQ("q = t is a singular value")
    if q.is_constant:
        c = q.num.coeff(0)
        if c == 0 or c == 1:
            weight = pv.beta if c == 0 else pv.gamma
            if weight != 0:
                raise DegenerateQ(f"q = {c} hits a pole of the equation")
            return True
    return False


def pvi_numerator(q: RatFunc, pv: PviParams) -> tuple[Poly, Poly]:
    """(numerator, denominator) of q'' - RHS before reduction.

    With q = A/D, q - 1 = B/D, q - t = C/D, q' = E/D^2, q'' = F/D^3 the
    residual times 2 t^2 (t-1)^2 A B C D^3 is a polynomial.
    """
    if _check_q(q, pv):
        return Poly(), ONE
    A, D = q.num, q.den
    B = A - D
    C = A - _t * D
    dA, dD = A.derivative(), D.derivative()
    E = dA * D - A * dD
    F = E.derivative() * D - 2 * E * dD
    tt = _t * _t1
    tt2 = tt * tt
    AB = A * B
    ABC = AB * C
    D2 = D * D
    X = (pv.alpha * (ABC * ABC)
         + pv.beta * (_t * D2 * (B * C) ** 2)
         + pv.gamma * (_t1 * D2 * (A * C) ** 2)
         + pv.delta * (tt * D2 * AB * AB))
    R = (2 * tt2 * ABC * F
         - tt2 * (B * C + A * C + AB) * E * E
         + 2 * tt * AB * D * E * ((2 * _t - 1) * C + tt * D)
         - 2 * X)
    M = 2 * tt2 * ABC * D2 * D
    return R, M


def pvi_residual(q: RatFunc, pv: PviParams) -> RatFunc:
    """q'' minus the P_VI right-hand side, reduced; zero iff q solves P_VI."""
    R, M = pvi_numerator(q, pv)
    return RatFunc(R, M)


def pvi_residual_direct(q: RatFunc, pv: PviParams) -> RatFunc:
    """Same residual through generic RatFunc arithmetic (reference route)."""
    if _check_q(q, pv):
        return RatFunc(Poly())
    t = RatFunc.t()
    d1 = q.derivative()
    d2 = d1.derivative()
    half = Fraction(1, 2)
    rhs = (half * (1 / q + 1 / (q - 1) + 1 / (q - t)) * d1 * d1
           - (1 / t + 1 / (t - 1) + 1 / (q - t)) * d1
           + q * (q - 1) * (q - t) / (t * t * (t - 1) * (t - 1))
           * (pv.alpha + pv.beta * t / (q * q) + pv.gamma * (t - 1) / ((q - 1) * (q - 1))
              + pv.delta * t * (t - 1) / ((q - t) * (q - t))))
    return d2 - rhs


# ---------------------------------------------------------------------------
# q_n
# ---------------------------------------------------------------------------

def qn_from_polys(n: int, p: SeedParams, S_n: Poly, T_next: Poly) -> RatFunc:
    r, m, s = p.r, p.m, p.s
    ST = S_n * T_next
    num = ((n + r) * _t * ST
           + _t * _t1 * (S_n.derivative() * T_next - S_n * T_next.derivative())
           - (n + s - 1) * _t1 * ST
           - (n + r - m - s) * _t * ST)
    return RatFunc(num, ST * (n + r))


def qn_from_theorem(n: int, Tseq: TauSequence, Sseq: TauSequence) -> RatFunc:
    """q_n = t + t(t-1)/(n+r) {S_n'/S_n - T_{n+1}'/T_{n+1} - (n+s-1)/t - (n+r-m-s)/(t-1)}."""
    if n < 1:
        raise ValueError("n must be positive")
    if Tseq.N < n + 1 or Sseq.N < n:
        raise SequenceTooShort(f"need T through {n + 1} and S through {n}")
    if Tseq.params != Sseq.params:
        raise ValueError("T and S sequences must come from the same seed parameters")
    return qn_from_polys(n, Tseq.params, Sseq[n], Tseq[n + 1])


def theorem_sequences(p: SeedParams, n: int, cache=CACHE) -> tuple[TauSequence, TauSequence]:
    return cache.get("T", p, n + 1), cache.get("S", p, max(n, 2))


def qn(n: int, p: SeedParams, cache=CACHE) -> RatFunc:
    T, S = theorem_sequences(p, n, cache)
    return qn_from_theorem(n, T, S)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    subject: str
    params: dict
    status: str  # zero | nonzero | flagged
    witness: Poly | None = None
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "zero"


def _status_of(res) -> tuple[str, Poly | None]:
    poly = res.num if isinstance(res, RatFunc) else res
    return ("zero", None) if poly.is_zero else ("nonzero", poly)


def verify_theorem_qn(n: int, p: SeedParams, cache=CACHE) -> VerificationReport:
    t0 = time.perf_counter()
    res = pvi_residual(qn(n, p, cache), pvi_params_at(n, p))
    status, wit = _status_of(res)
    return VerificationReport(f"theorem-qn/n={n}", _pdict(p, n=n), status, wit, time.perf_counter() - t0)


def _pdict(p: SeedParams, **extra) -> dict:
    d = {"r": p.r, "m": p.m, "s": p.s}
    d.update(extra)
    return d


# ---------------------------------------------------------------------------
# Conjecture 1 and Proposition 2
# ---------------------------------------------------------------------------

CONJ1_STRATEGY = scheduled("k")


def conj1_sequence(p: SeedParams, N: int, cache=CACHE) -> TauSequence:
    """T-family with T_2 = W and T_{n+1}T_{n-1} = T_n^2 + {...}/((n-1)(n+r))."""
    return cache.get("T", p, N, CONJ1_STRATEGY)


def qn_product_conj1(n: int, p: SeedParams, cache=CACHE) -> RatFunc:
    r, m, s = p.r, p.m, p.s
    a = conj1_sequence(SeedParams(r, m + 1, s), n, cache)
    b = conj1_sequence(SeedParams(r - 1, m, s - 1), n + 1, cache)
    c = conj1_sequence(SeedParams(r, m, s), n + 1, cache)
    d = conj1_sequence(SeedParams(r - 1, m + 1, s - 1), n, cache)
    for seq, need in ((a, n), (b, n + 1), (c, n + 1), (d, n)):
        if seq.N < need:
            raise SequenceTooShort(f"sequence for {seq.params.as_tuple()} stopped at {seq.N}")
    num = a[n] * b[n + 1] * Fraction(m + s)
    den = c[n + 1] * d[n] * (n + r)
    return RatFunc(num, den)


def conj1_experiment(n: int, p: SeedParams, cache=CACHE) -> dict:
    t0 = time.perf_counter()
    q = qn_product_conj1(n, p, cache)
    res = pvi_residual(q, pvi_params_at(n, p))
    status, wit = _status_of(res)
    q_thm = qn(n, p, cache)
    return {"subject": f"conj1/n={n}", "params": _pdict(p, n=n), "status": status, "witness": wit,
            "equals_theorem_qn": q == q_thm, "q": q, "elapsed": time.perf_counter() - t0}


def prop2_qn(n: int, r, m: int) -> RatFunc:
    """V(r+1,m,m+1,n) V(r,m,m,n) / (V(r+1,m,m,n) V(r,m,m+1,n))."""
    r = Fraction(r)
    num = v_poly(r + 1, m, m + 1, n) * v_poly(r, m, m, n)
    den = v_poly(r + 1, m, m, n) * v_poly(r, m, m + 1, n)
    return RatFunc(num, den)


def prop2_params(n: int, r, m: int, gamma) -> PviParams:
    r = Fraction(r)
    half = Fraction(1, 2)
    return PviParams((n + r) ** 2 * half, -(m + r + 2) ** 2 * half, Fraction(gamma), (1 - (n + m) ** 2) * half)


def prop2_experiment(n: int, r, m: int) -> dict:
    """Residual of the explicit s = r + 2 solution for both signs of gamma."""
    t0 = time.perf_counter()
    q = prop2_qn(n, r, m)
    out = {"subject": f"prop2/n={n}", "params": {"r": Fraction(r), "m": m, "n": n}, "residuals": {}}
    for label, g in (("printed", Fraction(-1, 2)), ("chart", Fraction(1, 2))):
        status, wit = _status_of(pvi_residual(q, prop2_params(n, r, m, g)))
        out["residuals"][label] = {"gamma": g, "status": status, "witness": wit}
    zeros = [k for k, v in out["residuals"].items() if v["status"] == "zero"]
    out["winning_gamma"] = zeros
    q_thm = qn(n, SeedParams(r, m, Fraction(r) + 2))
    out["equals_theorem_qn"] = q == q_thm
    out["elapsed"] = time.perf_counter() - t0
    return out


# ---------------------------------------------------------------------------
# Example 1
# ---------------------------------------------------------------------------

def example1_factor_check(n: int, r, m: int, family: str = "T", cache=CACHE) -> dict:
    """With s = r + 2, T_n = (t-1)^(m(n-2)) * (degree-m quotient); S alike with m+1."""
    r = Fraction(r)
    p = SeedParams(r, m, r + 2)
    seq = cache.get(family, p, n)
    mm = m if family == "T" else m + 1
    e = mm * max(n - 2, 0)
    out = {"subject": f"example1/{family}/n={n}", "params": _pdict(p, n=n), "exponent": e}
    if seq.N < n:
        out.update(status="flagged", detail=f"sequence stopped at {seq.N}")
        return out
    P = seq[n]
    try:
        quo = exact_div(P, Poly([-1, 1]) ** e)
    except NonExactDivision:
        out.update(status="nonzero", divisible=False)
        return out
    out.update(divisible=True, quotient=quo, quotient_degree=quo.degree,
               status="zero" if quo.degree == mm else "nonzero")
    return out


# ---------------------------------------------------------------------------
# polynomiality condition
# ---------------------------------------------------------------------------

def polynomiality_condition(f: Poly, g: Poly) -> Poly:
    """f f'' - f'^2 + 3 f' g - 2 f g' - 2 g^2 + 2 f."""
    f1, g1 = f.derivative(), g.derivative()
    return f * f1.derivative() - f1 * f1 + 3 * f1 * g - 2 * f * g1 - 2 * g * g + 2 * f


# ---------------------------------------------------------------------------
# Darboux / Hankel
# ---------------------------------------------------------------------------

_TT = _t * _t1


@dataclass(frozen=True)
class FactoredFunction:
    """poly(t) * (t(t-1))^e.

    Canonical form: whole factors t(t-1) dividing ``poly`` are moved into
    ``e``; a lone t or t-1 factor stays in ``poly``.
    """

    poly: Poly
    e: Fraction

    def __post_init__(self):
        if self.poly.is_zero:
            raise ValueError("FactoredFunction needs a nonzero polynomial")
        poly, e = self.poly, Fraction(self.e)
        while poly.degree >= 2 and poly(0) == 0 and poly(1) == 0:
            poly = exact_div(poly, _TT)
            e += 1
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "e", e)

    def __mul__(self, other: "FactoredFunction") -> "FactoredFunction":
        return FactoredFunction(self.poly * other.poly, self.e + other.e)

    def scaled(self, c) -> "FactoredFunction":
        return FactoredFunction(self.poly * Fraction(c), self.e)

    def with_exponent(self, e) -> Poly:
        """The polynomial P with self == P * (t(t-1))^e; needs e <= self.e integral offset."""
        k = self.e - Fraction(e)
        if k.denominator != 1 or k < 0:
            raise ValueError(f"cannot rewrite exponent {self.e} as {e}")
        return self.poly * _TT ** int(k)

    def proportionality(self, other: "FactoredFunction") -> Fraction | None:
        """c with self == c * other, or None."""
        if self.e != other.e or self.poly.degree != other.poly.degree:
            return None
        c = self.poly.lc / other.poly.lc
        return c if self.poly == other.poly * c else None


def delta_apply(F: FactoredFunction) -> FactoredFunction:
    """delta = t(t-1) d/dt: poly -> t(t-1) poly' + e (2t-1) poly, exponent kept."""
    P = _TT * F.poly.derivative() + (2 * _t - 1) * F.poly * F.e
    return FactoredFunction(P, F.e)


def _bareiss_det(M: list[list[Poly]]) -> Poly:
    n = len(M)
    M = [row[:] for row in M]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if M[k][k].is_zero:
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero), None)
            if swap is None:
                return Poly()
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def hankel_determinant(tau1: FactoredFunction, n: int) -> FactoredFunction:
    """det(delta^(i+j) tau1), 0 <= i, j < n."""
    derivs = [tau1]
    for _ in range(2 * n - 2):
        derivs.append(delta_apply(derivs[-1]))
    e0 = min(d.e for d in derivs)
    polys = [d.with_exponent(e0) for d in derivs]
    M = [[polys[i + j] for j in range(n)] for i in range(n)]
    det = _bareiss_det(M)
    if det.is_zero:
        raise ArithmeticError("Hankel determinant vanishes")
    return FactoredFunction(det, n * e0)


def hankel_check(n: int, p: SeedParams, cache=CACHE) -> dict:
    """Compare det(delta^(i+j) tau~_1) with (t(t-1))^(n(n+r+1)/2) T_{n+1}."""
    t0 = time.perf_counter()
    tau1 = FactoredFunction(w_poly(p.r, p.m, p.s), (p.r + 2) / 2)
    det = hankel_determinant(tau1, n)
    T = cache.get("T", p, n + 1)
    target = FactoredFunction(T[n + 1], Fraction(n) * (n + p.r + 1) / 2)
    c = det.proportionality(target)
    return {"subject": f"hankel/n={n}", "params": _pdict(p, n=n),
            "status": "zero" if c else "nonzero", "constant": c,
            "det_exponent": det.e, "target_exponent": target.e,
            "elapsed": time.perf_counter() - t0}
