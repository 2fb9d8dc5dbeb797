"""Bilinear Toda recurrences for the tau polynomials T_n and S_n.

    c(n) T_{n+1} T_{n-1} = (t^2 - t)(T T'' - T'^2) + (2t - 1) T T' + k(n) T^2

with k(n) = (n-1)(n+r) for T and (n-1)(n+r-1) for S.  The engine works on
:class:`~pvitau.poly.Poly` and on :class:`~pvitau.parampoly.ParamPoly` alike.
Failures of the recurrence are recorded on the returned sequence instead of
raised.
"""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

from .errors import NonExactDivision
from .poly import Poly, content_primitive, gcd
from .seeds import OkamotoParams, SeedParams, chart_okamoto, chart_sigma_shift, w_poly

log = logging.getLogger(__name__)

FAMILIES = ("T", "S")

_T = Poly.t()
_TT = _T * _T - _T  # t^2 - t
_DT = 2 * _T - 1  # 2t - 1


def _geometry(like):
    if isinstance(like, Poly):
        return _TT, _DT
    from .parampoly import ParamPoly

    return ParamPoly.from_poly(_TT), ParamPoly.from_poly(_DT)


def toda_rhs(T, k):
    """(t^2 - t)(T T'' - T'^2) + (2t - 1) T T' + k T^2."""
    tt, dt = _geometry(T)
    d1 = T.derivative()
    d2 = d1.derivative()
    sq = T * T
    return tt * (T * d2 - d1 * d1) + dt * (T * d1) + sq * k


def toda_step(prev, cur, k, c=1):
    """T_{n+1} from T_{n-1}, T_n; raises NonExactDivision if the step fails."""
    if not c:
        raise ValueError("normalizing constant c(n) must be nonzero")
    rhs = toda_rhs(cur, k)
    return rhs.exact_div(prev * c)


def k_coefficient(family: str, n: int, r):
    """Additive constant k(n): (n-1)(n+r) for T, (n-1)(n+r-1) for S."""
    if n < 2:
        raise ValueError("recurrence starts at n = 2")
    if family == "T":
        return (n - 1) * (n + r)
    if family == "S":
        return (n - 1) * (n + r - 1)
    raise ValueError(f"family must be T or S, got {family!r}")


def ansatz_exponents(b: OkamotoParams, n: int) -> tuple[Fraction, Fraction]:
    """Exponents (a, b) with tau_n = T_n / (t^a (t-1)^b)."""
    b1, b2, b3, b4 = b.as_tuple()
    return (b1 + b4) * (b1 + b2 + n - 1), (b1 + b4) * (b1 - b2 + n - 1)


def k_coefficient_okamoto(family: str, n: int, p: SeedParams) -> Fraction:
    """k(n) derived from the tau-level Toda constant (b1+b3+n)(b3+b4+n).

    Stripping the prefactor t^a (t-1)^b of the ansatz shifts the constant by
    -(a+b); the result coincides with :func:`k_coefficient` in every chart.
    The S family uses the chart with b4 -> b4 + 1.
    """
    chart = p if family == "T" else chart_sigma_shift(p)
    b = chart_okamoto(chart)
    b1, b2, b3, b4 = b.as_tuple()
    ea, eb = ansatz_exponents(b, n)
    # d/dt(t(t-1) d/dt log(t^-a (t-1)^-b)) = -(a + b)
    return (b1 + b3 + n) * (b3 + b4 + n) - (ea + eb)


# ---------------------------------------------------------------------------
# normalization schedules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CnSchedule:
    """Normalizing constants c(n), n >= 2.

    kinds: ``unit``; ``prime`` (p); ``example3``; ``square`` ((n+offset)^2);
    ``k`` (c(n) = k(n), the recurrence constant itself); ``table``.
    """

    kind: str
    p: int | None = None
    offset: Fraction | None = None
    table: tuple = ()

    def __call__(self, n: int, k=None):
        return cn_value(self, n, k)

    @property
    def key(self) -> str:
        if self.kind == "prime":
            return f"prime:{self.p}"
        if self.kind == "square":
            return f"square:{self.offset}"
        if self.kind == "table":
            return "table:" + ",".join(f"{n}={v}" for n, v in self.table)
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "CnSchedule":
        kind, _, arg = text.partition(":")
        if kind in ("unit", "example3", "k"):
            return cls(kind)
        if kind == "prime":
            return cls("prime", p=int(arg))
        if kind == "square":
            return cls("square", offset=Fraction(arg))
        if kind == "table":
            items = []
            for part in arg.split(","):
                n, _, v = part.partition("=")
                items.append((int(n), Fraction(v)))
            return cls("table", table=tuple(sorted(items)))
        raise ValueError(f"unknown schedule {text!r}")


def cn_value(sched: CnSchedule, n: int, k=None):
    if n < 2:
        raise ValueError("c(n) is defined for n >= 2")
    kind = sched.kind
    if kind == "unit":
        return 1
    if kind == "prime":
        p = sched.p
        base = (p + n) * (p + n - 2)
        if n % p == 1:
            return p * p * base
        if n % p in (0, 2):
            return Fraction(base, p)
        return base
    if kind == "example3":
        base = (n + 2) * (n + 4)
        if n % 2 == 0:
            return Fraction(base, 8)
        return 4 * base if n % 4 == 3 else 16 * base
    if kind == "square":
        return (n + sched.offset) ** 2
    if kind == "k":
        if k is None:
            raise ValueError("schedule 'k' needs the recurrence constant")
        return k
    if kind == "table":
        for m, v in sched.table:
            if m == n:
                return v
        raise KeyError(f"c({n}) missing from table schedule")
    raise ValueError(f"unknown schedule kind {kind!r}")


@dataclass(frozen=True)
class NormalizationStrategy:
    kind: str = "raw"  # raw | schedule | auto-primitive
    schedule: CnSchedule | None = None

    @property
    def key(self) -> str:
        if self.kind == "schedule":
            return f"schedule:{self.schedule.key}"
        return self.kind

    def c(self, n: int, k):
        if self.kind == "schedule":
            return cn_value(self.schedule, n, k)
        return 1

    @classmethod
    def parse(cls, text: str) -> "NormalizationStrategy":
        if text in ("raw", "auto-primitive"):
            return cls(text)
        if text.startswith("schedule:"):
            text = text[len("schedule:"):]
        return cls("schedule", CnSchedule.parse(text))


RAW = NormalizationStrategy("raw")
AUTO_PRIMITIVE = NormalizationStrategy("auto-primitive")


def scheduled(text: str) -> NormalizationStrategy:
    return NormalizationStrategy("schedule", CnSchedule.parse(text))


# ---------------------------------------------------------------------------
# sequences
# ---------------------------------------------------------------------------

@dataclass
class TauSequence:
    """T_1..T_N (``polys[i]`` is index ``i + 1``) plus per-step bookkeeping.

    ``contents[i]`` is the integer content of ``polys[i]`` (for auto-primitive
    runs, the content removed at that step), ``None`` when not integral or
    symbolic.  ``anomalies`` holds dicts with keys ``n``, ``kind``, ``detail``.
    """

    family: str
    params: SeedParams
    strategy: NormalizationStrategy
    seed_scale: Fraction
    polys: list = field(default_factory=list)
    contents: list = field(default_factory=list)
    anomalies: list = field(default_factory=list)

    @property
    def N(self) -> int:
        return len(self.polys)

    def __getitem__(self, n: int):
        """T_n, 1-based."""
        if n < 1:
            raise IndexError("tau sequences start at n = 1")
        return self.polys[n - 1]

    def expected_degree(self, n: int) -> int:
        m = self.params.m if self.family == "T" else self.params.m + 1
        return m * (n - 1)

    @property
    def ok(self) -> bool:
        return not self.anomalies

    def truncated(self, N: int) -> "TauSequence":
        return TauSequence(self.family, self.params, self.strategy, self.seed_scale,
                           self.polys[:N], self.contents[:N],
                           [a for a in self.anomalies if a["n"] <= N])


def family_seed(family: str, p: SeedParams):
    if family == "T":
        return w_poly(p.r, p.m, p.s)
    if family == "S":
        q = chart_sigma_shift(p)
        return w_poly(q.r, q.m, q.s)
    raise ValueError(f"family must be T or S, got {family!r}")


def factorial_scale(family: str, p: SeedParams) -> int:
    """m! for T and (m+1)! for S, the integral seeds of the Z[r,s,t] variant."""
    return factorial(p.m if family == "T" else p.m + 1)


def generate_sequence(family: str, p: SeedParams, N: int,
                      strategy: NormalizationStrategy = RAW,
                      seed_scale=1, seed=None, toda_form: str = "intro") -> TauSequence:
    """Run the recurrence from T_1 = 1, T_2 = seed_scale * seed through T_N.

    ``toda_form="okamoto"`` takes k(n) from the tau-level Toda equation
    instead of the polynomial form; both must produce identical sequences.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if family not in FAMILIES:
        raise ValueError(f"family must be T or S, got {family!r}")
    if seed is None:
        seed = family_seed(family, p)
    seed = seed * seed_scale
    if seed.is_zero:
        raise ValueError("seed polynomial vanishes")
    symbolic = not isinstance(seed, Poly)
    one = seed * 0 + 1
    seq = TauSequence(family, p, strategy, seed_scale if symbolic else Fraction(seed_scale))
    expect_integral = not symbolic and seed.is_integral

    def push(poly, n):
        if not symbolic and strategy.kind == "auto-primitive" and poly.is_integral:
            c, poly = content_primitive(poly)
            seq.contents.append(c)
        elif not symbolic and poly.is_integral:
            seq.contents.append(content_primitive(poly)[0])
        else:
            seq.contents.append(None)
            if expect_integral:
                seq.anomalies.append({"n": n, "kind": "non-integral", "detail": "coefficients not integral"})
        if poly.degree != seq.expected_degree(n):
            seq.anomalies.append({"n": n, "kind": "degree",
                                  "detail": f"degree {poly.degree}, expected {seq.expected_degree(n)}"})
        seq.polys.append(poly)

    push(one, 1)
    if N >= 2:
        push(seed, 2)
    for n in range(2, N):
        if toda_form == "okamoto":
            k = k_coefficient_okamoto(family, n, p)
        else:
            k = k_coefficient(family, n, p.r)
        c = strategy.c(n, k)
        try:
            nxt = toda_step(seq.polys[n - 2], seq.polys[n - 1], k, c)
        except NonExactDivision as exc:
            seq.anomalies.append({"n": n + 1, "kind": "non-exact-division",
                                  "detail": f"remainder {exc.remainder}"})
            log.warning("%s-sequence %s: step to n=%d is not exact", family, p.as_tuple(), n + 1)
            break
        push(nxt, n + 1)
    return seq


def content_trace(seq: TauSequence) -> list[tuple[int, int | None]]:
    """(n, content) for n >= 2."""
    return [(n, seq.contents[n - 1]) for n in range(2, seq.N + 1)]


def bilinear_residuals(seq: TauSequence) -> list:
    """c(n) T_{n+1} T_{n-1} - rhs(T_n) for each generated step, by re-substitution."""
    out = []
    p = seq.params
    for n in range(2, seq.N):
        k = k_coefficient(seq.family, n, p.r)
        c = seq.strategy.c(n, k)
        lhs = seq[n + 1] * seq[n - 1] * c
        if seq.strategy.kind == "auto-primitive":
            # auto-primitive rescales T_{n+1} by 1/content; undo for the check
            lhs = lhs * seq.contents[n]
        out.append(lhs - toda_rhs(seq[n], k))
    return out


def consecutive_gcds(seq: TauSequence) -> list[Poly]:
    return [gcd(seq[n], seq[n + 1]) for n in range(1, seq.N)]


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------

def stopped(seq: TauSequence) -> bool:
    """True when the run ended early on a non-exact division."""
    return any(a["kind"] == "non-exact-division" for a in seq.anomalies)


class SequenceCache:
    """Thread-safe memo of generated sequences keyed by parameters and strategy.

    A cached run of length N' >= N serves requests for N by truncation.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict = {}

    @staticmethod
    def key(family, p: SeedParams, strategy: NormalizationStrategy, seed_scale) -> tuple:
        return (family, str(p.r), p.m, str(p.s), strategy.key, str(Fraction(seed_scale)))

    def get(self, family, p, N, strategy=RAW, seed_scale=1,
            generator: Callable = generate_sequence) -> TauSequence:
        key = self.key(family, p, strategy, seed_scale)
        with self._lock:
            hit = self._data.get(key)
        if hit is not None and (hit.N >= N or stopped(hit)):
            return hit.truncated(N)
        seq = generator(family, p, N, strategy, seed_scale)
        with self._lock:
            cur = self._data.get(key)
            if cur is None or cur.N < seq.N:
                self._data[key] = seq
        return seq

    def put(self, seq: TauSequence) -> None:
        key = self.key(seq.family, seq.params, seq.strategy, seq.seed_scale)
        with self._lock:
            cur = self._data.get(key)
            if cur is None or cur.N < seq.N:
                self._data[key] = seq

    def __len__(self):
        return len(self._data)

    def clear(self):
        with self._lock:
            self._data.clear()


CACHE = SequenceCache()
