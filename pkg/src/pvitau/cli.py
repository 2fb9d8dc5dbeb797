"""Command-line front end: ``pvitau seq | verify | conjecture | bench``.

Exit codes: 0 pass, 1 mathematical failure, 2 usage or parameter error.
"""
from __future__ import annotations

import argparse
import logging
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import backlund as bk
from . import conjectures as cj
from . import pvi
from .documents import dumps, make_cache, sequence_doc
from .errors import DegenerateTransformation, ParameterPole, PvitauError
from .poly import Poly, content
from .ratfunc import RatFunc
from .seeds import (PviParams, SeedParams, chart_okamoto, lemma1_residual, pvi_params_at, seed_q,
                    w_poly)
from .toda import (RAW, NormalizationStrategy, TauSequence, bilinear_residuals, consecutive_gcds,
                   content_trace, family_seed)

log = logging.getLogger("pvitau")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUITES = ("riccati", "seed-pvi", "collapse", "theorem-qn", "lemma1", "prop1", "prop2",
          "hankel", "polynomiality", "h-sigma")

# reading flags and their admissible values; the first value is the default
READINGS = {
    "u-factor": ("corrected", "printed"),
    "b-coefficient": ("corrected", "printed"),
    "collapsed": ("printed", "symmetric"),
    "h-ode": ("printed", "no-hprime"),
    "prop2-gamma": ("chart", "printed"),
    "conj2": ("symmetric", "printed"),
    "toda": ("intro", "okamoto"),
}

PVI_FIELDS = ("alpha", "beta", "gamma", "delta")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params: SeedParams | None = None
    N: int = 6
    families: tuple = ("T",)
    strategy: NormalizationStrategy = RAW
    seed_scale: Fraction = Fraction(1)
    suites: tuple = ()
    perturb: dict = field(default_factory=dict)
    readings: dict = field(default_factory=dict)
    out: str | None = None
    cache_dir: str | None = None
    jobs: int = 1
    extra: dict = field(default_factory=dict)

    def reading(self, key: str) -> str:
        return self.readings.get(key, READINGS[key][0])


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _parse_readings(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, val = item.partition("=")
        if not sep or key not in READINGS or val not in READINGS[key]:
            choices = "; ".join(f"{k}={'|'.join(v)}" for k, v in READINGS.items())
            raise UsageError(f"bad --flag-reading {item!r}; choose from {choices}")
        out[key] = val
    return out


def _parse_perturb(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, val = item.partition("=")
        if not sep or key not in PVI_FIELDS:
            raise UsageError(f"bad --perturb {item!r}; use alpha|beta|gamma|delta=<rational>")
        try:
            out[key] = out.get(key, Fraction(0)) + Fraction(val)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad perturbation value in {item!r}")
    return out


def _parse_strategy(text: str | None, p: SeedParams | None) -> NormalizationStrategy:
    if text is None or text == "raw":
        return RAW
    if text == "auto-primitive":
        return NormalizationStrategy.parse(text)
    if text == "square-shift":
        if p is None:
            raise UsageError("square-shift needs r")
        text = f"square:{p.r - 1}"
    try:
        return NormalizationStrategy.parse(f"schedule:{text}" if not text.startswith("schedule:") else text)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc))


def _add_params(sp, N_default=6, need=True):
    sp.add_argument("-r", type=_rational, required=need)
    sp.add_argument("-m", type=int, required=need)
    sp.add_argument("-s", type=_rational, required=need)
    sp.add_argument("-N", type=int, default=N_default)


def _add_common(sp):
    sp.add_argument("--out", help="write the JSON document here instead of stdout")
    sp.add_argument("--cache-dir", help="persistent sequence cache (default: $PVITAU_CACHE_DIR)")
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--flag-reading", action="append", metavar="KEY=VALUE",
                    help="select a typo reading: " + ", ".join(f"{k}={'|'.join(v)}" for k, v in READINGS.items()))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pvitau", description="Rational P_VI solutions through Toda tau polynomials")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("seq", help="generate tau sequences")
    _add_params(sp, N_default=6)
    sp.add_argument("--family", choices=("T", "S", "both"), default="T")
    sp.add_argument("--schedule", help="raw | auto-primitive | unit | prime:P | example3 | square:X | "
                                       "square-shift | k | table:n=c,...")
    sp.add_argument("--seed-scale", type=_rational, default=None,
                    help="multiplier for T_2 (default: 1 for raw runs, 1/content(seed) for scheduled runs)")
    _add_common(sp)

    sp = sub.add_parser("verify", help="run exact verification suites")
    _add_params(sp, N_default=6)
    sp.add_argument("--suite", action="append", choices=SUITES + ("all",), required=True)
    sp.add_argument("--perturb", action="append", metavar="FIELD=DELTA",
                    help="shift a P_VI parameter, e.g. alpha=+1 (negative control)")
    _add_common(sp)

    sp = sub.add_parser("conjecture", help="conjecture experiments")
    sp.add_argument("which", choices=("c2", "c3", "c4", "examples"))
    sp.add_argument("-p", type=int, help="prime for c4")
    sp.add_argument("-n", type=int, help="index n for c2")
    sp.add_argument("-m", type=int, help="m for c2/c3")
    sp.add_argument("-N", type=int, default=None)
    sp.add_argument("--samples", type=int, default=4, help="number of (r, s) samples for c2")
    sp.add_argument("--sample-seed", type=int, default=0)
    sp.add_argument("--example", type=int, choices=(2, 3, 4), action="append")
    _add_common(sp)

    sp = sub.add_parser("bench", help="timings and coefficient growth")
    sp.add_argument("-p", type=int, default=11)
    sp.add_argument("-N", type=int, default=20)
    _add_common(sp)
    return ap


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _emit(doc, cfg: RunConfig) -> None:
    text = dumps(doc)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pv_shift(pv: PviParams, perturb: dict) -> PviParams:
    return pv.perturbed(**perturb) if perturb else pv


def _result(subject, status, witness=None, elapsed=0.0, **extra) -> dict:
    d = {"subject": subject, "status": status, "witness": witness, "elapsed": elapsed}
    d.update(extra)
    return d


def _rf_status(res: RatFunc):
    return ("zero", None) if res.is_zero else ("nonzero", res.num)


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------

def _suite_riccati(cfg, cache):
    p = cfg.params
    st, wit = _rf_status(bk.riccati_residual(seed_q(p), chart_okamoto(p)))
    return [_result("riccati", st, wit)]


def _suite_seed_pvi(cfg, cache):
    p = cfg.params
    st, wit = _rf_status(pvi.pvi_residual(seed_q(p), _pv_shift(pvi_params_at(0, p), cfg.perturb)))
    return [_result("seed-pvi", st, wit)]


def _suite_theorem_qn(cfg, cache):
    p = cfg.params
    out = []
    for n in range(1, cfg.N + 1):
        t0 = time.perf_counter()
        q = pvi.qn(n, p, cache)
        st, wit = _rf_status(pvi.pvi_residual(q, _pv_shift(pvi_params_at(n, p), cfg.perturb)))
        out.append(_result(f"theorem-qn/n={n}", st, wit, time.perf_counter() - t0, n=n))
    return out


def _suite_collapse(cfg, cache):
    """Seed collapse, both routes at n = 1, and dual-route agreement at random points."""
    from dataclasses import replace
    p = cfg.params
    b = chart_okamoto(p)
    u_read = cfg.reading("u-factor")
    b_read = cfg.reading("b-coefficient")
    out = []
    p0, q0, _ = bk.seed_solution(p)
    q1 = bk.q1_collapsed(q0, b)
    try:
        ok = bk.backlund_qplus(p0, q0, b, "uv", u_read) == q1
        out.append(_result("collapse/seed-uv", "zero" if ok else "nonzero", reading=u_read))
    except DegenerateTransformation as exc:
        out.append(_result("collapse/seed-uv", "flagged", detail=str(exc), reading=u_read))
    coll = bk.backlund_collapsed_expr(p0, q0, RatFunc.t(), b, cfg.reading("collapsed"))
    out.append(_result("collapse/collapsed-fraction", "zero" if coll == q1 else "nonzero"))
    out.append(_result("collapse/theorem-n1", "zero" if q1 == pvi.qn(1, p, cache) else "nonzero"))
    bp = replace(b, b3=b.b3 + 1)
    p1 = bk.p_long_form(q1, bp)
    q2 = pvi.qn(2, p, cache)
    for route, rd in (("uv", u_read), ("abc", b_read)):
        try:
            good = bk.backlund_qplus(p1, q1, bp, route, rd) == q2
            out.append(_result(f"collapse/{route}-n2", "zero" if good else "nonzero", reading=rd))
        except DegenerateTransformation as exc:
            out.append(_result(f"collapse/{route}-n2", "flagged", detail=str(exc), reading=rd))
    rng = random.Random(0)
    agree = tried = 0
    while tried < 12:
        pt = [Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(3)]
        bb = bk.OkamotoParams(*[Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(4)])
        if pt[2] in (0, 1) or pt[1] in (0, 1, pt[2]):
            continue
        try:
            a = bk.qplus_point(*pt, bb, "uv", u_read)
            c = bk.qplus_point(*pt, bb, "abc", b_read)
        except (DegenerateTransformation, ZeroDivisionError):
            continue
        tried += 1
        agree += a == c
    out.append(_result("collapse/dual-route-samples", "zero" if agree == tried else "nonzero",
                       agree=agree, samples=tried))
    return out


def _suite_lemma1(cfg, cache):
    res = lemma1_residual(cfg.params)
    return [_result("lemma1", "zero" if res.is_zero else "nonzero", None if res.is_zero else res)]


def _suite_prop1(cfg, cache):
    p = cfg.params
    res = bk.prop1_check(p)
    out = [_result("prop1", "zero" if res.is_zero else "nonzero", None if res.is_zero else res)]
    W = RatFunc(w_poly(p.r, p.m, p.s))
    ok = bk.prop1_b_route(p) == W.derivative() / W
    out.append(_result("prop1/b-route", "zero" if ok else "nonzero"))
    return out


def _suite_prop2(cfg, cache):
    p = cfg.params
    gamma = Fraction(1, 2) if cfg.reading("prop2-gamma") == "chart" else Fraction(-1, 2)
    out = []
    for n in range(1, cfg.N + 1):
        q = pvi.prop2_qn(n, p.r, p.m)
        pv = _pv_shift(pvi.prop2_params(n, p.r, p.m, gamma), cfg.perturb)
        st, wit = _rf_status(pvi.pvi_residual(q, pv))
        out.append(_result(f"prop2/n={n}", st, wit, n=n, gamma=gamma))
    return out


def _suite_hankel(cfg, cache):
    out = []
    for n in range(1, min(cfg.N, 4) + 1):
        h = pvi.hankel_check(n, cfg.params, cache)
        out.append(_result(h["subject"], h["status"], None, h["elapsed"], constant=h["constant"]))
    return out


def _suite_polynomiality(cfg, cache):
    t = Poly.t()
    res = pvi.polynomiality_condition(t * t - t, 2 * t - 1)
    ctrl = pvi.polynomiality_condition(t, Poly([1]))
    return [_result("polynomiality", "zero" if res.is_zero else "nonzero", None if res.is_zero else res),
            _result("polynomiality/negative-control", "zero" if not ctrl.is_zero else "nonzero", ctrl)]


def _suite_h_sigma(cfg, cache):
    from dataclasses import replace
    p = cfg.params
    b = chart_okamoto(p)
    rd = cfg.reading("h-ode")
    p0, q0, _ = bk.seed_solution(p)
    out = []
    st, wit = _rf_status(bk.h_sigma_residual(bk.h_function(p0, q0, b), b, rd))
    out.append(_result("h-sigma/n=0", st, wit, reading=rd))
    for n in range(1, min(cfg.N, 3) + 1):
        bn = replace(b, b3=b.b3 + n)
        q = pvi.qn(n, p, cache)
        pn = bk.p_long_form(q, bn)
        st, wit = _rf_status(bk.h_sigma_residual(bk.h_function(pn, q, bn), bn, rd))
        out.append(_result(f"h-sigma/n={n}", st, wit, reading=rd))
    return out


SUITE_FUNCS = {
    "riccati": _suite_riccati, "seed-pvi": _suite_seed_pvi, "collapse": _suite_collapse,
    "theorem-qn": _suite_theorem_qn, "lemma1": _suite_lemma1, "prop1": _suite_prop1,
    "prop2": _suite_prop2, "hankel": _suite_hankel, "polynomiality": _suite_polynomiality,
    "h-sigma": _suite_h_sigma,
}


def _run_suite(name, cfg, cache):
    t0 = time.perf_counter()
    try:
        results = SUITE_FUNCS[name](cfg, cache)
    except ParameterPole:
        raise
    except PvitauError as exc:
        results = [_result(name, "flagged", detail=f"{type(exc).__name__}: {exc}")]
    return {"suite": name, "results": results, "elapsed": time.perf_counter() - t0}


def cmd_verify(cfg: RunConfig) -> int:
    cache = make_cache(cfg.cache_dir)
    with ThreadPoolExecutor(max_workers=max(1, cfg.jobs)) as ex:
        reports = list(ex.map(lambda s: _run_suite(s, cfg, cache), cfg.suites))
    statuses = [r["status"] for rep in reports for r in rep["results"]]
    failed = "nonzero" in statuses
    doc = {"command": "verify", "params": cfg.params.as_tuple(), "perturb": cfg.perturb,
           "readings": {k: cfg.reading(k) for k in READINGS}, "suites": reports,
           "status": "fail" if failed else "pass"}
    _emit(doc, cfg)
    for rep in reports:
        for r in rep["results"]:
            log.info("%-28s %s", r["subject"], r["status"])
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# seq
# ---------------------------------------------------------------------------

def cmd_seq(cfg: RunConfig) -> int:
    cache = make_cache(cfg.cache_dir)
    docs = []
    for fam in cfg.families:
        seed = family_seed(fam, cfg.params)
        if cfg.extra.get("primitive_seed"):
            cfg.seed_scale = Fraction(1, content(seed)) if seed.is_integral and not seed.is_zero else Fraction(1)
        if cfg.extra.get("toda") == "okamoto":
            from .toda import generate_sequence
            seq = generate_sequence(fam, cfg.params, cfg.N, cfg.strategy, cfg.seed_scale, toda_form="okamoto")
        else:
            seq = cache.get(fam, cfg.params, cfg.N, cfg.strategy, cfg.seed_scale)
        doc = sequence_doc(seq)
        doc["summary"] = _seq_summary(seq)
        docs.append(doc)
        for n, P in enumerate(seq.polys, 1):
            log.info("%s_%d degree %d content %s", fam, n, P.degree, seq.contents[n - 1])
        for a in seq.anomalies:
            log.warning("%s anomaly at n=%d: %s %s", fam, a["n"], a["kind"], a["detail"])
    _emit(docs[0] if len(docs) == 1 else docs, cfg)
    return EXIT_OK


def _seq_summary(seq: TauSequence) -> dict:
    gcd_ok = all(g.degree == 0 for g in consecutive_gcds(seq))
    return {"degrees": [P.degree for P in seq.polys],
            "degree_law": all(seq[n].degree == seq.expected_degree(n) for n in range(1, seq.N + 1)),
            "coprime_neighbours": gcd_ok,
            "bilinear_exact": all(r.is_zero for r in bilinear_residuals(seq)),
            "contents": [c for _, c in content_trace(seq)]}


# ---------------------------------------------------------------------------
# conjecture
# ---------------------------------------------------------------------------

def _report_doc(rep: cj.ConjectureReport) -> dict:
    return {"conjecture": rep.conjecture, "params": rep.params, "status": rep.status,
            "instances": rep.instances, "notes": rep.notes, "elapsed": rep.elapsed}


def c2_samples(k: int, seed: int = 0) -> list[tuple[Fraction, Fraction]]:
    rng = random.Random(seed)
    return [(Fraction(rng.randint(-40, 40), rng.randint(1, 7)), Fraction(rng.randint(-40, 40), rng.randint(1, 7)))
            for _ in range(k)]


def cmd_conjecture(cfg: RunConfig) -> int:
    a = cfg.extra
    which = a["which"]
    if which == "c4":
        if a.get("p") is None:
            raise UsageError("c4 needs -p")
        N = a.get("N") or 20
        ps = [a["p"]]
        with ThreadPoolExecutor(max_workers=max(1, cfg.jobs)) as ex:
            reps = list(ex.map(lambda p: cj.conj4_check(p, N), ps))
    elif which == "examples":
        N = a.get("N") or 10
        reps = [cj.examples_check(w, N) for w in (a.get("example") or [2, 3, 4])]
    elif which == "c3":
        if a.get("m") is None:
            raise UsageError("c3 needs -m")
        reps = [cj.conj3_check(a["m"], a.get("N") or 4)]
    else:
        if a.get("n") is None or a.get("m") is None:
            raise UsageError("c2 needs -n and -m")
        reading = cfg.reading("conj2")
        samples = []
        seed = a.get("sample_seed", 0)
        model = cj.DiscriminantModel(a["n"], a["m"], reading)
        while len(samples) < a["samples"]:
            for r, s in c2_samples(a["samples"] * 3, seed):
                try:
                    model.evaluate(r, s)
                    cj.DiscriminantModel(a["n"], a["m"], "printed").evaluate(r, s)
                except cj.SampleAtFactorZero:
                    continue
                if (r, s) not in samples and len(samples) < a["samples"]:
                    samples.append((r, s))
            seed += 1
        rep = cj.conj2_check(a["n"], a["m"], samples, reading)
        rep.notes["reading_scan"] = cj.conj2_reading_scan(a["n"], a["m"], samples)
        reps = [rep]
    _emit([_report_doc(r) for r in reps] if len(reps) > 1 else _report_doc(reps[0]), cfg)
    statuses = {r.status for r in reps}
    if cj.FAIL in statuses:
        return EXIT_FAIL
    if cj.FLAGGED in statuses:
        log.warning("some instances are flagged, not failed")
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def cmd_bench(cfg: RunConfig) -> int:
    from .toda import generate_sequence, scheduled
    p, N = cfg.extra["p"], cfg.extra["N"]
    if N < 1:
        raise UsageError("N must be positive")
    t0 = time.perf_counter()
    seq = generate_sequence("T", SeedParams(p, p - 1, 1), N, scheduled(f"prime:{p}"),
                            seed_scale=Fraction(1, p))
    total = time.perf_counter() - t0
    curve = [{"n": n, "degree": P.degree, "max_bits": P.max_bits()} for n, P in enumerate(seq.polys, 1)]
    _emit({"command": "bench", "p": p, "N": N, "elapsed": total, "curve": curve}, cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def config_from_args(ns) -> RunConfig:
    readings = _parse_readings(getattr(ns, "flag_reading", None))
    cfg = RunConfig(ns.command, readings=readings, out=ns.out, cache_dir=ns.cache_dir, jobs=ns.jobs)
    if ns.jobs < 1:
        raise UsageError("--jobs must be positive")
    if ns.command in ("seq", "verify"):
        if ns.m < 0:
            raise UsageError("m must be nonnegative")
        if ns.N < 1:
            raise UsageError("N must be positive")
        cfg.params = SeedParams(ns.r, ns.m, ns.s)
        cfg.N = ns.N
    if ns.command == "seq":
        cfg.families = ("T", "S") if ns.family == "both" else (ns.family,)
        cfg.strategy = _parse_strategy(ns.schedule, cfg.params)
        cfg.seed_scale = ns.seed_scale if ns.seed_scale is not None else Fraction(1)
        if ns.seed_scale is None and cfg.strategy.kind == "schedule":
            cfg.extra["primitive_seed"] = True
        cfg.extra["toda"] = cfg.reading("toda")
    elif ns.command == "verify":
        cfg.suites = SUITES if "all" in ns.suite else tuple(dict.fromkeys(ns.suite))
        cfg.perturb = _parse_perturb(ns.perturb)
    elif ns.command == "conjecture":
        cfg.extra = {"which": ns.which, "p": ns.p, "n": ns.n, "m": ns.m, "N": ns.N,
                     "samples": ns.samples, "sample_seed": ns.sample_seed, "example": ns.example}
        if ns.samples < 1:
            raise UsageError("--samples must be positive")
    elif ns.command == "bench":
        cfg.extra = {"p": ns.p, "N": ns.N}
    return cfg


COMMANDS = {"seq": cmd_seq, "verify": cmd_verify, "conjecture": cmd_conjecture, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s", stream=sys.stderr)
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"pvitau: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PvitauError as exc:
        print(f"pvitau: parameter error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"pvitau: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
