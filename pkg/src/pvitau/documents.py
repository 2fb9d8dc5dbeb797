"""JSON documents for sequences and reports, plus an on-disk sequence cache.

Every number is written as a decimal string ("num/den" for non-integers),
polynomial coefficients ascend by degree, and keys are sorted, so writing,
reading and writing again is byte-identical.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path

from .poly import Poly
from .ratfunc import RatFunc
from .seeds import SeedParams
from .toda import CACHE, NormalizationStrategy, SequenceCache, TauSequence, generate_sequence

SCHEMA_VERSION = "1"
CACHE_ENV = "PVITAU_CACHE_DIR"


def num_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_num(text: str) -> Fraction:
    return Fraction(text)


def poly_doc(P: Poly) -> list[str]:
    return [num_str(c) for c in P.coeffs]


def parse_poly(doc: list[str]) -> Poly:
    return Poly([parse_num(c) for c in doc])


def encode(obj):
    """Plain JSON-ready structure with every number as a string."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, Fraction)):
        return num_str(obj)
    if isinstance(obj, float):
        return f"{obj:.6f}"
    if isinstance(obj, Poly):
        return poly_doc(obj)
    if isinstance(obj, RatFunc):
        return {"num": poly_doc(obj.num), "den": poly_doc(obj.den)}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if is_dataclass(obj):
        return {f.name: encode(getattr(obj, f.name)) for f in fields(obj)}
    # symbolic scalars and polynomials render through str
    return str(obj)


def dumps(doc) -> str:
    return json.dumps(encode(doc), sort_keys=True, indent=1) + "\n"


# ---------------------------------------------------------------------------
# sequences
# ---------------------------------------------------------------------------

def sequence_doc(seq: TauSequence) -> dict:
    if not all(isinstance(P, Poly) for P in seq.polys):
        raise TypeError("only concrete sequences are serialized")
    return {
        "schema": SCHEMA_VERSION,
        "family": seq.family,
        "r": num_str(seq.params.r),
        "m": num_str(seq.params.m),
        "s": num_str(seq.params.s),
        "strategy": seq.strategy.key,
        "seed_scale": num_str(seq.seed_scale),
        "N": num_str(seq.N),
        "polys": [poly_doc(P) for P in seq.polys],
        "contents": [None if c is None else num_str(c) for c in seq.contents],
        "anomalies": [{"n": num_str(a["n"]), "kind": a["kind"], "detail": str(a["detail"])}
                      for a in seq.anomalies],
    }


def sequence_dumps(seq: TauSequence) -> str:
    return json.dumps(sequence_doc(seq), sort_keys=True, indent=1) + "\n"


def sequence_loads(text: str) -> TauSequence:
    d = json.loads(text)
    if d.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"schema {d.get('schema')!r} does not match {SCHEMA_VERSION!r}")
    p = SeedParams(parse_num(d["r"]), int(d["m"]), parse_num(d["s"]))
    seq = TauSequence(d["family"], p, NormalizationStrategy.parse(d["strategy"]), parse_num(d["seed_scale"]))
    seq.polys = [parse_poly(c) for c in d["polys"]]
    seq.contents = [None if c is None else int(c) for c in d["contents"]]
    seq.anomalies = [{"n": int(a["n"]), "kind": a["kind"], "detail": a["detail"]} for a in d["anomalies"]]
    if len(seq.polys) != int(d["N"]):
        raise ValueError("document N does not match its polynomial list")
    return seq


def default_cache_dir() -> Path | None:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


class DiskCache:
    """Sequence cache persisted as one JSON document per key.

    Wraps an in-memory :class:`SequenceCache`; disk reads fill memory and new
    runs are written back. Files are named by a hash of the key, which
    includes the schema version.
    """

    def __init__(self, directory: str | os.PathLike, memory: SequenceCache | None = None):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.memory = memory if memory is not None else SequenceCache()

    def path_for(self, family, p: SeedParams, strategy, seed_scale) -> Path:
        key = (SCHEMA_VERSION,) + SequenceCache.key(family, p, strategy, seed_scale)
        digest = hashlib.sha256(repr(key).encode()).hexdigest()[:24]
        return self.dir / f"{family}-{digest}.json"

    def _load(self, path: Path) -> TauSequence | None:
        try:
            return sequence_loads(path.read_text())
        except (OSError, ValueError, KeyError):
            return None

    def get(self, family, p, N, strategy=None, seed_scale=1) -> TauSequence:
        from .toda import RAW
        strategy = RAW if strategy is None else strategy
        path = self.path_for(family, p, strategy, seed_scale)
        if path.exists():
            disk = self._load(path)
            if disk is not None:
                self.memory.put(disk)
        seq = self.memory.get(family, p, N, strategy, seed_scale, generate_sequence)
        on_disk = self._load(path) if path.exists() else None
        if on_disk is None or on_disk.N < seq.N:
            tmp = path.with_suffix(".tmp")
            tmp.write_text(sequence_dumps(seq))
            tmp.replace(path)
        return seq

    def put(self, seq: TauSequence) -> None:
        self.memory.put(seq)
        path = self.path_for(seq.family, seq.params, seq.strategy, seq.seed_scale)
        path.write_text(sequence_dumps(seq))


def make_cache(directory=None):
    """DiskCache when a directory is given or set in the environment, else the memory cache."""
    directory = directory or default_cache_dir()
    return DiskCache(directory) if directory else CACHE
