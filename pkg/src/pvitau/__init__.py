"""Exact tau-polynomial sequences and rational solutions of Painlevé VI."""
from .errors import PvitauError
from .poly import Poly, discriminant, gcd, resultant
from .ratfunc import RatFunc
from .parampoly import ParamPoly
from .seeds import OkamotoParams, PviParams, SeedParams, chart_okamoto, pvi_params_at, seed_q, w_poly
from .toda import CACHE, RAW, TauSequence, generate_sequence, scheduled
from .pvi import pvi_residual, qn, qn_from_theorem
from .conjectures import conj2_check, conj3_check, conj4_check, examples_check

__version__ = "0.1.0"

__all__ = [
    "PvitauError", "Poly", "RatFunc", "ParamPoly", "discriminant", "gcd", "resultant",
    "SeedParams", "OkamotoParams", "PviParams", "chart_okamoto", "pvi_params_at", "seed_q", "w_poly",
    "CACHE", "RAW", "TauSequence", "generate_sequence", "scheduled",
    "pvi_residual", "qn", "qn_from_theorem",
    "conj2_check", "conj3_check", "conj4_check", "examples_check",
]
