"""Exact q-Euler, q-Stirling and q-Bernstein arithmetic with an identity checker."""
from .exact import PolyQT, RatFn, parse_ratfn, pretty, rf_equal, rf_eval, rf_limit_q1, rf_normalize
from .euler import euler_closed, euler_poly, euler_recur
from .padic import PadicNum, fermionic_oracle, padic_embed
from .registry import REGISTRY, Config, run_suite
from .results import IdentityResult

__all__ = [
    "PolyQT", "RatFn", "parse_ratfn", "pretty", "rf_equal", "rf_eval", "rf_limit_q1", "rf_normalize",
    "euler_closed", "euler_poly", "euler_recur", "PadicNum", "fermionic_oracle", "padic_embed",
    "REGISTRY", "Config", "run_suite", "IdentityResult",
]
