"""Check outcome records shared by every identity module."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Optional

from .exact import RatFn, pretty, rf_equal

EXACT_PASS = "exact-pass"
EXACT_FAIL = "exact-fail"
PADIC_PASS = "padic-pass"
PADIC_FAIL = "padic-fail"
NO_CONVERGENCE = "no-convergence"

CORE = "core"
DIAGNOSTIC = "diagnostic"


@dataclass
class IdentityResult:
    id: str
    params: dict[str, Any]
    mode: str
    status: str
    tier: str = CORE
    residual: Optional[str] = None
    valuation: Optional[int] = None
    printed_form: bool = True
    repair_candidate: bool = False
    note: Optional[str] = None
    runtime_ms: Optional[float] = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status in (EXACT_PASS, PADIC_PASS)

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        d = {
            "id": self.id,
            "params": self.params,
            "mode": self.mode,
            "tier": self.tier,
            "status": self.status,
            "residual": self.residual,
            "valuation": self.valuation,
            "printed_form": self.printed_form,
            "repair_candidate": self.repair_candidate,
        }
        if self.note:
            d["note"] = self.note
        if self.details:
            d["details"] = self.details
        d["runtime_ms"] = round(self.runtime_ms, 3) if timings and self.runtime_ms is not None else None
        return d


def exact_result(id: str, params: dict, lhs: RatFn, rhs: RatFn, *, mode: str = "exact-q", **kw) -> IdentityResult:
    """Compare lhs and rhs exactly; on failure record lhs - rhs and rhs/lhs."""
    if rf_equal(lhs, rhs):
        return IdentityResult(id, params, mode, EXACT_PASS, **kw)
    kw.setdefault("details", {})
    kw["details"] = dict(kw["details"], lhs=pretty(lhs), rhs=pretty(rhs))
    if not lhs.is_zero() and not rhs.is_zero():
        kw["details"]["ratio_rhs_over_lhs"] = pretty(rhs / lhs)
    return IdentityResult(id, params, mode, EXACT_FAIL, residual=pretty(lhs - rhs), **kw)


def padic_result(id: str, params: dict, agreement: int, target: int, **kw) -> IdentityResult:
    status = PADIC_PASS if agreement >= target else PADIC_FAIL
    return IdentityResult(id, params, "padic", status, valuation=agreement, **kw)


@contextmanager
def timed(results: list[IdentityResult]):
    """Stamp runtime_ms onto every result appended inside the block."""
    start = len(results)
    t0 = time.perf_counter()
    yield
    dt = (time.perf_counter() - t0) * 1000.0
    new = results[start:]
    for r in new:
        r.runtime_ms = dt / len(new)
