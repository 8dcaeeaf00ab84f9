"""Identity registry and the tiered suite runner."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import bernstein as ber
from . import bridge, checks, euler, stirling
from .padic import BadQ, check_q, max_terms_default, max_terms_limit
from .qcomb import gauss_expansion_check
from .results import CORE, DIAGNOSTIC, IdentityResult, exact_result, timed


class ConfigError(ValueError):
    pass


TIERS = ("core", "diagnostic", "all")


@dataclass(frozen=True)
class Config:
    tier: str = "all"
    max_n: int | None = None
    p: int = 3
    q: Fraction = Fraction(4)
    prec: int = 15
    max_terms: int = field(default_factory=max_terms_default)

    def to_dict(self) -> dict:
        return {"tier": self.tier, "max_n": self.max_n, "p": self.p, "q": str(self.q),
                "prec": self.prec, "max_terms": self.max_terms}


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def validate(cfg: Config) -> Config:
    if cfg.tier not in TIERS:
        raise ConfigError(f"tier must be one of {TIERS}")
    if not _is_prime(cfg.p) or cfg.p == 2:
        raise ConfigError(f"p must be an odd prime, got {cfg.p}")
    try:
        check_q(cfg.q, cfg.p)
    except BadQ as e:
        raise ConfigError(str(e)) from None
    if cfg.prec < 1:
        raise ConfigError("prec must be >= 1")
    if cfg.max_terms < 1:
        raise ConfigError("QEULER_MAX_TERMS must be >= 1")
    return cfg


@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    tier: str
    mode: str
    quote: str
    param_grid: str
    runner: Callable[[Config], Iterable[IdentityResult]]
    tiers: frozenset = frozenset({CORE})


def _upto(cfg: Config, default: int) -> range:
    """0..default, shortened by --max-n (a negative max-n empties every grid)."""
    top = default if cfg.max_n is None else min(default, cfg.max_n)
    return range(top + 1)


def _level(cfg: Config, want: int) -> int:
    return min(want, checks.max_level(cfg.p))


# a run-scoped memo so ids produced by one computation are not computed twice
_shared: dict = {}


def _once(key, fn):
    if key not in _shared:
        _shared[key] = list(fn())
    return _shared[key]


def _only(id: str, results: Iterable[IdentityResult]) -> list[IdentityResult]:
    return [r for r in results if r.id == id]


# ---- runners -------------------------------------------------------------


def _ber_def(cfg):
    for n in _upto(cfg, 10):
        yield ber.bernstein_partition_check(n)
        for k in range(n + 1):
            yield ber.bernstein_symmetry_check(k, n)
    for n in _upto(cfg, 4):
        for k in range(n + 1):
            for x in (0, 1, 2):
                yield ber.bernstein_classical_check(k, n, x)


def _ber_pairs(cfg, lo=1, top=10):
    for n in _upto(cfg, top):
        if n < lo:
            continue
        for k in range(n + 1):
            yield k, n


def _iqf(cfg):
    for n in _upto(cfg, 6):
        for N in range(2, _level(cfg, 7) + 1):
            yield checks.iqf_check(n, cfg.p, cfg.q, N, cfg.prec)
    if cfg.max_n is None or cfg.max_n >= 0:
        yield checks.iqf_worked_value(cfg.p, _level(cfg, 6))
        for N in (1, 2, 3):
            yield checks.iq_constant_check(cfg.p, cfg.q, N)


def _de3(cfg):
    for n in _upto(cfg, 16):
        yield checks.shift_check(n)
    for deg in _upto(cfg, 2):
        for s in (1, 2, 3):
            yield checks.shift_oracle_check(s, deg, cfg.p, cfg.q, _level(cfg, 5), cfg.prec)


def _qe_closed(cfg):
    for n in _upto(cfg, 16):
        yield from checks.closed_form_check(n)


def _qe_recur(cfg):
    for n in _upto(cfg, 16):
        if n:
            yield checks.recurrence_check(n)


def _qeu_inv(cfg):
    for n in _upto(cfg, 5):
        yield euler.euler_inverse_check(n, cfg.p, cfg.q, cfg.prec)


def _genfun(cfg):
    for n in _upto(cfg, 6):
        yield from checks.genfun_checks(n, cfg.p, cfg.q, min(cfg.prec, 10),
                                        levels=tuple(range(3, _level(cfg, 5) + 1)))


def _qbinom1(cfg):
    for n in _upto(cfg, 6):
        yield gauss_expansion_check(n)
        yield gauss_expansion_check(n, corrected=True)


def _qbinom_int(cfg):
    for n in _upto(cfg, 6):
        yield bridge.q_binom_int_check(n)
        yield bridge.q_binom_int_check(n, "repaired")


def _second_kind(cfg):
    for n in _upto(cfg, 10):
        yield stirling.second_kind_check(n)
    rng = _upto(cfg, 10)
    if len(rng):
        yield stirling.inverse_pair_check(rng[-1])


def _cor24(cfg):
    for n in _upto(cfg, 10):
        yield exact_result("cor-2.4", {"n": n}, euler.euler_poly(n), bridge.cor24_rhs(n), mode="exact-qt")


def _thm25(cfg):
    for n in _upto(cfg, 8):
        rhs = bridge.thm25_rhs(n)
        yield exact_result("thm-2.5", {"n": n}, euler.euler_poly(n), rhs, mode="exact-qt")
        yield exact_result("thm-2.5", {"n": n, "x": 0}, euler.euler_recur(n), rhs.at_x(0))


def _ea_id(cfg):
    for n in _upto(cfg, 8):
        for k in range(n + 1):
            yield bridge.ea_id_check(n, k)


def _id1(cfg):
    for nk in _upto(cfg, 5):
        yield ber.one_minus_x_resummed(nk)
        for x in (0, 1, 2):
            yield ber.one_minus_x_expansion(nk, cfg.p, cfg.q, x, cfg.prec)


def _bernstein_integrals(cfg):
    def run():
        for k, n in _ber_pairs(cfg, lo=0, top=5):
            yield from ber.bernstein_integral(k, n, cfg.p, cfg.q, cfg.prec, N=_level(cfg, 7))
    return _once(("bernstein_integral", cfg), run)


def _thm32(cfg):
    for n in _upto(cfg, 10):
        for i in range(1, n + 1):
            yield ber.power_basis_reduction(i, n)
    for n in _upto(cfg, 6):
        yield ber.power_basis_boundary(n)


def _thm33(cfg):
    for n in _upto(cfg, 3):
        if n < 1:
            continue
        for i in range(1, n + 2):
            yield bridge.thm33_check(n, i, cfg.p, cfg.q, min(cfg.prec, 10))


def _thm34_35(cfg):
    def run():
        for n in _upto(cfg, 6):
            for i in range(1, n + 1):
                yield from bridge.thm34_thm35_check(n, i)
    return _once(("thm34_35", cfg), run)


def _ber_new(cfg):
    for n in _upto(cfg, 5):
        for i in range(1, n + 1):
            yield ber.ber_new_check(i, n)
            for x in (0, 2):
                yield ber.ber_new_series_check(i, n, cfg.p, cfg.q, x, cfg.prec)


def _thm36(cfg):
    for n in _upto(cfg, 5):
        for i in range(1, n + 1):
            yield from ber.thm36_check(i, n, cfg.p, cfg.q, cfg.prec, N=_level(cfg, 6))


def _qbi_two(cfg):
    for n in _upto(cfg, 8):
        yield from checks.qbi_two_check(n)


def _hr_grid(cfg):
    for n in _upto(cfg, 6):
        for h in (0, 1, 2):
            for r in (1, 2, 3):
                yield n, h, r


def _hoq(cfg):
    for n, h, r in _hr_grid(cfg):
        yield from checks.hoq_checks(n, h, r)
    for n in _upto(cfg, 3):
        for h in (0, 1, 2):
            for x in (0, 1):
                yield checks.hoq_oracle_check(n, h, 1, x, cfg.p, cfg.q, _level(cfg, 4), cfg.prec)
    for n in _upto(cfg, 2):
        yield checks.hoq_oracle_check(n, 1, 2, 0, cfg.p, cfg.q, _level(cfg, 3), cfg.prec)


def _lem41(cfg):
    for n in _upto(cfg, 4):
        for h in (0, 1, 2):
            for r in (1, 2, 3):
                yield from euler.norlund_stirling_form(n, h, r)


def _lem42(cfg):
    for n in _upto(cfg, 8):
        for m in range(4):
            yield euler.euler_poly_at_integer(n, m)[1]


def _le_ber(cfg):
    for n in _upto(cfg, 8):
        for m in range(4):
            yield euler.le_ber_id_check(n, m)


def _thm43(cfg):
    for n in _upto(cfg, 3):
        for h in (0, 1, 2):
            for r in (1, 2, 3):
                yield from euler.norlund_integral_checks(n, h, r, cfg.p, cfg.q, cfg.prec, N=_level(cfg, 5))


def _h0(cfg):
    for n in _upto(cfg, 4):
        for r in (1, 2, 3):
            yield from checks.h0_checks(n, r)


def _final(cfg):
    for r in _upto(cfg, 5):
        if r < 1:
            continue
        for m in range(r + 1):
            yield euler.binomial_via_stirling_check(r, m)
            yield euler.binomial_via_stirling_check(r, m, "classical")


BOTH = frozenset({CORE, DIAGNOSTIC})
DIAG = frozenset({DIAGNOSTIC})

_D = IdentityDescriptor
REGISTRY: tuple[IdentityDescriptor, ...] = (
    _D("eq-ber-def", CORE, "exact-qt", "B_{k,n}(x,q) = C(n,k) [x]^k [1-x]^(n-k)",
       "0<=k<=n<=10; classical limit n<=4, x in 0..2", _ber_def),
    _D("eq-recu-ber", CORE, "exact-qt", "B_{k,n} = [1-x] B_{k,n-1} + [x] B_{k-1,n-1}",
       "0<=k<=n, 1<=n<=10",
       lambda cfg: (ber.bernstein_recurrence_check(k, n) for k, n in _ber_pairs(cfg))),
    _D("eq-der-ber", CORE, "exact-qt", "d/dx B_{k,n} = n ln q (q^x B_{k-1,n-1} - q^(1-x) B_{k,n-1})/(q-1)",
       "0<=k<=n, 1<=n<=10",
       lambda cfg: (ber.bernstein_derivative_check(k, n) for k, n in _ber_pairs(cfg))),
    _D("eq-Iqf", CORE, "padic", "I_{-q}(f) = lim (1+q)/(1+q^(p^N)) sum_{x<p^N} f(x)(-q)^x",
       "n<=6, N=2..7", _iqf),
    _D("eq-de3", CORE, "exact-q", "I(f_n) = (-1)^n I(f) + 2 sum_{l<n} (-1)^(n-l-1) f(l)",
       "n<=16 exact; shifts 1..3 by oracle", _de3),
    _D("eq-qE-closed", CORE, "exact-q", "E_n = 2/(1-q)^n sum_l C(n,l) (-1)^l/(1+q^l)", "n<=16", _qe_closed),
    _D("eq-qE-recur", CORE, "exact-q", "(qE + 1)^n + E_n = 0, E_0 = 1", "1<=n<=16", _qe_recur),
    _D("eq-qEu-inv", CORE, "padic", "E_{n,1/q} = q^n sum_m (1-q)^m C(n+m-1,m) E_{n+m}", "n<=5", _qeu_inv),
    _D("eq-genfun-F", CORE, "exact-q", "F_q(t) = 2 e^(t/(1-q)) sum_k (-1)^k t^k/((1-q)^k (1+q^k) k!)",
       "n<=6", _genfun, BOTH),
    _D("eq-q-binom-1", DIAGNOSTIC, "exact-qt", "[x choose n]_q as a sum of q^((n-i)x)", "n<=6",
       _qbinom1, DIAG),
    _D("eq-q-binom-int", DIAGNOSTIC, "exact-q", "integral of [x choose n]_q", "n<=6", _qbinom_int, DIAG),
    _D("eq-1st-ca", CORE, "exact-qt", "[x]!/[x-k]! = q^-C(k,2) sum_l s1(k,l) [x]^l", "k<=10",
       lambda cfg: (stirling.first_kind_check(k) for k in _upto(cfg, 10))),
    _D("eq-2st-ca", CORE, "exact-qt", "[x]^n = sum_k q^C(k,2) s2(n,k) [x]!/[x-k]!", "n<=10", _second_kind),
    _D("thm-2.1", CORE, "exact-q", "E_n via s2, q-binomials and (q-1)^(m-k)", "n<=10",
       lambda cfg: (bridge.thm21_check(n) for n in _upto(cfg, 10))),
    _D("thm-2.2", CORE, "exact-q", "sum_m C(n,m)(q-1)^m E_m via s1", "n<=10",
       lambda cfg: (bridge.thm22_check(n) for n in _upto(cfg, 10))),
    _D("cor-2.3", CORE, "exact-q", "C(n,m)(q-1)^m = sum_k (q-1)^k [n choose k] s1(k,m)", "m<=n<=10",
       lambda cfg: (r for n in _upto(cfg, 10) for r in bridge.cor23_check(n))),
    _D("cor-2.4", CORE, "exact-qt", "E_n(x) = 2/(1-q)^n sum over s1 and q^(lx)/(1+q^l)", "n<=10", _cor24),
    _D("eq-ea-id", CORE, "exact-q", "[n choose k]_q = sum over compositions of q^(sum i l_i)", "k<=n<=8", _ea_id),
    _D("thm-2.5", CORE, "exact-qt", "E_n(x) by the composition sum", "n<=8", _thm25),
    _D("eq-gen-Fk", CORE, "exact-qt", "F_k(u) = u^k [x]^k e^([1-x]u)/k!", "0<=k<=n<=10",
       lambda cfg: (ber.bernstein_gen_coeff(k, n) for k, n in _ber_pairs(cfg, lo=0))),
    _D("eq-id1", CORE, "padic", "[1-x]^n expanded in powers of [x]", "n<=5, x in {0,1,2}", _id1),
    _D("thm-3.1", CORE, "padic", "integral of B_{k,n} as an E-series", "0<=k<=n<=5",
       lambda cfg: _only("thm-3.1", _bernstein_integrals(cfg))),
    _D("thm-3.2", CORE, "exact-qt", "sum_k C(k,i)/C(n,i) B_{k,n} = [x]^i ([x]+[1-x])^(n-i)",
       "1<=i<=n<=10; boundary i=n+1 diagnostic", _thm32, BOTH),
    _D("thm-3.3", DIAGNOSTIC, "padic", "E_i as a quadruple series", "1<=n<=3, 1<=i<=n+1", _thm33, DIAG),
    _D("thm-3.4", DIAGNOSTIC, "exact-qt", "power-basis sum via S1(n,l) S2(i,k) [x]^l", "1<=i<=n<=6",
       lambda cfg: _only("thm-3.4", _thm34_35(cfg)), DIAG),
    _D("thm-3.5", DIAGNOSTIC, "exact-q", "its integral via S1(n,l) S2(i,k) E_l", "1<=i<=n<=6",
       lambda cfg: _only("thm-3.5", _thm34_35(cfg)), DIAG),
    _D("eq-ber-new", CORE, "exact-qt", "[x]^i([x]+[1-x])^(n-i) expansion", "1<=i<=n<=5", _ber_new),
    _D("thm-3.6", CORE, "padic", "integral of the power-basis sum as an E-series", "1<=i<=n<=5", _thm36),
    _D("thm-3.7", CORE, "padic", "integral of B_{k,n} as a second E-series", "0<=k<=n<=5",
       lambda cfg: _only("thm-3.7", _bernstein_integrals(cfg))),
    _D("eq-qbi-two", CORE, "exact-qt", "(a;q)_n and 1/(a;q)_n as q-binomial sums", "n<=8", _qbi_two),
    _D("eq-hoq", CORE, "exact-qt", "E^(h,r)_n(x) as an r-fold integral", "n<=6, h in 0..2, r<=3", _hoq),
    _D("eq-ho-ex", CORE, "exact-qt", "E^(h,r)_n(x) with (-q^(h-1+l);q^-1)_r and (-q^(h-r+l);q)_r",
       "n<=6, h in 0..2, r<=3", lambda cfg: (checks.ho_ex_check(*a) for a in _hr_grid(cfg))),
    _D("eq-ho-ex2", CORE, "exact-qt", "E^(h,-r)_n(x) with the integral in the denominator",
       "n<=6, h in 0..2, r<=3", lambda cfg: (checks.ho_ex2_check(*a) for a in _hr_grid(cfg))),
    _D("eq-ho-ex3", CORE, "exact-qt", "E^(h,-r)_n(x) as a product form and as a sum over m",
       "n<=6, h in 0..2, r<=3", lambda cfg: (r for a in _hr_grid(cfg) for r in checks.ho_ex3_checks(*a))),
    _D("eq-st1", CORE, "exact-q", "q^C(m,2) [r choose m] [m]! = prod_{k<m} ([r]-[k])", "m<=r<=8",
       lambda cfg: (stirling.st1_check(r, m) for r in _upto(cfg, 8) for m in range(r + 1))),
    _D("eq-st2", CORE, "exact-qt", "prod_{k<n} (z-[k]) = sum_k S1(n-1,k) (-1)^k z^(n-k)", "n<=8",
       lambda cfg: (stirling.st2_check(n) for n in _upto(cfg, 8))),
    _D("lem-4.1", CORE, "exact-qt", "E^(h,-r)_n(x) via S1(m-1,k) and [r]^(m-k)", "n<=4, h in 0..2, r<=3",
       _lem41, BOTH),
    _D("eq-le-ber-id", CORE, "exact-qt", "[x+m]^n in powers of [x]", "n<=8, m<=3", _le_ber),
    _D("lem-4.2", CORE, "exact-q", "E_n(m) in terms of E_l", "n<=8, m<=3", _lem42),
    _D("thm-4.3", CORE, "exact-q", "integral of E^(h,-r)_n(x) via S1 and E_n(m)", "n<=3, h in 0..2, r<=3",
       _thm43, BOTH),
    _D("eq-h0", CORE, "exact-qt", "h = 0 polynomial and its integral", "n<=4, r<=3", _h0, BOTH),
    _D("thm-4.4-final", CORE, "exact-q", "[r choose m] q^(C(m,2)-rm) via S1 and [r]", "1<=r<=5, m<=r",
       _final, BOTH),
)

REGISTRY_IDS = tuple(d.id for d in REGISTRY)


def descriptor(id: str) -> IdentityDescriptor:
    for d in REGISTRY:
        if d.id == id:
            return d
    raise KeyError(id)


def _param_key(params: dict):
    out = []
    for k in sorted(params):
        v = params[k]
        if v is None:
            out.append((k, 0, 0, ""))
        elif isinstance(v, bool) or not isinstance(v, int):
            out.append((k, 2, 0, str(v)))
        else:
            out.append((k, 1, v, ""))
    return tuple(out)


def run_suite(cfg: Config | None = None, ids: Iterable[str] | None = None) -> list[IdentityResult]:
    """Run every registered check admitted by the tier filter, deterministically ordered."""
    cfg = validate(cfg or Config())
    wanted = {CORE, DIAGNOSTIC} if cfg.tier == "all" else {cfg.tier}
    selected = [d for d in REGISTRY if ids is None or d.id in set(ids)]
    _shared.clear()
    results: list[IdentityResult] = []
    try:
        with max_terms_limit(cfg.max_terms):
            _run(selected, cfg, wanted, results)
    finally:
        _shared.clear()
    results.sort(key=lambda r: (r.id, _param_key(r.params)))
    return results


def _run(selected, cfg, wanted, results):
    for d in selected:
        if not (d.tiers & wanted):
            continue
        batch: list[IdentityResult] = []
        with timed(batch):
            batch.extend(d.runner(cfg))
        results.extend(r for r in batch if r.tier in wanted)


def summarize(results: Iterable[IdentityResult]) -> dict:
    s = {"core_pass": 0, "core_fail": 0, "diag_pass": 0, "diag_fail": 0}
    for r in results:
        key = ("core_" if r.tier == CORE else "diag_") + ("pass" if r.passed else "fail")
        s[key] += 1
    return s


def build_report(cfg: Config, results: list[IdentityResult], timings: bool = False) -> dict:
    return {
        "config": cfg.to_dict(),
        "results": [r.to_dict(timings=timings) for r in results],
        "summary": summarize(results),
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
