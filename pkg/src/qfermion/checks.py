"""Checks for the q-Euler and higher-order identities that need more than one
constructor: oracle convergence, generating-function coefficients, the
q-binomial theorem and the various forms of the (h, +-r) polynomials."""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .euler import (
    euler_classical_oracle, euler_closed, euler_higher, euler_higher_from_integrals,
    euler_higher_oracle, euler_norlund, euler_norlund_from_integrals, euler_norlund_printed,
    euler_poly, euler_poly_value, euler_recur, integral_q_power, integrate_t, neg_q_poch,
    norlund_integral_exact,
)
from .exact import Q, PolyQT, RatFn, rf_limit_q1
from .padic import check_q, embed_abs, fermionic_sum, fermionic_sum_q, shift_identity_check
from .qcomb import q_pochhammer
from .results import DIAGNOSTIC, IdentityResult, exact_result, padic_result


def max_level(p: int, budget: int = 2187) -> int:
    """Largest N with p^N <= budget (at least 1)."""
    N = 1
    while p ** (N + 1) <= budget:
        N += 1
    return N


def bracket_value(x: int, q0: Fraction) -> Fraction:
    return (1 - q0**x) / (1 - q0)


# ---- fermionic integral -------------------------------------------------


def iqf_check(n: int, p: int, q0, N: int, M: int) -> IdentityResult:
    """Level-N partial sum of (-1)^x [x]^n against the exact E_{n,q} at q0."""
    q0 = check_q(q0, p)
    # [x]^n = (1 - q^x)^n / (1-q)^n; sum the integer part and divide once
    num = fermionic_sum(lambda x: (1 - q0**x) ** n, p, N)
    oracle = num / (1 - q0) ** n
    exact = euler_closed(n).eval(q0)
    agree = embed_abs(oracle, p, M).agreement(embed_abs(exact, p, M))
    return padic_result("eq-Iqf", {"n": n, "p": p, "q": str(q0), "N": N, "M": M},
                        min(agree, M), min(N - 1, M))


def iqf_worked_value(p: int = 3, N: int = 6) -> IdentityResult:
    """sum_{x < p^N} (-1)^x x against I(x) = -1/2."""
    s = fermionic_sum(lambda x: x, p, N)
    agree = embed_abs(s, p, N).agreement(embed_abs(Fraction(-1, 2), p, N))
    return padic_result("eq-Iqf", {"f": "x", "p": p, "N": N}, agree, N, details={"partial_sum": str(s)})


def iq_constant_check(p: int, q0, N: int) -> IdentityResult:
    """The q-weighted measure has total mass 1 at every level."""
    q0 = Fraction(q0)
    val = fermionic_sum_q(lambda x: 1, q0, p, N)
    return exact_result("eq-Iqf", {"f": "1", "weight": "-q", "p": p, "q": str(q0), "N": N},
                        RatFn(1), RatFn(val))


# ---- q-Euler numbers ----------------------------------------------------


def shift_check(n: int) -> IdentityResult:
    """E_{n,q}(1) + E_{n,q} = 2 [n = 0], exactly."""
    lhs = euler_poly(n, 1) + euler_recur(n)
    return exact_result("eq-de3", {"n": n, "form": "E(1)+E"}, lhs, RatFn(2 if n == 0 else 0))


def shift_oracle_check(n_shift: int, deg: int, p: int, q0, N: int, M: int) -> IdentityResult:
    q0 = check_q(q0, p)
    res = shift_identity_check(n_shift, lambda x: bracket_value(x, q0) ** deg, p, N, M)
    res.params.update(deg=deg, q=str(q0))
    return res


def closed_form_check(n: int) -> list[IdentityResult]:
    closed = euler_closed(n)
    out = [exact_result("eq-qE-closed", {"n": n}, euler_recur(n), closed)]
    lim = rf_limit_q1(closed)
    out.append(exact_result("eq-qE-closed", {"n": n, "limit": "q->1"},
                            RatFn(euler_classical_oracle(n)), RatFn(lim)))
    return out


def recurrence_check(n: int) -> IdentityResult:
    """(qE + 1)^n + E_n = 0 for n >= 1, evaluated on the closed form."""
    acc = RatFn(0)
    for l in range(n + 1):
        acc = acc + RatFn(PolyQT.monomial(l, 0, comb(n, l))) * euler_closed(l)
    return exact_result("eq-qE-recur", {"n": n}, acc + euler_closed(n), RatFn(0))


# ---- generating function coefficients --------------------------------------


def _abel_alternating(l: int) -> RatFn:
    # sum_m (-1)^m q^(lm) resummed to 1/(1 + q^l)
    return 1 / (1 + RatFn(PolyQT.monomial(l, 0)))


def genfun_checks(n: int, p: int, q0, M: int, levels=(3, 4, 5)) -> list[IdentityResult]:
    """Coefficient of t^n/n! in both product forms of the generating function.

    The exponential-sum form 2 sum_m (-1)^m e^([m+x] t) has a divergent
    coefficient series; it passes after Abel resummation of each
    sum_m (-1)^m q^(lm), and is also reported under level-N fermionic
    summation at integer x.
    """
    qm = RatFn(1 - Q)
    target = euler_recur(n)
    # 2 e^(t/(1-q)) * sum_k (-1)^k t^k / ((1-q)^k (1+q^k) k!)
    cauchy = RatFn(0)
    for k in range(n + 1):
        cauchy = cauchy + comb(n, k) * 2 * (-1) ** k / (qm**n * (1 + RatFn(PolyQT.monomial(k, 0))))
    out = [exact_result("eq-genfun-F", {"n": n, "form": "cauchy-product"}, target, cauchy)]
    # 2 sum_m (-1)^m e^([m+x] t): coefficient 2/(1-q)^n sum_l C(n,l)(-1)^l q^(lx) sum_m (-1)^m q^(lm)
    abel = RatFn(0)
    for l in range(n + 1):
        abel = abel + RatFn(PolyQT.monomial(0, l, comb(n, l) * (-1) ** l)) * _abel_alternating(l)
    abel = 2 * abel / qm**n
    out.append(exact_result("eq-genfun-F", {"n": n, "form": "exp-sum-abel"}, euler_poly(n), abel,
                            mode="exact-qt",
                            note="alternating q^(lm) sums resummed as 1/(1+q^l)"))
    q0 = check_q(q0, p)
    for x in (0, 1):
        exact = embed_abs(euler_poly_value(n, x, q0), p, M)
        for N in levels:
            s = 2 * fermionic_sum(lambda m: bracket_value(m + x, q0) ** n, p, N)
            agree = min(embed_abs(s, p, M).agreement(exact), M)
            out.append(padic_result(
                "eq-genfun-F", {"n": n, "x": x, "form": "exp-sum-fermionic", "p": p, "q": str(q0), "N": N, "M": M},
                agree, min(N - 1, M), tier=DIAGNOSTIC,
                note="fermionic summation of 2 sum (-1)^m [m+x]^n tends to 2 E_n(x)"))
    return out


# ---- q-binomial theorem ---------------------------------------------------


def qbi_two_check(n: int, order: int | None = None) -> list[IdentityResult]:
    rec = q_pochhammer(n, order)
    prod = rec["product"]
    out = [exact_result("eq-qbi-two", {"n": n, "form": "finite"}, RatFn(prod), RatFn(rec["expansion"]),
                        mode="exact-qt")]
    check = prod * rec["series"]
    low = PolyQT({(a, b): c for (a, b), c in check.terms() if b <= rec["order"]})
    out.append(exact_result("eq-qbi-two", {"n": n, "form": "reciprocal", "order": rec["order"]},
                            RatFn(low), RatFn(1), mode="exact-qt"))
    return out


# ---- higher order -------------------------------------------------------


def hoq_checks(n: int, h: int, r: int) -> list[IdentityResult]:
    """Multiple-integral definition vs the closed form, plus the h = r = 1 reduction."""
    params = {"n": n, "h": h, "r": r}
    out = [exact_result("eq-hoq", dict(params, route="iterated-integral"),
                        euler_higher_from_integrals(n, h, r), euler_higher(n, h, r), mode="exact-qt")]
    if h == 1 and r == 1:
        out.append(exact_result("eq-hoq", dict(params, route="reduction"),
                                euler_poly(n), euler_higher(n, 1, 1), mode="exact-qt"))
    return out


def hoq_oracle_check(n: int, h: int, r: int, x: int, p: int, q0, N: int, M: int) -> IdentityResult:
    q0 = check_q(q0, p)
    oracle = euler_higher_oracle(n, h, r, x, q0, p, N)
    exact = euler_higher(n, h, r, x).eval(q0)
    agree = min(embed_abs(oracle, p, M).agreement(embed_abs(exact, p, M)), M)
    return padic_result("eq-hoq", {"n": n, "h": h, "r": r, "x": x, "route": "oracle",
                                   "p": p, "q": str(q0), "N": N, "M": M},
                        agree, min(N - 1, M))


def ho_ex_check(n: int, h: int, r: int) -> IdentityResult:
    return exact_result("eq-ho-ex", {"n": n, "h": h, "r": r},
                        euler_higher(n, h, r, form="descending"), euler_higher(n, h, r), mode="exact-qt")


def ho_ex2_check(n: int, h: int, r: int) -> IdentityResult:
    return exact_result("eq-ho-ex2", {"n": n, "h": h, "r": r},
                        euler_norlund_from_integrals(n, h, r), euler_norlund(n, h, r), mode="exact-qt")


def ho_ex3_checks(n: int, h: int, r: int) -> list[IdentityResult]:
    params = {"n": n, "h": h, "r": r}
    out = [exact_result("eq-ho-ex3", dict(params, form="product-vs-sum"),
                        euler_norlund_printed(n, h, r), euler_norlund(n, h, r), mode="exact-qt")]
    # the l-th weights of the (h,r) and (h,-r) families are reciprocal
    prod = RatFn(1)
    for l in range(n + 1):
        w_plus = RatFn(1)
        for j in range(1, r + 1):
            w_plus = w_plus * integral_q_power(l + h - j)
        w_minus = neg_q_poch(h - r + l, r) / 2**r
        prod = prod * (w_plus * w_minus)
    out.append(exact_result("eq-ho-ex3", dict(params, form="dual-weights"), prod, RatFn(1)))
    return out


def h0_checks(n: int, r: int) -> list[IdentityResult]:
    """h = 0: polynomial and its integral, under both readings of C(r, m)."""
    out = []
    poly = euler_norlund_from_integrals(n, 0, r)
    integral = integrate_t(poly)
    for reading, binomial in (("q-binomial", "q"), ("classical", "classical")):
        flags = {} if binomial == "q" else dict(tier=DIAGNOSTIC)
        flags.update(printed_form=binomial != "q", repair_candidate=binomial == "q")
        params = {"n": n, "r": r, "reading": reading}
        out.append(exact_result("eq-h0", dict(params, object="polynomial"), poly,
                                euler_norlund(n, 0, r, binomial=binomial), mode="exact-qt", **flags))
        out.append(exact_result("eq-h0", dict(params, object="integral"), integral,
                                norlund_integral_exact(n, 0, r, binomial), **flags))
    return out
