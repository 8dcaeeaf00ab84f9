"""Identities tying q-Euler numbers to the two q-Stirling families."""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .bernstein import power_basis_lhs
from .euler import euler_poly, euler_recur, euler_value, integrate_t
from .exact import Q, PolyQT, RatFn, q_power, qx_bracket, q1mx_bracket, rsum
from .padic import check_q, embed_abs, vp_rational
from .qcomb import binom_general, gauss_binomial, gauss_binomial_compositions, q_binom_x, q_factorial
from .results import DIAGNOSTIC, NO_CONVERGENCE, IdentityResult, exact_result, padic_result
from .stirling import S1_row, S2, s1_row, s2_row


def cor23_check(n: int) -> list[IdentityResult]:
    """C(n,m)(q-1)^m = sum_{k=m..n} (q-1)^k [n choose k]_q s1(k,m), each m."""
    out = []
    qm1 = Q - 1
    for m in range(n + 1):
        rhs = PolyQT(0)
        for k in range(m, n + 1):
            rhs = rhs + qm1**k * gauss_binomial(n, k) * s1_row(k)[m]
        out.append(exact_result("cor-2.3", {"n": n, "m": m}, RatFn(comb(n, m) * qm1**m), RatFn(rhs)))
    return out


def thm22_check(n: int) -> IdentityResult:
    qm1 = RatFn(Q - 1)
    lhs = rsum(comb(n, m) * qm1**m * euler_recur(m) for m in range(n + 1))
    rhs = RatFn(0)
    for m in range(n + 1):
        c = PolyQT(0)
        for k in range(m, n + 1):
            c = c + (Q - 1) ** k * gauss_binomial(n, k) * s1_row(k)[m]
        rhs = rhs + RatFn(c) * euler_recur(m)
    return exact_result("thm-2.2", {"n": n}, lhs, rhs)


def thm21_rhs(n: int) -> RatFn:
    qm1 = RatFn(Q - 1)
    row = s2_row(n)
    total = RatFn(0)
    for k in range(n + 1):
        if row[k].is_zero():
            continue
        for m in range(k + 1):
            inner = PolyQT(0)
            for l in range(m, k + 1):
                e = l * (l - 1) // 2 + l * (1 - k)
                c = (-1) ** (l + k) * comb(l, m)
                # q^e may be a negative power: multiply in after the sum
                inner = inner + gauss_binomial(k, l) * PolyQT.monomial(e + k * k, 0, c)
            if inner.is_zero():
                continue
            coeff = RatFn(inner) * q_power(-k * k) * q_power(k * (k - 1) // 2) * RatFn(row[k])
            total = total + coeff * qm1 ** (m - k) * euler_recur(m)
    return total


def thm21_check(n: int) -> IdentityResult:
    rhs = thm21_rhs(n)
    res = exact_result("thm-2.1", {"n": n}, euler_recur(n), rhs)
    if rhs.den.eval(1) == 0:
        res.note = "assembled sum keeps a pole at q = 1"
    return res


def cor24_rhs(n: int) -> RatFn:
    total = RatFn(0)
    for l in range(n + 1):
        c = PolyQT(0)
        for k in range(l, n + 1):
            c = c + (Q - 1) ** (k - l) * gauss_binomial(n, k) * s1_row(k)[l]
        total = total + RatFn(c * PolyQT.monomial(0, l, (-1) ** l), 1 + PolyQT.monomial(l, 0))
    return 2 * total / RatFn(1 - Q) ** n


def thm25_rhs(n: int) -> RatFn:
    total = RatFn(0)
    for l in range(n + 1):
        for k in range(l, n + 1):
            c = gauss_binomial_compositions(n, k) * s1_row(k)[l] * (-1) ** k
            if c.is_zero():
                continue
            total = total + RatFn(c * PolyQT.monomial(0, l)) / (
                RatFn(1 - Q) ** (n + l - k) * RatFn(1 + PolyQT.monomial(l, 0)))
    return 2 * total


def cor24_thm25_check(n: int, multi_index_max: int = 8) -> list[IdentityResult]:
    target = euler_poly(n)
    out = [exact_result("cor-2.4", {"n": n}, target, cor24_rhs(n), mode="exact-qt")]
    if n <= multi_index_max:
        out.append(exact_result("thm-2.5", {"n": n}, target, thm25_rhs(n), mode="exact-qt"))
        out.append(exact_result("thm-2.5", {"n": n, "x": 0}, euler_recur(n), thm25_rhs(n).at_x(0)))
    return out


def ea_id_check(n: int, k: int) -> IdentityResult:
    return exact_result("eq-ea-id", {"n": n, "k": k}, RatFn(gauss_binomial(n, k)),
                        RatFn(gauss_binomial_compositions(n, k)))


# ---- product-kind Stirling identities (audited, not asserted) -----------


def _S2_pick(i: int, k: int, reading: str) -> PolyQT:
    return S2(i, k) if reading == "printed" else S2(k, i)


def thm34_rhs(n: int, i: int, reading: str = "printed") -> RatFn:
    y = qx_bracket()
    row = S1_row(n)
    total = RatFn(0)
    for k in range(i + 1):
        c2 = _S2_pick(i, k, reading)
        if c2.is_zero():
            continue
        for l in range(k + 1):
            total = total + RatFn(row[l] * c2) * y**l
    return total


def thm34_lhs(n: int, i: int) -> RatFn:
    return power_basis_lhs(i, n) / (qx_bracket() + q1mx_bracket()) ** (n - i)


def thm35_rhs(n: int, i: int, reading: str = "printed") -> RatFn:
    row = S1_row(n)
    total = RatFn(0)
    for k in range(i + 1):
        c2 = _S2_pick(i, k, reading)
        if c2.is_zero():
            continue
        for l in range(k + 1):
            total = total + RatFn(row[l] * c2) * euler_recur(l)
    return total


def thm34_thm35_check(n: int, i: int) -> list[IdentityResult]:
    out = []
    lhs34 = thm34_lhs(n, i)
    lhs35 = integrate_t(lhs34)
    for reading in ("printed", "transposed"):
        flags = dict(tier=DIAGNOSTIC, printed_form=reading == "printed", repair_candidate=reading != "printed")
        params = {"n": n, "i": i, "reading": reading}
        out.append(exact_result("thm-3.4", params, lhs34, thm34_rhs(n, i, reading), mode="exact-qt", **flags))
        out.append(exact_result("thm-3.5", dict(params), lhs35, thm35_rhs(n, i, reading), **flags))
    return out


def q_binom_int_check(n: int, reading: str = "printed") -> IdentityResult:
    """Integral of [x choose n]_q against the printed (q-1)^n-prefactor formula."""
    lhs = integrate_t(q_binom_x(n))
    e = n if reading == "printed" else -n
    pref = RatFn(Q - 1) ** e * q_power(-(n * (n - 1) // 2)) / RatFn(q_factorial(n))
    s = RatFn(0)
    for i in range(n + 1):
        inner = rsum(comb(n - i, j) * RatFn(Q - 1) ** j * euler_recur(j) for j in range(n - i + 1))
        s = s + RatFn(gauss_binomial(n, i) * PolyQT.monomial(i * (i - 1) // 2, 0, (-1) ** i)) * inner
    return exact_result("eq-q-binom-int", {"n": n, "reading": reading}, lhs, pref * s,
                        tier=DIAGNOSTIC, printed_form=reading == "printed",
                        repair_candidate=reading != "printed")


def thm33_check(n: int, i: int, p: int, q0, M: int, m_cap: int = 16) -> IdentityResult:
    """Evaluate the printed quadruple series for E_{i,q} and report what happens.

    The m-sum carries no (q-1) power, so its convergence is probed over the
    first ``m_cap`` terms; E-indices may also go negative, which is undefined.
    """
    if not 1 <= i <= n + 1:
        raise ValueError("need 1 <= i <= n + 1")
    q0 = check_q(q0, p)
    A = M + 6
    vq = int(vp_rational(q0 - 1, p))

    def E(j):
        return embed_abs(euler_value(j, q0), p, A).residue()

    params = {"n": n, "i": i, "p": p, "q": str(q0), "M": M, "m_cap": m_cap}
    target = embed_abs(euler_value(i, q0), p, M)
    negative = 0
    terms = []
    p_max = 0
    while p_max * vq < A:
        p_max += 1
    for m in range(m_cap):
        acc = Fraction(0)
        for k in range(max(i - 1, 0), n + 1):
            if i == n + 1:
                # single point k = n: C(n,i)/C(n,i) cancelled formally
                w = Fraction(1)
            else:
                w = Fraction(comb(k, i) * comb(n, k), comb(n, i))
            if w == 0:
                continue
            c_m = binom_general(n - i + m - 1, m)
            if c_m == 0:
                continue
            for l in range(m + n - k + 1):
                for pp in range(p_max):
                    c = binom_general(l + pp - 1, pp)
                    if c == 0:
                        continue
                    idx = i - n - m + k + pp + l
                    coef = w * c * comb(m + n - k, l) * c_m * (-1) ** (l + pp + m) * q0**l * (q0 - 1) ** pp
                    if idx < 0:
                        negative += 1
                        continue
                    acc += coef * E(idx)
        terms.append(embed_abs(acc, p, A))
    details = {"negative_index_terms": negative}
    if i == n + 1:
        details["weight"] = "0/0 cancelled to 1"
    tail = terms[-4:]
    settled = all(t.val >= M + 2 for t in tail)
    if negative or not settled:
        partial = terms[0]
        for t in terms[1:]:
            partial = partial + t
        details["partial_sum_agreement"] = min(partial.agreement(target), M)
        why = []
        if negative:
            why.append("needs E_j with negative j")
        if not settled:
            why.append("m-terms do not decay (no (q-1) factor)")
        return IdentityResult("thm-3.3", params, "padic", NO_CONVERGENCE, tier=DIAGNOSTIC,
                              note="; ".join(why), details=details)
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    agree = min(total.truncate(M).agreement(target), M)
    return padic_result("thm-3.3", params, agree, M, tier=DIAGNOSTIC, details=details)
