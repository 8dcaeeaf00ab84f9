"""Modified q-Bernstein basis B_{k,n}(x,q) = C(n,k) [x]_q^k [1-x]_q^(n-k) in (q, t)."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .euler import euler_value, integrate_t
from .exact import Q, T, RatFn, q1mx_bracket, qx_bracket, rf_dt, rf_limit_q1, t_power
from .padic import check_q, embed_abs, fermionic_sum, series_sum, vp_rational
from .qcomb import binom_general
from .results import DIAGNOSTIC, IdentityResult, exact_result, padic_result


@lru_cache(maxsize=None)
def bernstein(k: int, n: int) -> RatFn:
    if k < 0 or n < 0:
        return RatFn(0)
    if k > n:
        return RatFn(0)
    return comb(n, k) * qx_bracket() ** k * q1mx_bracket() ** (n - k)


def bernstein_value(k: int, n: int, x: int, q0) -> Fraction:
    """B_{k,n}(x, q0) for integer x, avoiding symbolic work."""
    if k > n:
        return Fraction(0)
    q0 = Fraction(q0)
    y = (1 - q0**x) / (1 - q0)
    z = (1 - q0 ** (1 - x)) / (1 - q0)
    return comb(n, k) * y**k * z ** (n - k)


def bernstein_recurrence_check(k: int, n: int) -> IdentityResult:
    lhs = bernstein(k, n)
    rhs = q1mx_bracket() * bernstein(k, n - 1) + qx_bracket() * bernstein(k - 1, n - 1)
    return exact_result("eq-recu-ber", {"k": k, "n": n}, lhs, rhs, mode="exact-qt")


def bernstein_derivative_check(k: int, n: int) -> IdentityResult:
    """t dB/dt = n (t B_{k-1,n-1} - (q/t) B_{k,n-1})/(q - 1); ln q divided out."""
    lhs = RatFn(T) * rf_dt(bernstein(k, n))
    qt = RatFn(Q) * t_power(-1)
    rhs = n * (RatFn(T) * bernstein(k - 1, n - 1) - qt * bernstein(k, n - 1)) / RatFn(Q - 1)
    return exact_result("eq-der-ber", {"k": k, "n": n}, lhs, rhs, mode="exact-qt")


def bernstein_symmetry_check(k: int, n: int) -> IdentityResult:
    return exact_result("eq-ber-def", {"k": k, "n": n, "law": "symmetry"},
                        bernstein(k, n), bernstein(n - k, n).reflect_x(), mode="exact-qt")


def bernstein_partition_check(n: int) -> IdentityResult:
    total = RatFn(0)
    for k in range(n + 1):
        total = total + bernstein(k, n)
    return exact_result("eq-ber-def", {"n": n, "law": "partition"},
                        total, (qx_bracket() + q1mx_bracket()) ** n, mode="exact-qt")


def bernstein_classical_check(k: int, n: int, x: int) -> IdentityResult:
    """q -> 1 with t = q^x gives C(n,k) x^k (1-x)^(n-k)."""
    got = rf_limit_q1(bernstein(k, n).at_x(x))
    want = comb(n, k) * Fraction(x) ** k * Fraction(1 - x) ** (n - k) if k <= n else Fraction(0)
    return exact_result("eq-ber-def", {"k": k, "n": n, "x": x, "law": "classical-limit"},
                        RatFn(got), RatFn(want))


def bernstein_gen_coeff(k: int, n: int, order: int | None = None) -> IdentityResult:
    """Coefficient of u^n/n! in u^k e^([1-x] u) [x]^k / k! against B_{k,n}."""
    order = max(n, k) if order is None else order
    if order < n:
        raise ValueError("order must be >= n")
    y, z = qx_bracket(), q1mx_bracket()
    # u^k/k! * [x]^k * sum_j [1-x]^j u^j/j!  ->  coefficient of u^n is [x]^k [1-x]^(n-k)/(k!(n-k)!)
    coeffs = {}
    for j in range(order - k + 1):
        coeffs[k + j] = (y**k * z**j, Fraction(1, _fact(k) * _fact(j)))
    if n in coeffs:
        val, c = coeffs[n]
        got = val * (c * _fact(n))
    else:
        got = RatFn(0)
    return exact_result("eq-gen-Fk", {"k": k, "n": n, "order": order}, got, bernstein(k, n), mode="exact-qt")


def _fact(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def power_basis_lhs(i: int, n: int) -> RatFn:
    s = RatFn(0)
    for k in range(max(i - 1, 0), n + 1):
        s = s + Fraction(comb(k, i), comb(n, i)) * bernstein(k, n)
    return s


def power_basis_rhs(i: int, n: int) -> RatFn:
    return qx_bracket() ** i * (qx_bracket() + q1mx_bracket()) ** (n - i)


def power_basis_reduction(i: int, n: int) -> IdentityResult:
    """sum_{k>=i-1} C(k,i)/C(n,i) B_{k,n} = [x]^i ([x] + [1-x])^(n-i), 1 <= i <= n."""
    if not 1 <= i <= n:
        raise ValueError("power-basis reduction needs 1 <= i <= n")
    return exact_result("thm-3.2", {"i": i, "n": n}, power_basis_lhs(i, n), power_basis_rhs(i, n),
                        mode="exact-qt")


def power_basis_boundary(n: int) -> IdentityResult:
    """The i = n + 1 edge: C(n, n+1) = 0 makes the left side vanish."""
    i = n + 1
    lhs = RatFn(0)
    rhs = qx_bracket() ** i / (qx_bracket() + q1mx_bracket())
    return exact_result("thm-3.2", {"i": i, "n": n, "reading": "boundary i=n+1"}, lhs, rhs,
                        mode="exact-qt", tier=DIAGNOSTIC)


# ---- p-adic series -------------------------------------------------------


def _vq(q0: Fraction, p: int) -> int:
    return int(vp_rational(q0 - 1, p))


def one_minus_x_series(nk: int, x0: int, q0: Fraction, p: int, M: int):
    """Right side of the [1-x]^nk expansion at integer x0, as a p-adic sum."""
    A = M + 3
    y = (1 - q0**x0) / (1 - q0)
    vq = _vq(q0, p)

    def term(m):
        s = Fraction(0)
        for l in range(nk + 1):
            s += binom_general(l + m - 1, m) * comb(nk, l) * (-1) ** (l + m) * q0**l * y ** (l + m) * (q0 - 1) ** m
        return embed_abs(s, p, A)

    return series_sum(term, lambda m: m * vq, M, p=p)


def one_minus_x_expansion(nk: int, p: int, q0, x0: int, M: int) -> IdentityResult:
    q0 = check_q(q0, p)
    lhs = ((1 - q0 ** (1 - x0)) / (1 - q0)) ** nk
    rhs = one_minus_x_series(nk, x0, q0, p, M)
    agree = min(embed_abs(lhs, p, M).agreement(rhs), M)
    return padic_result("eq-id1", {"nk": nk, "p": p, "q": str(q0), "x": x0, "M": M}, agree, M)


def one_minus_x_resummed(nk: int) -> IdentityResult:
    """Exact form of the same expansion with the m-series summed: [1-x] = 1 - q t^-1 [x]."""
    y = qx_bracket()
    rhs = RatFn(0)
    for l in range(nk + 1):
        rhs = rhs + comb(nk, l) * (-1) ** l * RatFn(Q) ** l * t_power(-l) * y**l
    return exact_result("eq-id1", {"nk": nk, "route": "resummed"}, q1mx_bracket() ** nk, rhs,
                        mode="exact-qt")


def bernstein_oracle(k: int, n: int, q0: Fraction, p: int, N: int) -> Fraction:
    return fermionic_sum(lambda x: bernstein_value(k, n, x, q0), p, N)


def thm31_series(k: int, n: int, q0: Fraction, p: int, M: int):
    """sum_m sum_l C(l+m-1,m) C(n-k,l) (-1)^(l+m) q^l (q-1)^m E_{l+m+k}, times C(n,k)."""
    A = M + 3
    vq = _vq(q0, p)

    def term(m):
        s = Fraction(0)
        for l in range(n - k + 1):
            c = binom_general(l + m - 1, m)
            if c:
                s += c * comb(n - k, l) * (-1) ** (l + m) * q0**l * (q0 - 1) ** m * euler_value(l + m + k, q0)
        return embed_abs(comb(n, k) * s, p, A)

    return series_sum(term, lambda m: m * vq, M, p=p)


def thm37_series(k: int, n: int, q0: Fraction, p: int, M: int):
    """sum_j sum_m C(j,k) C(n,j) C(j-k+m-1,m) (-1)^(j-k+m) q^(j-k) (q-1)^m E_{m+j}."""
    A = M + 3
    vq = _vq(q0, p)

    def term(m):
        s = Fraction(0)
        for j in range(k, n + 1):
            c = binom_general(j - k + m - 1, m)
            if c:
                s += (comb(j, k) * comb(n, j) * c * (-1) ** (j - k + m) * q0 ** (j - k)
                      * (q0 - 1) ** m * euler_value(m + j, q0))
        return embed_abs(s, p, A)

    return series_sum(term, lambda m: m * vq, M, p=p)


def thm36_series(i: int, n: int, q0: Fraction, p: int, M: int):
    """sum_l sum_m sum_s C(n-i,l) C(n-i-l,m) C(m+s-1,s) (-1)^m q^m (1-q)^s E_{m+i+l+s}."""
    A = M + 3
    vq = _vq(q0, p)

    def term(s_idx):
        acc = Fraction(0)
        for l in range(n - i + 1):
            for m in range(n - i - l + 1):
                c = binom_general(m + s_idx - 1, s_idx)
                if c:
                    acc += (comb(n - i, l) * comb(n - i - l, m) * c * (-1) ** m * q0**m
                            * (1 - q0) ** s_idx * euler_value(m + i + l + s_idx, q0))
        return embed_abs(acc, p, A)

    return series_sum(term, lambda s: s * vq, M, p=p)


def ber_new_check(i: int, n: int) -> IdentityResult:
    """Finite stage of the [x]^i([x]+[1-x])^(n-i) expansion, exactly in (q, t)."""
    y = qx_bracket()
    rhs = RatFn(0)
    for l in range(n - i + 1):
        for m in range(n - i - l + 1):
            c = comb(n - i, l) * comb(n - i - l, m) * (-1) ** m
            rhs = rhs + c * RatFn(Q) ** m * y ** (m + i + l) * t_power(-m)
    return exact_result("eq-ber-new", {"i": i, "n": n}, power_basis_rhs(i, n), rhs, mode="exact-qt")


def ber_new_series_check(i: int, n: int, p: int, q0, x0: int, M: int) -> IdentityResult:
    """Fully expanded (s-series) stage at an integer point x0."""
    q0 = check_q(q0, p)
    A = M + 3
    vq = _vq(q0, p)
    y = (1 - q0**x0) / (1 - q0)
    z = (1 - q0 ** (1 - x0)) / (1 - q0)
    lhs = y**i * (y + z) ** (n - i)

    def term(s_idx):
        acc = Fraction(0)
        for l in range(n - i + 1):
            for m in range(n - i - l + 1):
                c = binom_general(m + s_idx - 1, s_idx)
                if c:
                    acc += (comb(n - i, l) * comb(n - i - l, m) * c * (-1) ** m * q0**m
                            * (1 - q0) ** s_idx * y ** (m + i + l + s_idx))
        return embed_abs(acc, p, A)

    rhs = series_sum(term, lambda s: s * vq, M, p=p)
    agree = min(embed_abs(lhs, p, M).agreement(rhs), M)
    return padic_result("eq-ber-new", {"i": i, "n": n, "p": p, "q": str(q0), "x": x0, "M": M}, agree, M)


def bernstein_integral(k: int, n: int, p: int, q0, M: int, N: int | None = None) -> list[IdentityResult]:
    """Integral of B_{k,n} by the oracle, the exact t-integrator and both E-series."""
    if k > n or k < 0:
        raise IndexError("bernstein_integral needs 0 <= k <= n")
    q0 = check_q(q0, p)
    # oracle error at level N is O(p^N); M + 1 levels clear the target
    N = M + 1 if N is None else N
    exact = integrate_t(bernstein(k, n)).eval(q0)
    ex = embed_abs(exact, p, M)
    params = {"k": k, "n": n, "p": p, "q": str(q0), "M": M}
    out = []
    oracle_N = min(N, 7)
    orc = embed_abs(bernstein_oracle(k, n, q0, p, oracle_N), p, M)
    out.append(padic_result("thm-3.1", dict(params, route="oracle-vs-exact", N=oracle_N),
                            min(orc.agreement(ex), M), min(oracle_N - 1, M)))
    s31 = thm31_series(k, n, q0, p, M)
    out.append(padic_result("thm-3.1", dict(params, route="series-vs-exact"), min(s31.agreement(ex), M), M))
    out.append(padic_result("thm-3.1", dict(params, route="series-vs-oracle", N=oracle_N),
                            min(s31.agreement(orc), M), min(oracle_N - 1, M)))
    s37 = thm37_series(k, n, q0, p, M)
    out.append(padic_result("thm-3.7", dict(params, route="series-vs-exact"), min(s37.agreement(ex), M), M))
    out.append(padic_result("thm-3.7", dict(params, route="series-vs-thm-3.1"), min(s37.agreement(s31), M), M))
    return out


def thm36_check(i: int, n: int, p: int, q0, M: int, N: int = 6) -> list[IdentityResult]:
    q0 = check_q(q0, p)
    lhs_exact = integrate_t(power_basis_lhs(i, n)).eval(q0)
    oracle = fermionic_sum(
        lambda x: sum(Fraction(comb(k, i), comb(n, i)) * bernstein_value(k, n, x, q0)
                      for k in range(max(i - 1, 0), n + 1)), p, N)
    rhs = thm36_series(i, n, q0, p, M)
    params = {"i": i, "n": n, "p": p, "q": str(q0), "M": M}
    ex = embed_abs(lhs_exact, p, M)
    return [
        padic_result("thm-3.6", dict(params, route="series-vs-exact"), min(rhs.agreement(ex), M), M),
        padic_result("thm-3.6", dict(params, route="series-vs-oracle", N=N),
                     min(rhs.agreement(embed_abs(oracle, p, M)), M), min(N - 1, M)),
    ]
