"""q-integers, q-factorials, Gaussian binomials and q-shifted factorials."""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .exact import ONE, Q, T, PolyQT, RatFn, q_power
from .results import DIAGNOSTIC, IdentityResult, exact_result


def q_int(n: int) -> PolyQT:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    return PolyQT({(i, 0): 1 for i in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> PolyQT:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    return ONE if n == 0 else q_factorial(n - 1) * q_int(n)


@lru_cache(maxsize=None)
def gauss_binomial(n: int, k: int) -> PolyQT:
    """Gaussian binomial [n choose k]_q; zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return PolyQT(0)
    num = q_factorial(n)
    den = q_factorial(k) * q_factorial(n - k)
    try:
        return num.exquo(den)
    except ArithmeticError as exc:  # pragma: no cover - kernel bug
        raise RuntimeError(f"Gaussian binomial ({n},{k}) left a remainder") from exc


def gauss_binomial_compositions(n: int, k: int) -> PolyQT:
    """Sum of q^(sum i*l_i) over l_0 + ... + l_k = n - k (brute force)."""
    if k < 0 or k > n:
        return PolyQT(0)
    m = n - k
    out: dict[tuple[int, int], int] = {}
    for ls in product(range(m + 1), repeat=k + 1):
        if sum(ls) == m:
            e = sum(i * li for i, li in enumerate(ls))
            out[(e, 0)] = out.get((e, 0), 0) + 1
    return PolyQT(out)


def binom_general(a: int, b: int) -> int:
    """a(a-1)...(a-b+1)/b! for any integer a."""
    if b < 0:
        raise ValueError("lower index must be >= 0")
    num, den = 1, 1
    for i in range(1, b + 1):
        num *= a - b + i
        den *= i
    return num // den


def q_pochhammer(n: int, order: int | None = None) -> dict:
    """Both q-binomial formulas for (a;q)_n, with a carried by the t slot.

    Returns the product, the finite expansion, the truncated reciprocal
    series and the truncation order, plus the two verdicts.
    """
    order = n if order is None else order
    prod = ONE
    for j in range(n):
        prod = prod * (1 - PolyQT.monomial(j, 1))
    expansion = PolyQT(0)
    for i in range(n + 1):
        c = gauss_binomial(n, i) * PolyQT.monomial(i * (i - 1) // 2, i, (-1) ** i)
        expansion = expansion + c
    if n == 0:
        series = ONE
    else:
        series = PolyQT(0)
        for i in range(order + 1):
            series = series + gauss_binomial(n + i - 1, i) * PolyQT.monomial(0, i)
    check = prod * series
    truncated = PolyQT({(a, b): c for (a, b), c in check.terms() if b <= order})
    return {
        "product": prod,
        "expansion": expansion,
        "series": series,
        "order": order,
        "finite_ok": prod == expansion,
        "inverse_ok": truncated == ONE,
    }


def q_bracket_shift(i: int) -> RatFn:
    """[x - i]_q = (1 - q^-i t)/(1 - q)."""
    return (1 - q_power(-i) * RatFn(T)) / RatFn(1 - Q)


def q_binom_x(n: int) -> RatFn:
    """[x choose n]_q = [x]_q [x-1]_q ... [x-n+1]_q / [n]_q!."""
    val = RatFn(1)
    for i in range(n):
        val = val * q_bracket_shift(i)
    return val / RatFn(q_factorial(n))


def _binom_expansion_sum(n: int) -> RatFn:
    s = RatFn(0)
    for i in range(n + 1):
        s = s + RatFn(gauss_binomial(n, i) * PolyQT.monomial(i * (i - 1) // 2, (n - i), (-1) ** (n + i)))
    return s


def gauss_expansion_check(n: int, corrected: bool = False) -> IdentityResult:
    """Expansion of [x choose n]_q in powers of q^((n-i)x), as printed or repaired.

    The repaired variant swaps the printed (1 - q)^n prefactor for (1 - q)^-n.
    """
    lhs = q_binom_x(n)
    e = -n if corrected else n
    pref = RatFn(1 - Q) ** e * q_power(-(n * (n - 1) // 2)) / RatFn(q_factorial(n))
    rhs = pref * _binom_expansion_sum(n)
    return exact_result(
        "eq-q-binom-1",
        {"n": n, "reading": "corrected-prefactor" if corrected else "printed"},
        lhs,
        rhs,
        mode="exact-qt",
        tier=DIAGNOSTIC,
        printed_form=not corrected,
        repair_candidate=corrected,
    )
