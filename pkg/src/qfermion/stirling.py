"""q-Stirling numbers.

Two unrelated families share the name:

* connection coefficients ``s1``/``s2`` between powers of ``y = [x]_q`` and the
  q-falling factorial ``prod_{i<k} (y - [i]_q)``;
* product coefficients ``S1``/``S2`` of ``prod_{k=1..n} (1 + [k]_q z)`` and of its
  reciprocal power series.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exact import ONE, PolyQT, RatFn, T, q_power, qx_bracket
from .qcomb import gauss_binomial, q_bracket_shift, q_factorial, q_int
from .results import IdentityResult, exact_result


@dataclass(frozen=True)
class StirlingRow:
    kind: str
    index: int
    coeffs: tuple[PolyQT, ...]

    def __getitem__(self, j: int) -> PolyQT:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return PolyQT(0)

    def __len__(self):
        return len(self.coeffs)


def _poly_mul(a: list[PolyQT], b: list[PolyQT]) -> list[PolyQT]:
    out = [PolyQT(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


@lru_cache(maxsize=None)
def _falling(k: int) -> tuple[PolyQT, ...]:
    # coefficients (in y) of prod_{i<k} (y - [i]_q), low degree first
    row = [ONE]
    for i in range(k):
        row = _poly_mul(row, [-q_int(i), ONE])
    return tuple(row)


def s1_row(k: int) -> StirlingRow:
    if k < 0:
        raise ValueError("k must be >= 0")
    return StirlingRow("s1", k, _falling(k))


@lru_cache(maxsize=None)
def s2_row(n: int) -> StirlingRow:
    """Solve y^n = sum_k s2(n,k) prod_{i<k}(y - [i]_q) top-down."""
    if n < 0:
        raise ValueError("n must be >= 0")
    rem = [PolyQT(0)] * n + [ONE]
    coeffs = [PolyQT(0)] * (n + 1)
    for k in range(n, -1, -1):
        c = rem[k]
        coeffs[k] = c
        if c.is_zero():
            continue
        basis = _falling(k)
        for j in range(k + 1):
            rem[j] = rem[j] - c * basis[j]
    assert all(r.is_zero() for r in rem)
    return StirlingRow("s2", n, tuple(coeffs))


@lru_cache(maxsize=None)
def S1_row(n: int) -> StirlingRow:
    """Coefficients of prod_{k=1..n} (1 + [k]_q z).

    n = -1 is accepted and gives the empty product, the convention the
    Norlund-type formulas need for their m = 0 term.
    """
    if n < -1:
        raise ValueError("n must be >= -1")
    row = [ONE]
    for k in range(1, n + 1):
        row = _poly_mul(row, [ONE, q_int(k)])
    return StirlingRow("S1cap", n, tuple(row))


@lru_cache(maxsize=None)
def S2_coeffs(n: int, order: int) -> StirlingRow:
    """Power-series coefficients of 1/prod_{k=1..n}(1 + [k]_q z) up to z^order."""
    a = S1_row(n).coeffs
    out = []
    for j in range(order + 1):
        # a_0 = 1, so b_j = -sum_{i>=1} a_i b_{j-i}
        acc = ONE if j == 0 else PolyQT(0)
        for i in range(1, min(j, len(a) - 1) + 1):
            acc = acc - a[i] * out[j - i]
        out.append(acc)
    return StirlingRow("S2cap", n, tuple(out))


def S2(n: int, k: int) -> PolyQT:
    return S2_coeffs(n, k)[k]


def st1_check(r: int, m: int) -> IdentityResult:
    """q^C(m,2) [r choose m]_q [m]_q! = prod_{k<m} ([r]_q - [k]_q)."""
    lhs = gauss_binomial(r, m) * q_factorial(m) * PolyQT.monomial(m * (m - 1) // 2, 0)
    rhs = ONE
    for k in range(m):
        rhs = rhs * (q_int(r) - q_int(k))
    return exact_result("eq-st1", {"r": r, "m": m}, RatFn(lhs), RatFn(rhs))


def st2_check(n: int) -> IdentityResult:
    """prod_{k<n} (z - [k]_q) = sum_k S1(n-1,k) (-1)^k z^(n-k), z carried by t."""
    lhs = ONE
    for k in range(n):
        lhs = lhs * (T - q_int(k))
    row = S1_row(n - 1)
    rhs = PolyQT(0)
    for k in range(n + 1):
        rhs = rhs + (-1) ** k * row[k] * PolyQT.monomial(0, n - k)
    return exact_result("eq-st2", {"n": n}, RatFn(lhs), RatFn(rhs), mode="exact-qt")


def st2_product_check(n: int) -> list[IdentityResult]:
    out = [st2_check(n)]
    out.extend(st1_check(n, m) for m in range(n + 1))
    return out


def falling_power(k: int) -> RatFn:
    """[x]_q!/[x-k]_q! = prod_{i<k} [x-i]_q as a function of t."""
    val = RatFn(1)
    for i in range(k):
        val = val * q_bracket_shift(i)
    return val


def first_kind_check(k: int) -> IdentityResult:
    """[x]!/[x-k]! = q^-C(k,2) sum_l s1(k,l) [x]^l, exactly in (q, t)."""
    y = qx_bracket()
    row = s1_row(k)
    rhs = RatFn(0)
    for l in range(k + 1):
        rhs = rhs + RatFn(row[l]) * y**l
    rhs = rhs * q_power(-(k * (k - 1) // 2))
    return exact_result("eq-1st-ca", {"k": k}, falling_power(k), rhs, mode="exact-qt")


def second_kind_check(n: int) -> IdentityResult:
    """[x]^n = sum_k q^C(k,2) s2(n,k) [x]!/[x-k]!, exactly in (q, t)."""
    row = s2_row(n)
    rhs = RatFn(0)
    for k in range(n + 1):
        if row[k].is_zero():
            continue
        rhs = rhs + RatFn(row[k]) * q_power(k * (k - 1) // 2) * falling_power(k)
    return exact_result("eq-2st-ca", {"n": n}, qx_bracket() ** n, rhs, mode="exact-qt")


def inverse_pair_check(size: int) -> IdentityResult:
    """The s1 and s2 triangles are mutually inverse up to index ``size``."""
    bad = []
    for n in range(size + 1):
        for m in range(n + 1):
            acc = PolyQT(0)
            for k in range(m, n + 1):
                acc = acc + s2_row(n)[k] * s1_row(k)[m]
            if not (acc == (1 if n == m else 0)):
                bad.append((n, m))
    status = "exact-pass" if not bad else "exact-fail"
    return IdentityResult(
        "eq-2st-ca", {"inverse_pair_size": size}, "exact-q", status,
        residual=None if not bad else f"entries {bad[:5]}",
    )
