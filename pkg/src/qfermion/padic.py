"""Capped-precision p-adic numbers and the fermionic partial-sum oracle.

Every oracle value is computed as an exact rational first and embedded into
Q_p only at the end, so the only precision loss is the embedding itself.
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .results import padic_result

Number = Union[int, Fraction]

GUARD = 2


class BadQ(ValueError):
    """q0 is not in 1 + p Z_p."""


class PDenominator(ArithmeticError):
    """Integrand value with p in its denominator."""


class NoConvergence(ArithmeticError):
    pass


_max_terms_override: ContextVar[int | None] = ContextVar("max_terms_override", default=None)


def max_terms_default() -> int:
    """Series length cap: an active max_terms_limit, else QEULER_MAX_TERMS, else 10000."""
    v = _max_terms_override.get()
    if v is not None:
        return v
    return int(os.environ.get("QEULER_MAX_TERMS", "10000"))


@contextmanager
def max_terms_limit(n: int):
    token = _max_terms_override.set(n)
    try:
        yield
    finally:
        _max_terms_override.reset(token)


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rational(r: Number, p: int) -> float:
    r = Fraction(r)
    if r == 0:
        return float("inf")
    return vp(r.numerator, p) - vp(r.denominator, p)


def check_q(q0: Number, p: int) -> Fraction:
    q0 = Fraction(q0)
    if q0 == 1 or vp_rational(q0 - 1, p) < 1:
        raise BadQ(f"need |1 - q|_p < 1, got q = {q0} at p = {p}")
    return q0


@dataclass(frozen=True)
class PadicNum:
    """p^val * unit with unit known modulo p^prec.

    ``prec`` counts significant digits; ``prec == 0`` is a zero known modulo
    p^val. Arithmetic keeps the smaller absolute precision of its operands.
    """

    p: int
    val: int
    unit: int
    prec: int

    @property
    def abs_prec(self) -> int:
        return self.val + self.prec

    def is_zero(self) -> bool:
        return self.prec == 0

    @classmethod
    def zero(cls, p: int, abs_prec: int) -> "PadicNum":
        return cls(p, abs_prec, 0, 0)

    def _check(self, other: "PadicNum"):
        if self.p != other.p:
            raise ValueError("mixed primes")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = embed_abs(other, self.p, self.abs_prec)
        self._check(other)
        p = self.p
        A = min(self.abs_prec, other.abs_prec)
        v = min(self.val, other.val)
        if v >= A:
            return PadicNum.zero(p, A)
        width = A - v
        s = (self.unit * p ** (self.val - v) + other.unit * p ** (other.val - v)) % p**width
        if s == 0:
            return PadicNum.zero(p, A)
        k = vp(s, p)
        return PadicNum(p, v + k, s // p**k, width - k)

    __radd__ = __add__

    def __neg__(self):
        return PadicNum(self.p, self.val, (-self.unit) % self.p**self.prec if self.prec else 0, self.prec)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-Fraction(other))
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = padic_embed(other, self.p, self.prec)
        self._check(other)
        prec = min(self.prec, other.prec)
        if prec == 0:
            return PadicNum.zero(self.p, self.val + other.val)
        return PadicNum(self.p, self.val + other.val, (self.unit * other.unit) % self.p**prec, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = padic_embed(other, self.p, self.prec)
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("p-adic division by an indistinguishable-from-zero value")
        prec = min(self.prec, other.prec)
        if prec == 0:
            return PadicNum.zero(self.p, self.val - other.val)
        mod = self.p**prec
        return PadicNum(self.p, self.val - other.val, self.unit * pow(other.unit, -1, mod) % mod, prec)

    def truncate(self, abs_prec: int) -> "PadicNum":
        """Forget digits at and beyond p^abs_prec."""
        if abs_prec >= self.abs_prec:
            return self
        if abs_prec <= self.val:
            return PadicNum.zero(self.p, abs_prec)
        prec = abs_prec - self.val
        return PadicNum(self.p, self.val, self.unit % self.p**prec, prec)

    def agreement(self, other: "PadicNum") -> int:
        """Valuation of self - other, capped at the available precision."""
        return (self - other).val

    def residue(self) -> int:
        """Integer r with self = r mod p^abs_prec (requires val >= 0)."""
        if self.val < 0:
            raise ValueError("not a p-adic integer")
        return (self.unit * self.p**self.val) % self.p**self.abs_prec

    def __str__(self):
        if self.is_zero():
            return f"O({self.p}^{self.val})"
        return f"{self.unit}*{self.p}^{self.val} + O({self.p}^{self.abs_prec})"


def padic_embed(r: Number, p: int, M: int) -> PadicNum:
    """Image of a rational in Q_p with M significant digits."""
    r = Fraction(r)
    if r == 0:
        return PadicNum.zero(p, M)
    v = vp(r.numerator, p) - vp(r.denominator, p)
    num = r.numerator // p ** max(v, 0)
    den = r.denominator // p ** max(-v, 0)
    if M <= 0:
        return PadicNum.zero(p, v)
    mod = p**M
    return PadicNum(p, v, num * pow(den, -1, mod) % mod, M)


def embed_abs(r: Number, p: int, abs_prec: int) -> PadicNum:
    """Embed a rational known to absolute precision abs_prec."""
    r = Fraction(r)
    if r == 0:
        return PadicNum.zero(p, abs_prec)
    v = int(vp_rational(r, p))
    if abs_prec <= v:
        return PadicNum.zero(p, abs_prec)
    return padic_embed(r, p, abs_prec - v)


def _require_p_free(value: Fraction, p: int, x) -> Fraction:
    value = Fraction(value)
    if value.denominator % p == 0:
        raise PDenominator(f"f({x}) = {value} has p = {p} in its denominator")
    return value


def fermionic_sum(f: Callable[[int], Number], p: int, N: int) -> Fraction:
    """Exact level-N partial sum sum_{x < p^N} (-1)^x f(x)."""
    if N < 1:
        raise ValueError("level N must be >= 1")
    total = Fraction(0)
    for x in range(p**N):
        v = _require_p_free(f(x), p, x)
        total += -v if x & 1 else v
    return total


def fermionic_oracle(f: Callable[[int], Number], p: int, N: int, M: int) -> PadicNum:
    return embed_abs(fermionic_sum(f, p, N), p, M)


def fermionic_sum_q(f: Callable[[int], Number], q0: Number, p: int, N: int) -> Fraction:
    """(1+q)/(1+q^(p^N)) * sum_{x < p^N} f(x) (-q)^x, exactly."""
    q0 = Fraction(q0)
    P = p**N
    total = Fraction(0)
    w = Fraction(1)
    for x in range(P):
        total += _require_p_free(f(x), p, x) * w
        w *= -q0
    return (1 + q0) / (1 + q0**P) * total


def fermionic_oracle_q(f: Callable[[int], Number], q0: Number, p: int, N: int, M: int) -> PadicNum:
    return embed_abs(fermionic_sum_q(f, q0, p, N), p, M)


def series_sum(
    term: Callable[[int], PadicNum],
    val_bound: Callable[[int], int],
    M: int,
    max_terms: int | None = None,
    p: int | None = None,
) -> PadicNum:
    """Sum term(0) + term(1) + ... until val_bound(m) >= M + GUARD.

    val_bound(m) must bound the valuation of every term from index m on.
    """
    max_terms = max_terms_default() if max_terms is None else max_terms
    total = None
    m = 0
    while val_bound(m) < M + GUARD:
        if m >= max_terms:
            raise NoConvergence(f"term bound still {val_bound(m)} < {M + GUARD} after {m} terms")
        t = term(m)
        total = t if total is None else total + t
        m += 1
    if total is None:
        if p is None:
            raise ValueError("empty series needs p")
        return PadicNum.zero(p, M)
    return total.truncate(M)


def shift_identity_check(n_shift: int, f: Callable[[int], Number], p: int, N: int, M: int):
    """Level-N partial sums of f(x + n) against (-1)^n I(f) + 2 sum (-1)^(n-l-1) f(l)."""
    lhs = fermionic_sum(lambda x: f(x + n_shift), p, N)
    s = fermionic_sum(f, p, N)
    rhs = (-1) ** n_shift * s + 2 * sum((-1) ** (n_shift - l - 1) * Fraction(f(l)) for l in range(n_shift))
    agree = embed_abs(lhs, p, M).agreement(embed_abs(rhs, p, M))
    return padic_result(
        "eq-de3", {"n_shift": n_shift, "p": p, "N": N, "M": M}, agree, min(N - 1, M)
    )
