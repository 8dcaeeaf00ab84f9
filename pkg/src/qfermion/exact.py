"""Exact value types: rationals, sparse polynomials in (q, t), rational functions.

``t`` always stands for ``q**x``, so ``[x]_q = (1 - t)/(1 - q)`` becomes an
element of Q(q, t) and identities in ``x`` become decidable equalities.

Polynomial arithmetic and gcd run on sympy's sparse ring over QQ; the
classes here own normalization, ordering and the string formats.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Union

from sympy import QQ
from sympy.polys.rings import ring

Rational = Fraction

_R, _Q, _T = ring("q,t", QQ)

Number = Union[int, Fraction]


class ZeroDenominator(ZeroDivisionError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class PoleError(ArithmeticError):
    """Denominator vanishes at the evaluation point."""


class PoleAtOne(PoleError):
    pass


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _key(mono):
    a, b = mono
    return (a + b, -a, b)  # graded, q before t: 1, q, t, q^2, q*t, t^2, ...


class PolyQT:
    """Sparse polynomial in q and t with rational coefficients."""

    __slots__ = ("_p",)

    def __init__(self, value=0):
        if isinstance(value, PolyQT):
            self._p = value._p
        elif isinstance(value, dict):
            p = _R.zero
            for (a, b), c in value.items():
                if a < 0 or b < 0:
                    raise ValueError("negative exponent in PolyQT")
                if c:
                    p += _R({(a, b): QQ(Fraction(c).numerator, Fraction(c).denominator)})
            self._p = p
        elif isinstance(value, (int, Fraction)):
            v = Fraction(value)
            self._p = _R(QQ(v.numerator, v.denominator))
        elif hasattr(value, "ring") and value.ring == _R:
            self._p = value
        else:
            raise TypeError(f"cannot build PolyQT from {type(value).__name__}")

    @classmethod
    def _wrap(cls, p) -> "PolyQT":
        obj = cls.__new__(cls)
        obj._p = p
        return obj

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, c: Number = 1) -> "PolyQT":
        return cls({(a, b): c})

    # ---- structure -------------------------------------------------

    def terms(self) -> list[tuple[tuple[int, int], Fraction]]:
        """Nonzero terms in canonical (ascending graded) order."""
        items = [((int(m[0]), int(m[1])), _frac(c)) for m, c in self._p.items()]
        items.sort(key=lambda it: _key(it[0]))
        return items

    def coeff(self, a: int, b: int = 0) -> Fraction:
        return _frac(self._p.get((a, b), QQ(0)))

    def is_zero(self) -> bool:
        return not self._p

    def is_constant(self) -> bool:
        return self._p.is_ground

    def degree_q(self) -> int:
        return max((m[0] for m in self._p.keys()), default=-1)

    def degree_t(self) -> int:
        return max((m[1] for m in self._p.keys()), default=-1)

    def min_exponents(self) -> tuple[int, int]:
        keys = list(self._p.keys())
        if not keys:
            return (0, 0)
        return (min(m[0] for m in keys), min(m[1] for m in keys))

    def leading(self) -> tuple[tuple[int, int], Fraction]:
        """Greatest term in graded order (highest total degree, q first)."""
        if self.is_zero():
            return ((0, 0), Fraction(0))
        m, c = max(self._p.items(), key=lambda it: (it[0][0] + it[0][1], it[0][0]))
        return (int(m[0]), int(m[1])), _frac(c)

    def free_of_t(self) -> bool:
        return all(m[1] == 0 for m in self._p.keys())

    # ---- arithmetic ------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, PolyQT):
            return other._p
        if isinstance(other, (int, Fraction)):
            v = Fraction(other)
            return _R(QQ(v.numerator, v.denominator))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else PolyQT._wrap(self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else PolyQT._wrap(self._p - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else PolyQT._wrap(o - self._p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else PolyQT._wrap(self._p * o)

    __rmul__ = __mul__

    def __neg__(self):
        return PolyQT._wrap(-self._p)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial; use RatFn")
        return PolyQT._wrap(self._p**n)

    def exquo(self, other: "PolyQT") -> "PolyQT":
        """Exact division; raises ArithmeticError on a nonzero remainder."""
        quo, rem = self._p.div(other._p)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        return PolyQT._wrap(quo)

    def divides(self, other: "PolyQT") -> bool:
        return not other._p.rem(self._p)

    def gcd(self, other: "PolyQT") -> "PolyQT":
        return PolyQT._wrap(self._p.gcd(other._p))

    def shift(self, a: int, b: int) -> "PolyQT":
        """Multiply by q**a * t**b (negative shifts must stay in range)."""
        return PolyQT._wrap(_R({(m[0] + a, m[1] + b): c for m, c in self._p.items()}))

    def subs_monomial(self, qa: int, qb: int, ta: int, tb: int) -> tuple["PolyQT", int, int]:
        """Substitute q -> q^qa t^qb, t -> q^ta t^tb.

        Returns (p, sq, st) with the substituted value equal to p * q^-sq * t^-st,
        p having nonnegative exponents.
        """
        mapped = {}
        for m, c in self._p.items():
            e = (qa * m[0] + ta * m[1], qb * m[0] + tb * m[1])
            mapped[e] = mapped.get(e, 0) + c
        sq = -min((e[0] for e in mapped), default=0)
        st = -min((e[1] for e in mapped), default=0)
        sq, st = max(sq, 0), max(st, 0)
        p = _R({(e[0] + sq, e[1] + st): c for e, c in mapped.items() if c})
        return PolyQT._wrap(p), sq, st

    def diff_t(self) -> "PolyQT":
        return PolyQT._wrap(self._p.diff(_T))

    def eval(self, q0: Number, t0: Number = 1) -> Fraction:
        q0, t0 = Fraction(q0), Fraction(t0)
        total = Fraction(0)
        for (a, b), c in self.terms():
            total += c * q0**a * t0**b
        return total

    def eval_t(self, t0: Number) -> "PolyQT":
        """Specialise t to a rational, leaving a polynomial in q."""
        t0 = QQ(Fraction(t0).numerator, Fraction(t0).denominator)
        out = {}
        for m, c in self._p.items():
            out[(m[0], 0)] = out.get((m[0], 0), 0) + c * t0 ** m[1]
        return PolyQT._wrap(_R({k: v for k, v in out.items() if v}))

    def eval_q(self, q0: Number) -> "PolyQT":
        """Specialise q to a rational, leaving a polynomial in t."""
        q0 = QQ(Fraction(q0).numerator, Fraction(q0).denominator)
        out = {}
        for m, c in self._p.items():
            out[(0, m[1])] = out.get((0, m[1]), 0) + c * q0 ** m[0]
        return PolyQT._wrap(_R({k: v for k, v in out.items() if v}))

    def primitive(self) -> tuple[Fraction, "PolyQT"]:
        """Split into (c, P) with P integral, primitive, positive leading coefficient."""
        if self.is_zero():
            return Fraction(0), PolyQT(0)
        coeffs = [c for _, c in self.terms()]
        den = reduce(lcm, (c.denominator for c in coeffs), 1)
        num = reduce(gcd, (c.numerator for c in coeffs), 0)
        c = Fraction(abs(num), den)
        if self.leading()[1] < 0:
            c = -c
        return c, PolyQT._wrap(self._p * QQ(c.denominator, c.numerator))

    # ---- comparison / formatting ----------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._p == o

    def __hash__(self):
        return hash(tuple(self.terms()))

    def __bool__(self):
        return bool(self._p)

    def __repr__(self):
        return f"PolyQT({pretty_poly(self)!r})"

    def __str__(self):
        return pretty_poly(self)


Q = PolyQT.monomial(1, 0)
T = PolyQT.monomial(0, 1)
ONE = PolyQT(1)


def _coef_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mono_str(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("q" if a == 1 else f"q^{a}")
    if b:
        parts.append("t" if b == 1 else f"t^{b}")
    return "*".join(parts)


def format_poly(p: PolyQT) -> str:
    """Interchange form: every term is ``coeff[*q^a][*t^b]``, joined by '+'."""
    if p.is_zero():
        return "0"
    out = []
    for (a, b), c in p.terms():
        s = _coef_str(c)
        if a:
            s += f"*q^{a}"
        if b:
            s += f"*t^{b}"
        out.append(s)
    return "+".join(out)


def pretty_poly(p: PolyQT) -> str:
    if p.is_zero():
        return "0"
    terms = p.terms()
    if terms[0][1] < 0:
        pos = next((i for i, (_, c) in enumerate(terms) if c > 0), None)
        if pos is not None:
            terms.insert(0, terms.pop(pos))
    out = ""
    for i, ((a, b), c) in enumerate(terms):
        mono = _mono_str(a, b)
        mag = abs(c)
        if not mono:
            body = _coef_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coef_str(mag)}*{mono}"
        if c < 0:
            out += "-" + body
        else:
            out += ("+" if i else "") + body
    return out


class RatFn:
    """Normalized quotient num/den of PolyQT values.

    num and den are coprime, den is integral and primitive with a positive
    leading coefficient, zero is 0/1. Instances are immutable.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        n = num if isinstance(num, PolyQT) else PolyQT(num)
        d = den if isinstance(den, PolyQT) else PolyQT(den)
        self.num, self.den = _normalize(n, d)

    @classmethod
    def _raw(cls, num: PolyQT, den: PolyQT) -> "RatFn":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    # ---- arithmetic ------------------------------------------------

    @staticmethod
    def _coerce(other) -> "RatFn":
        if isinstance(other, RatFn):
            return other
        if isinstance(other, (int, Fraction, PolyQT)):
            return RatFn(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.den == self.den:
            return RatFn(self.num + o.num, self.den)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatFn(0)
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n >= 0:
            return RatFn._raw(self.num**n, self.den**n) if n else RatFn(1)
        if self.is_zero():
            raise DivisionByZero("negative power of zero")
        return RatFn(self.den ** (-n), self.num ** (-n))

    # ---- predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def free_of_t(self) -> bool:
        return self.num.free_of_t() and self.den.free_of_t()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return rf_equal(self, o)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFn({pretty(self)!r})"

    def __str__(self):
        return pretty(self)

    # ---- substitutions ------------------------------------------------

    def subs_monomial(self, qa: int, qb: int, ta: int, tb: int) -> "RatFn":
        n, nsq, nst = self.num.subs_monomial(qa, qb, ta, tb)
        d, dsq, dst = self.den.subs_monomial(qa, qb, ta, tb)
        # value = n q^-nsq t^-nst / (d q^-dsq t^-dst)
        sq, st = dsq - nsq, dst - nst
        n = n.shift(max(sq, 0), max(st, 0))
        d = d.shift(max(-sq, 0), max(-st, 0))
        return RatFn(n, d)

    def at_x(self, x: int) -> "RatFn":
        """Specialise t = q**x for an integer x."""
        return self.subs_monomial(1, 0, x, 0)

    def reflect_x(self) -> "RatFn":
        """t -> q/t, i.e. x -> 1 - x (swaps [x]_q and [1-x]_q)."""
        return self.subs_monomial(1, 0, 1, -1)

    def invert_q(self) -> "RatFn":
        """q -> 1/q with t untouched."""
        return self.subs_monomial(-1, 0, 0, 1)

    def eval(self, q0: Number, t0: Number = 1) -> Fraction:
        return rf_eval(self, q0, t0)

    def eval_q(self, q0: Number) -> "RatFn":
        """Specialise q only; a denominator vanishing identically is a pole."""
        d = self.den.eval_q(q0)
        if d.is_zero():
            raise PoleError(f"pole at q={q0}")
        return RatFn(self.num.eval_q(q0), d)


def _normalize(num: PolyQT, den: PolyQT) -> tuple[PolyQT, PolyQT]:
    if den.is_zero():
        raise ZeroDenominator("rational function with zero denominator")
    if num.is_zero():
        return PolyQT(0), PolyQT(1)
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_constant():
            num, den = num.exquo(g), den.exquo(g)
    c, den = den.primitive()
    return PolyQT._wrap(num._p * QQ(c.denominator, c.numerator)), den


def rf_normalize(num, den) -> RatFn:
    return RatFn(num, den)


def rf_equal(a: RatFn, b: RatFn) -> bool:
    """Decide a == b by cross-multiplication."""
    return a.num * b.den == b.num * a.den


def rf_eval(a: RatFn, q0: Number, t0: Number = 1) -> Fraction:
    d = a.den.eval(q0, t0)
    if d == 0:
        raise PoleError(f"pole at q={q0}, t={t0}")
    return a.num.eval(q0, t0) / d


def rf_limit_q1(a: RatFn) -> Fraction:
    """Limit q -> 1 of a rational function in q alone."""
    if not a.free_of_t():
        raise ValueError("specialise t (e.g. RatFn.at_x) before taking q -> 1")
    # normalized: num and den coprime, so a vanishing den means a genuine pole
    d = a.den.eval(1)
    if d == 0:
        raise PoleAtOne("infinite limit at q = 1")
    return a.num.eval(1) / d


def rf_dt(a: RatFn) -> RatFn:
    """Partial derivative with respect to t."""
    return RatFn(a.num.diff_t() * a.den - a.num * a.den.diff_t(), a.den * a.den)


def rf_arith(a: RatFn, b: RatFn, op: str) -> RatFn:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---- convenience constructors ------------------------------------------


def q_power(a: int) -> RatFn:
    """q**a for any integer a."""
    return RatFn(PolyQT.monomial(a, 0)) if a >= 0 else RatFn(1, PolyQT.monomial(-a, 0))


def t_power(b: int) -> RatFn:
    return RatFn(PolyQT.monomial(0, b)) if b >= 0 else RatFn(1, PolyQT.monomial(0, -b))


def qx_bracket() -> RatFn:
    """[x]_q = (1 - t)/(1 - q)."""
    return RatFn(1 - T, 1 - Q)


def q1mx_bracket() -> RatFn:
    """[1 - x]_q = (t - q)/(t(1 - q))."""
    return RatFn(T - Q, T * (1 - Q))


# ---- pretty printing ----------------------------------------------------


def _factor_den(den: PolyQT) -> list[tuple[PolyQT, int]]:
    """Peel monomial, (q-1) and (1+q^l) factors off den, largest l first."""
    out = []
    sq, st = den.min_exponents()
    if sq or st:
        out.append((PolyQT.monomial(sq, st), 1))
        den = den.exquo(PolyQT.monomial(sq, st))
    rest = []
    qm1 = Q - 1
    e = 0
    while den.degree_q() > 0 and qm1.divides(den):
        den = den.exquo(qm1)
        e += 1
    if e:
        rest.append((1, qm1, e))
    for l in range(den.degree_q(), 0, -1):
        f = 1 + PolyQT.monomial(l, 0)
        e = 0
        while den.degree_q() >= l and f.divides(den):
            den = den.exquo(f)
            e += 1
        if e:
            rest.append((l + 1, f, e))
    rest.sort(key=lambda it: it[0])
    out.extend((f, e) for _, f, e in rest)
    c, den = den.primitive()
    if not (den == 1):
        out.append((den, 1))
    if c != 1:
        out.insert(0, (PolyQT(c), 1))
    return out


def pretty(a: RatFn | PolyQT) -> str:
    """Human form, e.g. ``(q-1)/((1+q)*(1+q^2))``."""
    if isinstance(a, PolyQT):
        return pretty_poly(a)
    num = pretty_poly(a.num)
    if a.den == 1:
        return num
    if len(a.num.terms()) > 1 or "/" in num:
        num = f"({num})"
    parts = []
    for f, e in _factor_den(a.den):
        s = pretty_poly(f)
        if len(f.terms()) > 1:
            s = f"({s})"
        if e > 1:
            s += f"^{e}"
        parts.append(s)
    den = "*".join(parts)
    if len(parts) > 1 or (len(a.den.terms()) == 1 and "*" in den):
        den = f"({den})"
    return f"{num}/{den}"


def format_ratfn(a: RatFn) -> str:
    """Interchange form ``(expr)/(expr)``."""
    return f"({format_poly(a.num)})/({format_poly(a.den)})"


_TERM_RE = re.compile(
    r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?)?\s*((?:[qt](?:\^\d+)?\s*\*?\s*)*)"
)


def parse_poly(s: str) -> PolyQT:
    """Parse the interchange grammar (also accepts '-' joins and bare monomials)."""
    s = s.replace(" ", "")
    if s in ("", "0"):
        return PolyQT(0)
    s = s.replace("+-", "-")
    terms = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        sign, coeff, mono = m.groups()
        if not coeff and not mono:
            raise ValueError(f"empty term in {s!r}")
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        a = b = 0
        for var, exp in re.findall(r"([qt])(?:\^(\d+))?", mono):
            e = int(exp) if exp else 1
            if var == "q":
                a += e
            else:
                b += e
        terms[(a, b)] = terms.get((a, b), 0) + c
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"unexpected {s[pos]!r} in {s!r}")
        if pos < len(s) and s[pos] == "+":
            pos += 1
    return PolyQT(terms)


def parse_ratfn(s: str) -> RatFn:
    s = s.strip()
    m = re.fullmatch(r"\((.*)\)/\((.*)\)", s)
    if m:
        return RatFn(parse_poly(m.group(1)), parse_poly(m.group(2)))
    return RatFn(parse_poly(s))


def rsum(items: Iterable) -> RatFn:
    """Sum of RatFn values over a running lcm of denominators, normalized once."""
    num, den = PolyQT(0), ONE
    for it in items:
        it = RatFn(it) if not isinstance(it, RatFn) else it
        if it.is_zero():
            continue
        if it.den == den:
            num = num + it.num
            continue
        g = den.gcd(it.den)
        a, b = den.exquo(g), it.den.exquo(g)
        num = num * b + it.num * a
        den = den * b
    return RatFn(num, den)
