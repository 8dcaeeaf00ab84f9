import pytest

from qfermion.exact import Q, PolyQT, RatFn
from qfermion.qcomb import (
    binom_general, gauss_binomial, gauss_binomial_compositions, gauss_expansion_check,
    q_factorial, q_int, q_pochhammer,
)
from qfermion.results import DIAGNOSTIC, EXACT_FAIL, EXACT_PASS


def test_q_int_and_factorial():
    assert q_int(0).is_zero()
    assert q_int(3) == 1 + Q + Q**2
    assert q_factorial(0) == 1
    assert q_factorial(3) == (1 + Q) * (1 + Q + Q**2)


def test_gauss_binomial_values():
    assert gauss_binomial(4, 2) == PolyQT({(0, 0): 1, (1, 0): 1, (2, 0): 2, (3, 0): 1, (4, 0): 1})
    assert gauss_binomial(5, 2).eval(1) == 10
    assert gauss_binomial(3, 5).is_zero()
    assert gauss_binomial(3, -1).is_zero()


@pytest.mark.parametrize("n", range(9))
def test_gauss_binomial_by_compositions(n):
    for k in range(n + 1):
        assert gauss_binomial_compositions(n, k) == gauss_binomial(n, k)


def test_gauss_pascal_rule():
    for n in range(1, 9):
        for k in range(1, n):
            rhs = gauss_binomial(n - 1, k - 1) + PolyQT.monomial(k, 0) * gauss_binomial(n - 1, k)
            assert gauss_binomial(n, k) == rhs


def test_binom_general():
    assert binom_general(5, 2) == 10
    assert binom_general(-1, 0) == 1
    assert binom_general(-3, 2) == 6
    assert binom_general(1, 2) == 0
    assert binom_general(-1, 3) == -1
    for m in range(1, 6):
        assert binom_general(m - 1, m) == 0


def test_q_pochhammer_both_forms():
    for n in range(7):
        rec = q_pochhammer(n)
        assert rec["finite_ok"] and rec["inverse_ok"]


def test_expansion_as_printed_fails_with_square_factor():
    res = gauss_expansion_check(1)
    assert res.tier == DIAGNOSTIC and res.status == EXACT_FAIL
    assert RatFn(1 - Q) ** 2 == RatFn(PolyQT({(0, 0): 1, (1, 0): -2, (2, 0): 1}))
    assert res.details["ratio_rhs_over_lhs"] == "1-2*q+q^2"


def test_expansion_with_inverse_prefactor_passes():
    for n in range(7):
        assert gauss_expansion_check(n, corrected=True).status == EXACT_PASS
