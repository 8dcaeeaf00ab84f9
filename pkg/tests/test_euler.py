from fractions import Fraction

import pytest

from qfermion.euler import (
    euler_classical_oracle, euler_closed, euler_higher, euler_inverse_check, euler_norlund,
    euler_poly, euler_poly_at_integer, euler_poly_binomial, euler_poly_closed, euler_recur,
    euler_value, binomial_via_stirling_check, integral_q_power, integrate_t, le_ber_id_check,
    norlund_integral_checks, norlund_stirling_form,
)
from qfermion.exact import Q, RatFn, pretty, q_power, qx_bracket, rf_equal, rf_limit_q1
from qfermion.results import CORE, DIAGNOSTIC, EXACT_FAIL, EXACT_PASS, PADIC_PASS


def test_small_numbers_as_strings():
    assert pretty(euler_recur(0)) == "1"
    assert pretty(euler_recur(1)) == "-1/(1+q)"
    assert pretty(euler_recur(2)) == "(q-1)/((1+q)*(1+q^2))"
    assert pretty(euler_recur(3)) == "(3*q-1-q^2)/((1+q^2)*(1+q^3))"


def test_value_at_four():
    assert euler_value(3, 4) == Fraction(-1, 221)


@pytest.mark.parametrize("n", range(9))
def test_recursive_equals_closed(n):
    assert rf_equal(euler_recur(n), euler_closed(n))


def test_classical_limits():
    want = [1, Fraction(-1, 2), 0, Fraction(1, 4), 0, Fraction(-1, 2), 0, Fraction(17, 8)]
    assert [euler_classical_oracle(n) for n in range(8)] == want
    assert [rf_limit_q1(euler_recur(n)) for n in range(8)] == want


def test_polynomial_forms_agree():
    for n in range(6):
        assert rf_equal(euler_poly_closed(n), euler_poly_binomial(n))
        assert rf_equal(euler_poly(n).at_x(0), euler_recur(n))


def test_polynomial_values():
    assert pretty(euler_poly(1, 1)) == "1/(1+q)"
    assert pretty(euler_poly(2, 1)) == "(1-q)/((1+q)*(1+q^2))"


def test_power_integral():
    assert rf_equal(integral_q_power(0), RatFn(1))
    assert rf_equal(integral_q_power(2), 2 / (1 + RatFn(Q**2)))
    assert rf_equal(integral_q_power(-1), 2 * q_power(1) / (1 + RatFn(Q)))


def test_integrate_recovers_numbers():
    for n in range(5):
        assert rf_equal(integrate_t(qx_bracket() ** n), euler_recur(n))


def test_inverse_q_relation():
    for n in (1, 3):
        assert euler_inverse_check(n, 3, 4, 20).status == PADIC_PASS


def test_norlund_examples():
    assert pretty(euler_norlund(0, 1, 1)) == "1"
    assert pretty(euler_norlund(0, 2, 1)) == "1/2+1/2*q"
    assert pretty(euler_higher(0, 2, 2)) == "2/(1+q)"


def test_higher_order_one_reduces():
    for n in range(4):
        assert rf_equal(euler_higher(n, 1, 1), euler_poly(n))


def test_stirling_form_readings():
    res = {r.params["reading"]: r for r in norlund_stirling_form(2, 1, 2)}
    assert res["inside"].status == EXACT_PASS and res["inside"].tier == CORE
    assert res["literal"].status == EXACT_FAIL and res["literal"].tier == DIAGNOSTIC


def test_shift_to_integer_argument():
    for n in range(5):
        for m in range(3):
            val, res = euler_poly_at_integer(n, m)
            assert res.status == EXACT_PASS
            assert rf_equal(val, euler_poly(n, m))
            assert le_ber_id_check(n, m).status == EXACT_PASS


def test_integral_of_norlund_routes():
    res = norlund_integral_checks(1, 1, 2, 3, 4, 15, N=5)
    for r in res:
        if r.tier == CORE:
            assert r.passed, r.params
        else:
            assert r.params["reading"] == "literal" and not r.passed


def test_final_identity_readings():
    assert binomial_via_stirling_check(2, 1).status == EXACT_PASS
    cl = binomial_via_stirling_check(2, 1, "classical")
    assert cl.status == EXACT_FAIL and cl.tier == DIAGNOSTIC
    assert binomial_via_stirling_check(1, 1, "classical").status == EXACT_PASS
