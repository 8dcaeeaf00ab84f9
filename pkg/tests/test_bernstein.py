from fractions import Fraction

import pytest

from qfermion import bernstein as ber
from qfermion.euler import integrate_t
from qfermion.exact import pretty
from qfermion.results import DIAGNOSTIC, EXACT_FAIL, EXACT_PASS, PADIC_PASS


def test_frozen_basis():
    assert pretty(ber.bernstein(0, 1)) == "(q-t)/(t*(q-1))"
    assert pretty(ber.bernstein(1, 2)) == "(2*t-2*q+2*q*t-2*t^2)/(t*(q-1)^2)"


def test_integrals():
    assert pretty(integrate_t(ber.bernstein(0, 1))) == "(1+2*q)/(1+q)"
    assert integrate_t(ber.bernstein(0, 1)).eval(4) == Fraction(9, 5)
    assert pretty(integrate_t(ber.bernstein(1, 2))) == "-2/(1+q)"


def test_point_value():
    assert ber.bernstein_value(1, 2, 2, 4) == Fraction(-5, 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_basic_laws(n):
    assert ber.bernstein_partition_check(n).status == EXACT_PASS
    for k in range(n + 1):
        assert ber.bernstein_recurrence_check(k, n).status == EXACT_PASS
        assert ber.bernstein_derivative_check(k, n).status == EXACT_PASS
        assert ber.bernstein_symmetry_check(k, n).status == EXACT_PASS
        assert ber.bernstein_gen_coeff(k, n).status == EXACT_PASS


def test_classical_limit():
    for x in range(3):
        assert ber.bernstein_classical_check(1, 2, x).status == EXACT_PASS


def test_power_basis_reduction_and_boundary():
    for n in range(1, 5):
        for i in range(1, n + 1):
            assert ber.power_basis_reduction(i, n).status == EXACT_PASS
    b = ber.power_basis_boundary(2)
    assert b.tier == DIAGNOSTIC and b.status == EXACT_FAIL


def test_one_minus_x_series():
    assert ber.one_minus_x_resummed(3).status == EXACT_PASS
    assert ber.one_minus_x_expansion(2, 3, 4, 1, 15).valuation == 15


def test_expansion_identity():
    assert ber.ber_new_check(1, 2).status == EXACT_PASS
    assert ber.ber_new_series_check(1, 2, 3, 4, 2, 15).status == PADIC_PASS


def test_integral_series_routes():
    res = ber.bernstein_integral(1, 2, 3, 4, 15, N=6)
    assert {r.id for r in res} == {"thm-3.1", "thm-3.7"}
    for r in res:
        assert r.status == PADIC_PASS
        if "N" not in r.params:
            assert r.valuation == 15
    for r in ber.thm36_check(1, 2, 3, 4, 15, N=6):
        assert r.status == PADIC_PASS
