from fractions import Fraction

import pytest

from qfermion import checks
from qfermion.results import CORE, DIAGNOSTIC, EXACT_FAIL, EXACT_PASS, PADIC_FAIL, PADIC_PASS


def test_max_level():
    assert checks.max_level(3) == 7
    assert checks.max_level(5) == 4
    assert checks.max_level(5000) == 1


def test_bracket_value():
    assert checks.bracket_value(3, Fraction(4)) == 21


@pytest.mark.parametrize("n", range(4))
def test_oracle_level_agreement(n):
    for N in range(2, 6):
        r = checks.iqf_check(n, 3, 4, N, 15)
        assert r.status == PADIC_PASS and r.valuation >= N - 1


def test_worked_partial_sum():
    r = checks.iqf_worked_value()
    assert r.details["partial_sum"] == "364" and r.status == PADIC_PASS


def test_weighted_mass():
    assert all(checks.iq_constant_check(3, 4, N).status == EXACT_PASS for N in (1, 2))


def test_euler_number_laws():
    for n in range(6):
        assert checks.shift_check(n).status == EXACT_PASS
        assert all(r.status == EXACT_PASS for r in checks.closed_form_check(n))
        if n:
            assert checks.recurrence_check(n).status == EXACT_PASS
    assert checks.shift_oracle_check(2, 1, 3, 4, 5, 15).status == PADIC_PASS


def test_generating_function_forms():
    res = checks.genfun_checks(3, 3, 4, 10)
    forms = {}
    for r in res:
        forms.setdefault(r.params["form"], []).append(r)
    assert all(r.status == EXACT_PASS and r.tier == CORE for r in forms["cauchy-product"] + forms["exp-sum-abel"])
    ferm = forms["exp-sum-fermionic"]
    assert len(ferm) == 6 and all(r.tier == DIAGNOSTIC for r in ferm)
    assert all(r.status == PADIC_FAIL for r in ferm)


def test_poch_expansions():
    for n in range(5):
        assert all(r.status == EXACT_PASS for r in checks.qbi_two_check(n))


@pytest.mark.parametrize("h", [0, 1, 2])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_higher_order_forms(h, r):
    for n in range(3):
        assert all(x.status == EXACT_PASS for x in checks.hoq_checks(n, h, r))
        assert checks.ho_ex_check(n, h, r).status == EXACT_PASS
        assert checks.ho_ex2_check(n, h, r).status == EXACT_PASS
        assert all(x.status == EXACT_PASS for x in checks.ho_ex3_checks(n, h, r))


def test_higher_order_oracle():
    assert checks.hoq_oracle_check(2, 1, 1, 1, 3, 4, 4, 15).status == PADIC_PASS


def test_order_zero_readings():
    for r in (1, 2):
        res = checks.h0_checks(2, r)
        q = [x for x in res if x.params["reading"] == "q-binomial"]
        cl = [x for x in res if x.params["reading"] == "classical"]
        assert all(x.status == EXACT_PASS and x.tier == CORE for x in q)
        assert all(x.tier == DIAGNOSTIC for x in cl)
        assert all(x.status == (EXACT_PASS if r == 1 else EXACT_FAIL) for x in cl)
