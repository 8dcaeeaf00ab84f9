import pytest

from qfermion import bridge
from qfermion.exact import Q, RatFn, parse_ratfn, rf_equal
from qfermion.results import DIAGNOSTIC, EXACT_FAIL, EXACT_PASS, NO_CONVERGENCE, PADIC_FAIL, PADIC_PASS


@pytest.mark.parametrize("n", range(6))
def test_stirling_bridges(n):
    assert all(r.status == EXACT_PASS for r in bridge.cor23_check(n))
    assert bridge.thm22_check(n).status == EXACT_PASS
    assert bridge.thm21_check(n).status == EXACT_PASS
    assert all(r.status == EXACT_PASS for r in bridge.cor24_thm25_check(n))
    for k in range(n + 1):
        assert bridge.ea_id_check(n, k).status == EXACT_PASS


def test_composition_sum_skipped_above_cap():
    assert {r.id for r in bridge.cor24_thm25_check(3, multi_index_max=2)} == {"cor-2.4"}


def test_product_kind_power_sum_fails_at_one():
    res = {(r.id, r.params["reading"]): r for r in bridge.thm34_thm35_check(1, 1)}
    printed = res[("thm-3.4", "printed")]
    assert printed.status == EXACT_FAIL and printed.tier == DIAGNOSTIC
    # lhs [x], rhs -[x]: the residual is 2[x]
    assert printed.residual == "(2*t-2)/(q-1)"
    assert printed.details["ratio_rhs_over_lhs"] == "-1"
    assert all(r.tier == DIAGNOSTIC for r in res.values())


def test_binomial_integral_prefactor():
    for n in range(1, 4):
        bad = bridge.q_binom_int_check(n)
        assert bad.status == EXACT_FAIL and bad.printed_form
        ratio = parse_ratfn(bad.details["ratio_rhs_over_lhs"])
        assert rf_equal(ratio, RatFn(1 - Q) ** (2 * n))
        good = bridge.q_binom_int_check(n, "repaired")
        assert good.status == EXACT_PASS and good.repair_candidate


def test_quadruple_series_statuses():
    assert bridge.thm33_check(1, 1, 3, 4, 10).status == PADIC_PASS
    top = bridge.thm33_check(1, 2, 3, 4, 10)
    assert top.status == PADIC_FAIL and top.details["weight"] == "0/0 cancelled to 1"
    mid = bridge.thm33_check(3, 2, 3, 4, 10)
    assert mid.status == NO_CONVERGENCE and mid.tier == DIAGNOSTIC
    assert "negative" in mid.note


@pytest.mark.parametrize("n,i", [(2, 1), (2, 2), (3, 1), (2, 3)])
def test_quadruple_series_stable_in_cutoff(n, i):
    a = bridge.thm33_check(n, i, 3, 4, 10, m_cap=16)
    b = bridge.thm33_check(n, i, 3, 4, 10, m_cap=32)
    assert (a.status, a.valuation) == (b.status, b.valuation)


def test_quadruple_series_index_range():
    with pytest.raises(ValueError):
        bridge.thm33_check(2, 4, 3, 4, 10)
