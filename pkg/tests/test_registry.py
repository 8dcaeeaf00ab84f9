import json
from fractions import Fraction

import pytest

from qfermion.registry import (
    REGISTRY, REGISTRY_IDS, Config, ConfigError, build_report, descriptor, report_json, run_suite,
    summarize,
)
from qfermion.results import CORE, DIAGNOSTIC

CHECKLIST = {
    "eq-ber-def", "eq-recu-ber", "eq-der-ber", "eq-Iqf", "eq-de3", "eq-qE-closed", "eq-qE-recur",
    "eq-qEu-inv", "eq-genfun-F", "eq-q-binom-1", "eq-q-binom-int", "eq-1st-ca", "eq-2st-ca", "thm-2.1",
    "thm-2.2", "cor-2.3", "cor-2.4", "eq-ea-id", "thm-2.5", "eq-gen-Fk", "eq-id1", "thm-3.1", "thm-3.2",
    "thm-3.3", "thm-3.4", "thm-3.5", "eq-ber-new", "thm-3.6", "thm-3.7", "eq-qbi-two", "eq-hoq",
    "eq-ho-ex", "eq-ho-ex2", "eq-ho-ex3", "eq-st1", "eq-st2", "lem-4.1", "eq-le-ber-id", "lem-4.2",
    "thm-4.3", "eq-h0", "thm-4.4-final",
}
DIAGNOSTIC_ONLY = {"eq-q-binom-1", "eq-q-binom-int", "thm-3.3", "thm-3.4", "thm-3.5"}
MIXED = {"lem-4.1", "thm-4.3", "eq-h0", "thm-4.4-final"}


def test_registry_matches_checklist():
    assert len(REGISTRY_IDS) == len(set(REGISTRY_IDS)) == 42
    assert set(REGISTRY_IDS) == CHECKLIST


def test_tier_assignment():
    for d in REGISTRY:
        if d.id in DIAGNOSTIC_ONLY:
            assert d.tiers == {DIAGNOSTIC}
        elif d.id in MIXED:
            assert d.tiers == {CORE, DIAGNOSTIC}
        else:
            assert CORE in d.tiers
        assert d.quote and d.param_grid


def test_descriptor_lookup():
    assert descriptor("thm-3.3").tier == DIAGNOSTIC
    with pytest.raises(KeyError):
        descriptor("eq-missing")


SMALL = ["cor-2.3", "thm-3.4", "eq-q-binom-1", "lem-4.1", "eq-st1"]


def test_report_is_deterministic():
    cfg = Config(max_n=2)
    a = report_json(build_report(cfg, run_suite(cfg, SMALL)))
    b = report_json(build_report(cfg, run_suite(cfg, SMALL)))
    assert a == b
    doc = json.loads(a)
    assert all(r["runtime_ms"] is None for r in doc["results"])


def test_timings_opt_in():
    cfg = Config(max_n=1)
    doc = build_report(cfg, run_suite(cfg, ["eq-st1"]), timings=True)
    assert all(isinstance(r["runtime_ms"], float) for r in doc["results"])


def test_results_sorted_numerically():
    res = run_suite(Config(max_n=10), ["eq-st1"])
    # keys compare in name order (m before r), values numerically
    keys = [(r.params["m"], r.params["r"]) for r in res]
    assert keys == sorted(keys)


def test_tier_filter():
    core = run_suite(Config(tier="core", max_n=2), ["lem-4.1", "thm-3.4"])
    assert core and all(r.tier == CORE and r.id == "lem-4.1" for r in core)
    diag = run_suite(Config(tier="diagnostic", max_n=2), ["lem-4.1", "thm-3.4"])
    assert {r.id for r in diag} == {"lem-4.1", "thm-3.4"}
    assert all(r.tier == DIAGNOSTIC for r in diag)


def test_empty_grid():
    res = run_suite(Config(max_n=-1))
    assert res == []
    assert summarize(res) == {"core_pass": 0, "core_fail": 0, "diag_pass": 0, "diag_fail": 0}


@pytest.mark.parametrize("kw", [dict(p=2), dict(p=9), dict(q=Fraction(2)), dict(q=Fraction(1)),
                                dict(prec=0), dict(tier="some"), dict(max_terms=0)])
def test_config_errors(kw):
    with pytest.raises(ConfigError):
        run_suite(Config(**kw), ["eq-st1"])


def test_max_terms_from_env(monkeypatch):
    monkeypatch.setenv("QEULER_MAX_TERMS", "123")
    assert Config().max_terms == 123
