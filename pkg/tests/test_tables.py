import json
from fractions import Fraction
from pathlib import Path

import pytest

from qfermion.tables import OBJECTS, emit_table, table_rows

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("euler_3.csv", "euler", 3, "csv", None),
    ("euler_3.json", "euler", 3, "json", None),
    ("gauss_binomial_4.csv", "gauss-binomial", 4, "csv", None),
    ("stirling_S1_3.csv", "stirling-S1", 3, "csv", None),
    ("stirling_s1_3.csv", "stirling-s1", 3, "csv", None),
    ("bernstein_2_q2.csv", "bernstein", 2, "csv", Fraction(2)),
    ("euler_2_qm1.csv", "euler", 2, "csv", Fraction(-1)),
    ("euler_poly_2_q4.json", "euler-poly", 2, "json", Fraction(4)),
]


@pytest.mark.parametrize("fname,obj,max_n,fmt,eval_q", CASES)
def test_matches_golden(fname, obj, max_n, fmt, eval_q):
    assert emit_table(obj, max_n, fmt, eval_q) == (GOLDEN / fname).read_text()


def test_euler_rows():
    rows = table_rows("euler", 2)
    assert [r["value"] for r in rows] == ["1", "-1/(1+q)", "(q-1)/((1+q)*(1+q^2))"]


def test_gauss_entry():
    row = [r for r in table_rows("gauss-binomial", 4) if (r["n"], r["k"]) == (4, 2)]
    assert row[0]["value"] == "1+q+2*q^2+q^3+q^4"


def test_pole_is_undefined():
    rows = table_rows("euler", 1, Fraction(-1))
    assert rows[1]["value_at_q"] == "undefined"
    assert table_rows("euler", 2, Fraction(4))[1]["value_at_q"] == "-1/5"


def test_json_shape():
    doc = json.loads(emit_table("euler", 1, "json", Fraction(1, 2)))
    assert doc["object"] == "euler" and doc["eval_q"] == "1/2" and len(doc["rows"]) == 2


@pytest.mark.parametrize("obj", OBJECTS)
def test_every_object_renders(obj):
    assert emit_table(obj, 2).startswith(("n,", "k,"))


def test_bounds():
    with pytest.raises(ValueError):
        table_rows("euler", 99)
    with pytest.raises(ValueError):
        table_rows("nope", 2)
