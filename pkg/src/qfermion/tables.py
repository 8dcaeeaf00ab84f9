"""Tables of exact values in CSV or JSON."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .bernstein import bernstein
from .euler import euler_poly, euler_recur
from .exact import PoleError, RatFn, pretty
from .qcomb import gauss_binomial
from .stirling import S1_row, s1_row

OBJECTS = ("euler", "euler-poly", "stirling-s1", "stirling-S1", "bernstein", "gauss-binomial")
MAX_N = 24


def _rows(obj: str, max_n: int):
    """Yield (index columns, value) pairs in a stable order."""
    if obj == "euler":
        for n in range(max_n + 1):
            yield {"n": n}, euler_recur(n)
    elif obj == "euler-poly":
        for n in range(max_n + 1):
            yield {"n": n}, euler_poly(n)
    elif obj == "stirling-s1":
        for k in range(max_n + 1):
            row = s1_row(k)
            for m in range(k + 1):
                yield {"k": k, "m": m}, RatFn(row[m])
    elif obj == "stirling-S1":
        for n in range(max_n + 1):
            row = S1_row(n)
            for k in range(n + 1):
                yield {"n": n, "k": k}, RatFn(row[k])
    elif obj == "bernstein":
        for n in range(max_n + 1):
            for k in range(n + 1):
                yield {"k": k, "n": n}, bernstein(k, n)
    elif obj == "gauss-binomial":
        for n in range(max_n + 1):
            for k in range(n + 1):
                yield {"n": n, "k": k}, RatFn(gauss_binomial(n, k))
    else:
        raise ValueError(f"unknown object {obj!r}; choose from {', '.join(OBJECTS)}")


def _evaluate(val: RatFn, q0: Fraction) -> str:
    try:
        if val.free_of_t():
            return str(val.eval(q0))
        return pretty(val.eval_q(q0))
    except PoleError:
        return "undefined"


def table_rows(obj: str, max_n: int, eval_q: Fraction | None = None) -> list[dict]:
    if not 0 <= max_n <= MAX_N:
        raise ValueError(f"max_n must be in 0..{MAX_N}")
    out = []
    for idx, val in _rows(obj, max_n):
        row = dict(idx, value=pretty(val))
        if eval_q is not None:
            row["value_at_q"] = _evaluate(val, eval_q)
        out.append(row)
    return out


def emit_table(obj: str, max_n: int, fmt: str = "csv", eval_q: Fraction | None = None) -> str:
    rows = table_rows(obj, max_n, eval_q)
    if fmt == "json":
        doc = {"object": obj, "max_n": max_n, "eval_q": None if eval_q is None else str(eval_q), "rows": rows}
        return json.dumps(doc, indent=2) + "\n"
    if fmt != "csv":
        raise ValueError("format must be csv or json")
    buf = io.StringIO()
    fields = list(rows[0].keys()) if rows else ["value"]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
