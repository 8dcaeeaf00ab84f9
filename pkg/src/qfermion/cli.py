"""Command-line entry point: verify, table, oracle."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bernstein import bernstein, bernstein_value
from .checks import bracket_value
from .euler import euler_poly, euler_recur, integrate_t, norlund_integral_exact, norlund_value
from .exact import q_power
from .padic import BadQ, check_q, embed_abs, fermionic_sum
from .registry import Config, ConfigError, build_report, report_json, run_suite
from .tables import OBJECTS, emit_table


def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def parse_levels(s: str) -> tuple[int, int]:
    lo, sep, hi = s.partition("..")
    try:
        lo_i, hi_i = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"levels must look like LO..HI, got {s!r}") from None
    if lo_i < 1 or hi_i < lo_i:
        raise argparse.ArgumentTypeError("need 1 <= LO <= HI")
    return lo_i, hi_i


# integrand and its exact integral for each oracle family
def _oracle_family(name: str, a: dict[str, int], q0: Fraction):
    if name == "euler":
        n = a["n"]
        return (lambda x: bracket_value(x, q0) ** n), euler_recur(n)
    if name == "euler-poly":
        n, x0 = a["n"], a.get("x", 0)
        return (lambda y: bracket_value(x0 + y, q0) ** n), euler_poly(n, x0)
    if name == "power":
        k = a["a"]
        return (lambda x: q0 ** (k * x)), 2 / (1 + q_power(k))
    if name == "bernstein":
        k, n = a["k"], a["n"]
        return (lambda x: bernstein_value(k, n, x, q0)), integrate_t(bernstein(k, n))
    if name == "norlund":
        n, h, r = a["n"], a["h"], a["r"]
        return (lambda x: norlund_value(n, h, r, x, q0)), norlund_integral_exact(n, h, r)
    raise ValueError(f"unknown integrand family {name!r}")


FAMILIES = ("euler", "euler-poly", "power", "bernstein", "norlund")


def parse_spec(spec: str) -> tuple[str, dict[str, int]]:
    """'euler:n=3' -> ('euler', {'n': 3})."""
    name, _, rest = spec.partition(":")
    args = {}
    for part in filter(None, rest.split(",")):
        k, eq, v = part.partition("=")
        if not eq:
            raise ValueError(f"bad parameter {part!r} in {spec!r}")
        args[k.strip()] = int(v)
    if name not in FAMILIES:
        raise ValueError(f"unknown integrand family {name!r}; choose from {', '.join(FAMILIES)}")
    return name, args


def oracle_levels(spec: str, p: int, q0: Fraction, levels: tuple[int, int], prec: int) -> dict:
    q0 = check_q(q0, p)
    name, args = parse_spec(spec)
    try:
        f, exact = _oracle_family(name, args, q0)
    except KeyError as e:
        raise ValueError(f"{name} needs parameter {e.args[0]}") from None
    value = exact.eval(q0)
    ex = embed_abs(value, p, prec)
    rows = []
    for N in range(levels[0], levels[1] + 1):
        s = fermionic_sum(f, p, N)
        rows.append({"N": N, "agreement": min(embed_abs(s, p, prec).agreement(ex), prec),
                     "target": min(N - 1, prec)})
    return {"f": spec, "p": p, "q": str(q0), "prec": prec, "exact": str(value), "levels": rows}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qfermion", description="Exact q-Euler / q-Bernstein identity checker")
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run the identity suite and write a JSON report")
    v.add_argument("--tier", choices=("core", "diagnostic", "all"), default="all")
    v.add_argument("--max-n", type=int, default=None, help="cap every grid's main index (negative: empty)")
    v.add_argument("--p", type=int, default=3)
    v.add_argument("--q", type=parse_rational, default=Fraction(4))
    v.add_argument("--prec", type=int, default=15)
    v.add_argument("--report", default=None, help="write the report here instead of stdout")
    v.add_argument("--timings", action="store_true", help="include runtime_ms (breaks byte-identical reports)")

    t = sub.add_parser("table", help="print exact values of one family")
    t.add_argument("object", choices=OBJECTS)
    t.add_argument("--max-n", type=int, required=True)
    t.add_argument("--format", choices=("json", "csv"), default="csv")
    t.add_argument("--eval-q", type=parse_rational, default=None)

    o = sub.add_parser("oracle", help="per-level fermionic partial sums against the exact integral")
    o.add_argument("--f", required=True, help="e.g. euler:n=3, bernstein:k=1,n=2, power:a=2")
    o.add_argument("--p", type=int, default=3)
    o.add_argument("--q", type=parse_rational, default=Fraction(4))
    o.add_argument("--levels", type=parse_levels, default=(1, 5))
    o.add_argument("--prec", type=int, default=15)
    return ap


def _verify(ns) -> int:
    cfg = Config(tier=ns.tier, max_n=ns.max_n, p=ns.p, q=ns.q, prec=ns.prec)
    try:
        results = run_suite(cfg)
    except ConfigError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    report = build_report(cfg, results, timings=ns.timings)
    text = report_json(report)
    if ns.report:
        with open(ns.report, "w") as fh:
            fh.write(text)
        s = report["summary"]
        print(f"core: {s['core_pass']} pass, {s['core_fail']} fail; "
              f"diagnostic: {s['diag_pass']} pass, {s['diag_fail']} fail")
    else:
        sys.stdout.write(text)
    return 1 if report["summary"]["core_fail"] else 0


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    if ns.cmd == "verify":
        return _verify(ns)
    try:
        if ns.cmd == "table":
            sys.stdout.write(emit_table(ns.object, ns.max_n, ns.format, ns.eval_q))
        else:
            if ns.p ** ns.levels[1] > 10**6:
                raise ValueError("level too high: p^HI must stay below 10^6 terms")
            out = oracle_levels(ns.f, ns.p, ns.q, ns.levels, ns.prec)
            sys.stdout.write(json.dumps(out, indent=2) + "\n")
    except (ValueError, BadQ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
