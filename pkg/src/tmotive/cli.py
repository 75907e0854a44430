"""Command-line front end.

Subcommands: lseries, scan, maxmodel, localfactor, oracle-check, bench.
Exit codes: 0 ok, 2 input error, 3 math-level assertion failure.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from .bivar import BivarPoly
from .completion import AtLeastN, Place
from .ffield import Field, Poly
from .grammar import GrammarError, parse_t_poly
from .lseries import (
    LSeriesError,
    conjecture_scan,
    euler_product_oracle,
    lseries_general,
    lseries_order_at_one,
)
from .model import (
    ModelError,
    bad_places,
    local_factor,
    maximal_model_global,
    maximal_model_local,
)
from .motfile import MotiveFileError, load_motive
from .motive import Motive, MotiveError, from_matrix


class InputError(ValueError):
    pass


def _parse_place(ff: Field, s: str) -> Place:
    if s.strip() in ("inf", "infinity", "oo"):
        return Place.infinite(ff)
    try:
        v = parse_t_poly(ff, s)
        return Place.finite(v)
    except (GrammarError, ValueError) as exc:
        raise InputError(f"bad place {s!r}: {exc}") from exc


def _valuation_json(v):
    return {"at_least": v.n} if isinstance(v, AtLeastN) else v


def parse_result_json(text: str) -> dict:
    """Parser for the structured output of every command (round-trip hook)."""
    data = json.loads(text)
    if not isinstance(data, dict) or "command" not in data:
        raise InputError("not a structured result (missing command key)")
    return data


def _emit(args, record, table_lines):
    if args.format == "json":
        print(json.dumps(record, sort_keys=True, separators=(",", ":")))
    else:
        for line in table_lines:
            print(line)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_lseries(args) -> int:
    M = load_motive(args.motive)
    place = _parse_place(M.ff, args.place)
    L = lseries_general(M, place, args.prec, s_max_override=args.smax_override)
    record = {"command": "lseries", "result": L.dump()}
    lines = [f"L-series at place {place!r}, precision {args.prec} (c = {L.c}, "
             f"nucleus dimension {L.nucleus_dim})"]
    ordL, cert = lseries_order_at_one(L)
    for n, (c, v) in enumerate(zip(L.coeffs, L.valuations())):
        vs = f">= {v.n}" if isinstance(v, AtLeastN) else str(v)
        if args.valuations:
            lines.append(f"  a_{n}: valuation {vs}")
        else:
            pre = f"u^-{L.pole[n]} * " if L.pole[n] else ""
            lines.append(f"  a_{n} = {pre}({c!r})" if pre else f"  a_{n} = {c!r}")
    note = "" if cert else " (apparent order at the stored precision)"
    lines.append(f"order of vanishing at T=1: {ordL}{note}")
    _emit(args, record, lines)
    return 0


def cmd_scan(args) -> int:
    M = load_motive(args.motive)
    rows = conjecture_scan(M, args.max_degree, args.prec)
    record = {
        "command": "scan",
        "rows": [
            {
                "place": r["place"].to_str("t"),
                "ord_P": r["ord_P"],
                "ord_L": r["ord_L"],
                "difference": r["difference"],
                "certified": r["certified"],
            }
            for r in rows
        ],
    }
    width = max((len(r["place"].to_str("t")) for r in rows), default=8)
    lines = [f"{'place':{width}s}  ord P_v  ord L_v  diff"]
    for r in rows:
        lines.append(
            f"{r['place'].to_str('t'):{width}s}  {r['ord_P']:7d}  {r['ord_L']:7d}"
            f"  {r['difference']:4d}"
        )
    lines.append("L-orders are apparent orders at the requested precision.")
    _emit(args, record, lines)
    return 0


def cmd_maxmodel(args) -> int:
    M = load_motive(args.motive)
    basis, delta = maximal_model_global(M)
    wden = basis.wden.to_str("th")
    record = {
        "command": "maxmodel",
        "discriminant": delta.to_str("th"),
        "basis_denominator": wden,
        "basis_numerator": [[e.to_str() for e in row] for row in basis.wnum],
        "tau_matrix": [[e.to_str() for e in row] for row in basis.phi_num],
        "h": M.h,
    }
    lines = [f"maximal model discriminant: {delta.to_str('th')}"]
    lines.append(f"basis change (columns; common denominator {wden}):")
    for i, row in enumerate(basis.wnum):
        lines.append("  [" + ", ".join(e.to_str() for e in row) + "]")
    lines.append("tau-matrix in the maximal basis:")
    for row in basis.phi_num:
        lines.append("  [" + ", ".join(e.to_str() for e in row) + "]")
    _emit(args, record, lines)
    return 0


def cmd_localfactor(args) -> int:
    M = load_motive(args.motive)
    place = _parse_place(M.ff, args.place)
    if place.is_infinite:
        raise InputError("local factors live at finite places")
    pth = place.v
    bads = {p for p, _ in bad_places(M)}
    src = maximal_model_local(M, pth) if pth in bads else M
    lf = local_factor(src, pth)
    record = {
        "command": "localfactor",
        "place": pth.to_str("t"),
        "coefficients": [c.to_str("t") for c in lf.coeffs],
        "degree_step": lf.d,
    }
    _emit(args, record, [f"P_({pth.to_str('t')}) = {lf}"])
    return 0


def cmd_oracle_check(args) -> int:
    M = load_motive(args.motive)
    place = _parse_place(M.ff, args.place)
    D = args.max_degree
    L = lseries_general(M, place, args.prec)
    if bad_places(M):
        basis, _ = maximal_model_global(M)
        oracle_src = basis
    else:
        oracle_src = M
    O = euler_product_oracle(oracle_src, place, D, args.prec, laurent=True)
    rows = []
    ok = True
    for n in range(D + 1):
        pole_b, el_b = O[n]
        if n <= L.degree():
            pole_a = L.pole[n]
            P = max(pole_a, pole_b)
            cert = min(args.prec, L.certified[n] - (P - pole_a))
            if cert > 0:
                a = L.coefficient(n)
                if P - pole_a:
                    a = a.unit_shift(P - pole_a)
                b = el_b.unit_shift(P - pole_b) if P - pole_b else el_b
                match = a.truncate(cert) == b.truncate(cert)
            else:
                match = True
        else:
            val = el_b.valuation()
            match = pole_b == 0 and (isinstance(val, AtLeastN) or val >= args.prec)
        ok = ok and match
        rows.append({"n": n, "match": bool(match)})
    record = {"command": "oracle_check", "rows": rows, "pass": ok}
    lines = [f"coefficient T^{r['n']}: {'PASS' if r['match'] else 'FAIL'}" for r in rows]
    lines.append("PASS" if ok else "FAIL")
    _emit(args, record, lines)
    return 0 if ok else 3


def _bench_motive(ff: Field, rank: int) -> Motive:
    """Rank-r cycle companion with det = +-(t - theta)."""
    ent = [[BivarPoly.zero(ff) for _ in range(rank)] for _ in range(rank)]
    ent[0][rank - 1] = BivarPoly.t_minus_theta(ff)
    for i in range(1, rank):
        ent[i][i - 1] = BivarPoly.one(ff)
    return from_matrix(ent)


def cmd_bench(args) -> int:
    ff = Field(2)
    precs = [int(x) for x in args.precs.split(",")]
    ranks = [int(x) for x in args.ranks.split(",")]
    degrees = [int(x) for x in args.degrees.split(",")]
    from .ffield import irreducibles

    irr = irreducibles(ff, max(degrees))
    by_deg = {}
    for f in irr:
        by_deg.setdefault(f.degree(), f)
    rows = []
    print("prec,rank,place_degree,seconds")
    for prec in precs:
        for rank in ranks:
            M = _bench_motive(ff, rank)
            for deg in degrees:
                place = Place.finite(by_deg[deg]) if deg > 0 else Place.infinite(ff)
                times = []
                for _ in range(args.repeats):
                    t0 = time.perf_counter()
                    lseries_general(M, place, prec)
                    times.append(time.perf_counter() - t0)
                med = statistics.median(times)
                rows.append((prec, rank, deg, med))
                print(f"{prec},{rank},{deg},{med:.6f}")
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(
        prog="tmotive",
        description="L-series of t-motives over F_q(theta) at any place, "
        "maximal models and local factors.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, place=True):
        p.add_argument("--motive", required=True, help="motive file (TOML)")
        if place:
            p.add_argument("--place", required=True,
                           help="'inf' or a monic irreducible polynomial in t")
        p.add_argument("--prec", type=int, default=32, help="v-adic precision")
        p.add_argument("--max-degree", type=int, default=4, dest="max_degree")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--valuations", action="store_true",
                       help="print valuations instead of coefficient digits")
        p.add_argument("--smax-override", type=int, default=None, dest="smax_override")

    p = sub.add_parser("lseries", help="L-series at a place")
    common(p)
    p.set_defaults(fn=cmd_lseries)
    p = sub.add_parser("scan", help="orders of vanishing over places up to a degree")
    common(p, place=False)
    p.set_defaults(fn=cmd_scan)
    p = sub.add_parser("maxmodel", help="global maximal model")
    common(p, place=False)
    p.set_defaults(fn=cmd_maxmodel)
    p = sub.add_parser("localfactor", help="local L-factor at a finite place")
    common(p)
    p.set_defaults(fn=cmd_localfactor)
    p = sub.add_parser("oracle-check", help="trace formula vs Euler product")
    common(p)
    p.set_defaults(fn=cmd_oracle_check)
    p = sub.add_parser("bench", help="timing sweep, CSV output")
    p.add_argument("--precs", default="64,128,256,512")
    p.add_argument("--ranks", default="1,2")
    p.add_argument("--degrees", default="1,2")
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, MotiveFileError, GrammarError, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (ModelError, LSeriesError, MotiveError, ArithmeticError, AssertionError) as exc:
        print(f"computation failed an internal check: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
