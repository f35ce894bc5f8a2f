"""Command-line interface: ``dfaorev {reverse,table,formula,search,scan}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .complexity import corollary_lower_bound, formula_F, formula_G, tau_ulm_size
from .dfao import DfaoParseError, format_dfao, is_trim, parse_dfao, reverse, trim
from .monoid import GeneratorValidationError, closure_size, u_lm_generators, v_n_generators
from .search import (
    BudgetExceeded,
    DEFAULT_BUDGET,
    MAX_REPS_DEGREE,
    SearchConfig,
    brute_force,
    estimate_brute_triples,
    random_search,
    v1n_conjecture_scan,
)

log = logging.getLogger("dfaorev")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3

TABLE_DEFAULTS = {
    1: {"n": (2, 7)},
    2: {"k": (2, 6), "n": (5, 9)},
    3: {"k": (3, 4), "n": (3, 8)},
}
TABLE_BUDGET = 10**7
TABLE1_MAX_N = 7


def parse_range(text: str) -> list[int]:
    """``"5"``, ``"5-9"`` or ``"5,7,8"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


# -- reverse -----------------------------------------------------------------


def cmd_reverse(args) -> int:
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        d = parse_dfao(text)
    except DfaoParseError as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    before = d.n
    if not is_trim(d):
        d = trim(d)
        print(f"notice: input not trim; removed {before - d.n} unreachable state(s)", file=sys.stderr)
    r = reverse(d)
    out = format_dfao(r.to_dfao())
    summary = f"states: {before} in, {d.n} trim, {r.n} reversed (minimal)"
    if args.output:
        try:
            Path(args.output).write_text(out)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID
        print(summary)
    else:
        sys.stdout.write(out)
        print(summary, file=sys.stderr)
    return EXIT_OK


# -- tables ------------------------------------------------------------------


def _table1(ns):
    rows = []
    for n in ns:
        if 2 <= n <= 6:
            value, source = closure_size(v_n_generators(n)), f"V_{n} generators"
        elif n == TABLE1_MAX_N:
            sizes = {f"U_{{{l},{m}}}": closure_size(u_lm_generators(l, m)) for l, m in ((2, 5), (3, 4))}
            source = max(sizes, key=sizes.get)
            value = sizes[source]
        else:
            value, source = None, "skipped"
        rows.append({"n": n, "value": value, "n^n": n**n, "source": source})
    return rows


def _table2(ks, ns):
    cells = []
    for k in ks:
        for n in ns:
            try:
                b = corollary_lower_bound(k, n)
            except ValueError:
                cells.append({"k": k, "n": n, "value": None})
            else:
                cells.append({"k": k, "n": n, "value": b.value, "l": b.l, "m": b.m})
    return cells


def _table3(ks, ns, args):
    cells = []
    for k in ks:
        for n in ns:
            cell = {"k": k, "n": n, "value": None, "method": "skipped"}
            if k > n:
                cells.append(cell)
                continue
            if n <= MAX_REPS_DEGREE and estimate_brute_triples(n, k) <= args.budget:
                r = brute_force(SearchConfig(n=n, k=k, parallelism=args.workers, budget=args.budget))
                cell.update(value=r.max_size, method="brute")
            elif args.iters > 0:
                r = random_search(
                    SearchConfig(n=n, k=k, mode="random", iterations=args.iters, seed=args.seed, parallelism=args.workers)
                )
                cell.update(value=r.max_size, method="random")
            log.info("table 3 cell k=%d n=%d: %s", k, n, cell)
            cells.append(cell)
    return cells


def _grid_tsv(cells, ks, ns, mark=None) -> str:
    lines = ["k\\n\t" + "\t".join(str(n) for n in ns)]
    by = {(c["k"], c["n"]): c for c in cells}
    for k in ks:
        row = [str(k)]
        for n in ns:
            c = by[(k, n)]
            v = "-" if c["value"] is None else str(c["value"])
            if mark and c["value"] is not None:
                v += mark(c)
            row.append(v)
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    defaults = TABLE_DEFAULTS[args.table]
    ns = args.n or list(range(defaults["n"][0], defaults["n"][1] + 1))
    if args.table == 1:
        rows = _table1(ns)
        if args.format == "json":
            print(json.dumps({"table": 1, "rows": rows}))
        else:
            print("n\tm2(n)\tn^n\tsource")
            for r in rows:
                v = "skipped" if r["value"] is None else r["value"]
                print(f"{r['n']}\t{v}\t{r['n^n']}\t{r['source']}")
        return EXIT_OK
    ks = args.k or list(range(defaults["k"][0], defaults["k"][1] + 1))
    if args.table == 2:
        cells = _table2(ks, ns)
        if args.format == "json":
            print(json.dumps({"table": 2, "cells": cells}))
        else:
            sys.stdout.write(_grid_tsv(cells, ks, ns))
        return EXIT_OK
    cells = _table3(ks, ns, args)
    if args.format == "json":
        print(json.dumps({"table": 3, "cells": cells}))
    else:
        sys.stdout.write(_grid_tsv(cells, ks, ns, mark=lambda c: "*" if c["method"] == "brute" else ""))
        print("# * = exhaustive maximum; unmarked = best found by random search")
    return EXIT_OK


# -- formula -----------------------------------------------------------------


def cmd_formula(args) -> int:
    k = args.k
    try:
        if args.l is not None and args.m is not None:
            l, m = args.l, args.m
            n = l + m
            value = tau_ulm_size(k, l, m)
            print(f"k={k} l={l} m={m} n={n}")
            print(f"k^n\t{k**n}")
            print(f"F\t{formula_F(k, l, m)}")
            print(f"G\t{formula_G(k, l, m)}")
            print(f"k^n-F+G\t{value}")
        elif args.n is not None and args.l is None and args.m is None:
            n = args.n[0] if len(args.n) == 1 else None
            if n is None:
                raise ValueError("corollary mode takes a single -n")
            b = corollary_lower_bound(k, n)
            print(f"k={k} n={n}")
            print(f"k^n\t{k**n}")
            print(f"F\t{formula_F(k, b.l, b.m)}")
            print(f"G\t{formula_G(k, b.l, b.m)}")
            print(f"bound\t{b.value}")
            print(f"split\tl={b.l} m={b.m}")
        else:
            raise ValueError("give either -l and -m, or -n")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


# -- search / scan -------------------------------------------------------------


def cmd_search(args) -> int:
    try:
        config = SearchConfig(
            n=args.n,
            k=args.k,
            mode=args.mode,
            iterations=args.iters,
            seed=args.seed,
            parallelism=args.workers,
            budget=args.budget,
        )
        result = brute_force(config) if args.mode == "brute" else random_search(config)
    except BudgetExceeded as exc:
        print(json.dumps({"k": args.k, "n": args.n, "mode": args.mode, "error": "budget", "estimate": exc.estimate, "budget": exc.budget}))
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(json.dumps(result.to_record()))
    return EXIT_OK


def cmd_scan(args) -> int:
    for n in args.n:
        try:
            report = v1n_conjecture_scan(n)
        except (ValueError, GeneratorValidationError) as exc:
            print(f"error: n={n}: {exc}", file=sys.stderr)
            return EXIT_INVALID
        if args.format == "json":
            print(json.dumps({
                "n": n,
                "alpha": report.alpha.to_list(),
                "beta": report.beta.to_list(),
                "attaining": [t.to_list() for t in report.attaining],
                "size_counts": report.size_counts(),
            }))
        else:
            print(report.summary())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dfaorev", description="State complexity of reversal for DFAOs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("reverse", help="reverse a DFAO file")
    r.add_argument("input")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_reverse)

    t = sub.add_parser("table", help="reproduce a results table (1, 2 or 3)")
    t.add_argument("table", type=int, choices=(1, 2, 3))
    t.add_argument("-k", type=parse_range, help="output sizes, e.g. 3-4")
    t.add_argument("-n", type=parse_range, help="state counts, e.g. 5-9")
    t.add_argument("--format", choices=("tsv", "json"), default="tsv")
    t.add_argument("--iters", type=int, default=20000, help="random-search samples for cells over budget (0: skip)")
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--workers", type=int, default=1)
    t.add_argument("--budget", type=int, default=TABLE_BUDGET)
    t.set_defaults(func=cmd_table)

    f = sub.add_parser("formula", help="evaluate k^n - F + G or the lower bound")
    f.add_argument("-k", type=int, required=True)
    f.add_argument("-l", type=int)
    f.add_argument("-m", type=int)
    f.add_argument("-n", type=parse_range)
    f.set_defaults(func=cmd_formula)

    s = sub.add_parser("search", help="brute-force or random search for max |tau M|")
    s.add_argument("mode", choices=("brute", "random"))
    s.add_argument("-k", type=int, required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--iters", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("scan", help="|tau V^1_n| for all two-output tau")
    c.add_argument("-n", type=parse_range, required=True)
    c.add_argument("--format", choices=("tsv", "json"), default="tsv")
    c.set_defaults(func=cmd_scan)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
