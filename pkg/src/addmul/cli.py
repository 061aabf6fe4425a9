"""Command-line front end: build/persist tables, query complexities and
witnesses, classify even numbers, export censuses, and run verification
checks with machine-readable output.

Exit codes: 0 success (pass or bounded-pass), 1 verification failure,
2 invalid values or configuration, 3 I/O or table-file errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import engine, harness
from .classify2 import (ceil_log2, classify_m_plus_1, classify_m_plus_2,
                        decompose_pow2, refined_lower_bound_2)
from .engine import (BuildConfig, CapacityExceededError, ComplexityTable,
                     InvalidConfigError, NotMultipleOfBaseError,
                     OutOfRangeError, RangeExceededError, TableFormatError,
                     build_table, complexity, defect_histogram, load_table,
                     max_expressible, save_table, witness)
from .tree import to_text

CHECKS = ("classify2-exhaustive", "bounds", "reduction", "six-ten",
          "conjecture-l2", "question2", "a-set", "question4", "question5",
          "conjecture-l1", "oracle-equivalence")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="addmul",
                                description="complexity of integers over a repeated literal")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a table and write it to disk")
    b.add_argument("--l", type=int, required=True, help="base literal")
    b.add_argument("--max", type=int, required=True, help="largest value covered")
    b.add_argument("--out", required=True, help="output table path")
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--no-reduction", action="store_true",
                   help="disable the single-digit reduction rule")

    q = sub.add_parser("query", help="look up one complexity")
    q.add_argument("n", type=int)
    q.add_argument("--table", required=True)
    q.add_argument("--witness", action="store_true",
                   help="also print one optimal expression")

    c = sub.add_parser("classify", help="classify an even number (base 2)")
    c.add_argument("n", type=int)

    ce = sub.add_parser("census", help="stream (n, complexity, defect) rows")
    ce.add_argument("--table", required=True)
    ce.add_argument("--from", dest="start", type=int, required=True)
    ce.add_argument("--to", dest="stop", type=int, required=True)
    ce.add_argument("--format", choices=("csv", "json"), default="csv")
    ce.add_argument("--out", default=None)
    ce.add_argument("--witness", action="store_true")

    v = sub.add_parser("verify", help="run a verification check")
    v.add_argument("check", choices=CHECKS)
    v.add_argument("--table", action="append", default=[],
                   help="table file; may repeat, matched to checks by base")
    v.add_argument("--l", type=int, default=None,
                   help="base (for question2: the largest base scanned)")
    v.add_argument("--max", type=int, default=None,
                   help="table size to build when none is supplied "
                        "(question5/a-set scan: the n range)")
    v.add_argument("--m-max", dest="m_max", type=int, default=None)
    v.add_argument("--r-max", dest="r_max", type=int, default=None)
    v.add_argument("--u-max", dest="u_max", type=int, default=None)
    v.add_argument("--cap", type=int, default=10000)
    v.add_argument("--n", type=int, default=None,
                   help="single value for the a-set check")
    v.add_argument("--out", default=None, help="write the JSON report here")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--no-reduction", action="store_true")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "build":
            return _cmd_build(args)
        if args.command == "query":
            return _cmd_query(args)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "census":
            return _cmd_census(args)
        return _cmd_verify(args)
    except TableFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (InvalidConfigError, CapacityExceededError, NotMultipleOfBaseError,
            OutOfRangeError, RangeExceededError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


def _cmd_build(args) -> int:
    base, limit = args.l, args.max
    if base < 1:
        raise InvalidConfigError("--l must be a positive integer")
    if limit % base:
        rounded = limit - limit % base
        print(f"warning: --max {limit} rounded down to {rounded} "
              f"(multiple of {base})", file=sys.stderr)
        limit = rounded
    cfg = BuildConfig(base=base, limit=limit, use_reduction=not args.no_reduction,
                      threads=args.threads)
    t0 = time.perf_counter()
    table = build_table(cfg)
    dt = time.perf_counter() - t0
    save_table(table, args.out)
    hist = defect_histogram(table)
    head = ", ".join(f"{d}: {c}" for d, c in list(hist.items())[:5])
    print(f"base {base}, limit {limit}, {len(table.entries)} entries, "
          f"built in {dt:.2f}s, defects {{{head}}} -> {args.out}")
    return 0


def _cmd_query(args) -> int:
    table = load_table(args.table)
    value = complexity(table, args.n)
    print(value)
    if args.witness:
        print(to_text(witness(table, args.n), table.base))
    return 0


def _cmd_classify(args) -> int:
    n = args.n
    dec = decompose_pow2(n)  # raises ValueError for odd or non-positive n
    parts = " + ".join(f"2^{e}" for e in dec.exponents)
    print(f"{n} = {parts}")
    m = ceil_log2(n) - 1
    one = classify_m_plus_1(n)
    bound = refined_lower_bound_2(n)
    if one is not None:
        print(f"matches {type(one).__name__}: {one.describe()} -> "
              f"complexity exactly {one.implied_complexity()}")
    else:
        forms = classify_m_plus_2(n)
        if forms:
            for f in forms:
                word = "exactly" if m >= 3 else "at most"
                print(f"matches {type(f).__name__}: {f.describe()} -> "
                      f"complexity {word} {f.implied_complexity()}")
        else:
            print("no closed form matches")
    print(f"refined lower bound: {bound}")
    return 0


def _cmd_census(args) -> int:
    table = load_table(args.table)
    base = table.base
    start = max(args.start, base)
    stop = min(args.stop, table.limit)
    ladder = max_expressible(base, table.limit)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        if args.format == "csv":
            header = "n,complexity,defect"
            if args.witness:
                header += ",witness"
            print(header, file=out)
        first = start + (-start) % base
        lb = 0
        for n in range(first, stop + 1, base):
            c = table.entries[n // base - 1]
            while ladder[lb] < n:
                lb += 1
            row: dict = {"n": n, "complexity": c, "defect": c - lb}
            if args.witness:
                row["witness"] = to_text(witness(table, n), base)
            if args.format == "csv":
                print(",".join(str(v) for v in row.values()), file=out)
            else:
                print(json.dumps(row), file=out)
    finally:
        if args.out:
            out.close()
    return 0


class _TablePool:
    """Loads tables given on the command line and builds missing ones."""

    def __init__(self, paths, use_reduction=True, threads=1):
        self.loaded: dict[int, ComplexityTable] = {}
        self.use_reduction = use_reduction
        self.threads = threads
        for path in paths:
            t = load_table(path)
            self.loaded[t.base] = t

    def get(self, base: int, limit: int) -> ComplexityTable:
        have = self.loaded.get(base)
        if have is not None:
            # a user-supplied table is used as-is; checks narrow their range
            return have
        limit -= limit % base
        print(f"building base-{base} table to {limit} ...", file=sys.stderr)
        t = build_table(BuildConfig(base=base, limit=limit,
                                    use_reduction=self.use_reduction,
                                    threads=self.threads))
        self.loaded[base] = t
        return t


def _cmd_verify(args) -> int:
    pool = _TablePool(args.table, use_reduction=not args.no_reduction,
                      threads=args.threads)
    check = args.check
    base = args.l if args.l is not None else 2

    if check == "oracle-equivalence":
        m_max = args.m_max if args.m_max is not None else {2: 14, 3: 9}.get(base, 8)
        limit = args.max if args.max is not None else base ** m_max if base > 1 \
            else engine._base1_cap(m_max)
        report = harness.verify_oracle_equivalence(pool.get(base, limit), m_max)
    elif check == "bounds":
        report = harness.verify_bounds(pool.get(base, args.max or 2 ** 16))
    elif check == "reduction":
        limit = args.max or 2 ** 16
        on = build_table(BuildConfig(base=base, limit=limit, use_reduction=True))
        off = build_table(BuildConfig(base=base, limit=limit, use_reduction=False))
        report = harness.verify_reduction(on, off)
    elif check == "classify2-exhaustive":
        report = harness.verify_classify2_exhaustive(pool.get(2, args.max or 2 ** 16))
    elif check == "six-ten":
        report = harness.verify_six_ten(pool.get(2, args.max or 300000))
    elif check == "conjecture-l2":
        r_max = args.r_max if args.r_max is not None else 7
        m_max = args.m_max if args.m_max is not None else 8
        report = harness.verify_conjecture_l2(pool.get(2, args.max or 300000),
                                              r_max, m_max)
    elif check == "question2":
        l_max = args.l if args.l is not None else 5
        r_max = args.r_max if args.r_max is not None else 5
        m_max = args.m_max if args.m_max is not None else 3
        limit = args.max or 250000
        report = harness.verify_question2(
            l_max, r_max, m_max, lambda b: pool.get(b, limit - limit % b))
    elif check == "question4":
        u_max = args.u_max if args.u_max is not None else 5
        r_max = args.r_max if args.r_max is not None else 3
        m_max = args.m_max if args.m_max is not None else 3
        report = harness.verify_question4(pool.get(2, args.max or 300000),
                                          u_max, r_max, m_max)
    elif check == "question5":
        n_max = args.max if args.max is not None else 200
        t1 = pool.get(1, n_max)
        t2 = pool.get(2, 2 ** 18)
        report = harness.verify_question5(n_max, args.cap, t1, t2)
    elif check == "conjecture-l1":
        report = harness.verify_conjecture_l1(pool.get(1, args.max or 10 ** 4))
    elif check == "a-set":
        table = pool.get(base, args.max or 2 ** 16)
        if args.n is not None:
            m_max = args.m_max
            if m_max is None:
                m_max = 0
                v = args.n
                while v * base <= table.limit:
                    v *= base
                    m_max += 1
            status = harness.check_a_set(base, args.n, m_max, table)
            if isinstance(status.verdict, harness.NonMember):
                notes = (f"n={args.n} is not in the stability set: violation "
                         f"at m={status.verdict.witness_m}")
                bounded = False
            else:
                notes = f"n={args.n}: no violation up to m={m_max}"
                bounded = True
            report = harness._report("a-set", {"l": base, "n": args.n,
                                               "m_max": m_max},
                                     f"m <= {m_max}", [], notes, bounded)
        else:
            n_max = min(200 * base, table.limit // base)
            m_max = args.m_max if args.m_max is not None else 16
            report = harness.scan_a_set(base, n_max, m_max, table)
    else:  # pragma: no cover
        raise ValueError(f"unknown check {check}")

    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report.ok else 1


if __name__ == "__main__":  # pragma: no cover
    entrypoint()
