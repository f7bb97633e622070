#!/usr/bin/env python3
"""Timing comparison of the pure-Python and compiled enumeration backends.

Runs the same workloads through both implementations and prints a table.
The compiled extension is exercised directly, so ABSOPT_DISABLE_EXT has no
effect here; a missing extension just drops the compiled column.
"""

import argparse
import random
import time

from absopt import _engine_py as pure

try:
    from absopt import _engine as compiled
except ImportError:
    compiled = None

CMP_CODES = {"atleast": 0, "exact": 1, "atmost": 2}


def random_clauses(rng, n, m, max_weight=9):
    clauses = []
    for _ in range(m):
        width = rng.randint(1, min(3, n))
        vs = rng.sample(range(n), width)
        pos = neg = 0
        for v in vs:
            if rng.random() < 0.5:
                pos |= 1 << v
            else:
                neg |= 1 << v
        w = 0
        while w == 0:
            w = rng.randint(-max_weight, max_weight)
        clauses.append((pos, neg, w))
    return clauses


def run_pure(work, n, clauses, alpha):
    if work == "extremes":
        return pure.extremes(n, clauses, dnf=True)
    return pure.decide(
        n, clauses, dnf=True, alpha=alpha, absolute=True, comparison="atleast"
    )


def run_compiled(work, n, clauses, alpha):
    if work == "extremes":
        return compiled.extremes(n, list(clauses), dnf=True)
    return compiled.decide(
        n, list(clauses), dnf=True, alpha=alpha, absolute=True, cmp_code=0
    )


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 18, 20])
    ap.add_argument("--clauses", type=int, default=12)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    if compiled is None:
        print("note: compiled extension not importable, timing the pure path only")
    header = f"{'workload':<12} {'n':>3} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in args.sizes:
        rng = random.Random(args.seed)
        clauses = random_clauses(rng, n, args.clauses)
        # one above the optimum: unreachable, but too tight for the root
        # bound to cut the search off early
        mx, _, mn, _ = pure.extremes(n, clauses, dnf=True)
        tight = max(abs(mx), abs(mn)) + 1
        for work, alpha in (("decide-no", tight), ("extremes", 0)):
            t_pure, r_pure = best_of(
                lambda: run_pure(work, n, clauses, alpha), args.repeats
            )
            if compiled is None:
                print(f"{work:<12} {n:>3} {t_pure:>10.4f} {'-':>13} {'-':>8}")
                continue
            t_comp, r_comp = best_of(
                lambda: run_compiled(work, n, clauses, alpha), args.repeats
            )
            if tuple(r_pure) != tuple(r_comp):
                raise SystemExit(
                    f"backend mismatch on {work} n={n}: {r_pure} vs {r_comp}"
                )
            ratio = t_pure / t_comp if t_comp > 0 else float("inf")
            print(f"{work:<12} {n:>3} {t_pure:>10.4f} {t_comp:>13.4f} {ratio:>7.1f}x")


if __name__ == "__main__":
    main()
