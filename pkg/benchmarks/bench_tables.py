#!/usr/bin/env python3
"""Benchmark the compiled table kernels against the pure-Python fallback.

Times the three hot paths on representative tables: full associativity
validation, element orders, and the isomorphism search (both a matching
pair, which must find the lexicographically smallest witness, and a
non-isomorphic pair of equal order multiset size).

Usage: python3 benchmarks/bench_tables.py [--repeat N]
"""

import argparse
import time

from spincover._kernels import tables_py

try:
    from spincover._kernels import _tables as tables_c
except ImportError:
    tables_c = None

from spincover.groups import cyclic, dicyclic, dihedral, direct_product


def time_call(fn, *args, repeat: int):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def build_cases():
    dic64 = dicyclic(64)
    dih64 = dihedral(64)
    dic128 = dicyclic(128)
    dih128 = dihedral(128)
    z2cube = direct_product(
        direct_product(cyclic(2), cyclic(2)),
        direct_product(cyclic(2), cyclic(2)),
    )  # (Z2)^4: heavy branching in the search
    big = direct_product(cyclic(16), cyclic(16))  # order 256, sampled associativity
    return [
        ("associativity dihedral-64 (exhaustive)", "associativity_violation", (dih64.table,)),
        ("associativity Z16xZ16-256 (sampled)", "associativity_violation", (big.table,)),
        ("element orders dicyclic-128", "element_orders", (dic128.table, dic128.identity_index)),
        (
            "isomorphism dicyclic-64 vs dicyclic-64",
            "find_isomorphism",
            (dic64.table, dic64.table, dic64.identity_index, dic64.identity_index),
        ),
        (
            "isomorphism dihedral-128 vs dicyclic-128 (none)",
            "find_isomorphism",
            (dih128.table, dic128.table, dih128.identity_index, dic128.identity_index),
        ),
        (
            "isomorphism (Z2)^4 vs (Z2)^4",
            "find_isomorphism",
            (z2cube.table, z2cube.table, z2cube.identity_index, z2cube.identity_index),
        ),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="best-of-N timing")
    args = parser.parse_args()

    if tables_c is None:
        print("compiled kernels not built; showing pure-Python timings only")

    cases = build_cases()
    width = max(len(name) for name, _, _ in cases)
    header = f"{'case'.ljust(width)}  {'python':>10}"
    if tables_c is not None:
        header += f"  {'compiled':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))

    for name, fn_name, fn_args in cases:
        py_time, py_result = time_call(getattr(tables_py, fn_name), *fn_args, repeat=args.repeat)
        line = f"{name.ljust(width)}  {py_time * 1e3:9.2f}ms"
        if tables_c is not None:
            c_time, c_result = time_call(getattr(tables_c, fn_name), *fn_args, repeat=args.repeat)
            if py_result != c_result:
                raise SystemExit(f"backend results differ on {name!r}")
            line += f"  {c_time * 1e3:9.2f}ms  {py_time / c_time:7.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
