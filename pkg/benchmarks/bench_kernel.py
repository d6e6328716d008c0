"""Time the pure-Python and compiled rewrite kernels on the same workloads.

    python3 benchmarks/bench_kernel.py [--size N] [--repeat R]

Workloads: one-step reducts of every enumerated term (all rules), and the
exhaustive longest-reduction search over the same family.
"""

import argparse
import time

from ljc import kernel, search
from ljc.codec import NameTable, encode, rule_mask
from ljc.enumerate import enumerate_es_terms, enumerate_terms
from ljc.terms import Abs, GApp, Var


def one_step(fn, codes):
    for code, mask in codes:
        fn(code, mask)


def longest(fn, codes, budget=None):
    saved = kernel.reducts
    kernel.reducts = fn
    try:
        for code, mask in codes:
            search.longest_path(code, mask, search.weight_steps, budget or search.default_budget())
    finally:
        kernel.reducts = saved


def explore(fn, codes):
    # the graph is infinite in practice; time the first 20000 states
    longest(fn, codes, search.as_budget(20_000))


def app(t, u, k=[0]):
    k[0] += 1
    v = f"v{k[0]}"
    return GApp(t, u, v, Var(v))


def two():
    return Abs("f", Abs("x", app(Var("f"), app(Var("f"), Var("x")))))


def best_of(repeat, work, *args):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        work(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    j = [(encode(t, NameTable()), rule_mask("j", {"beta", "pi", "p2", "dbeta"})) for t in enumerate_terms(args.size)]
    es = [(encode(m, NameTable()), rule_mask("es", {"dB", "s"})) for m in enumerate_es_terms(args.size - 1)]
    # Church two applied to itself twice: a large reduction graph
    big = app(app(app(app(two(), two()), two()), Var("g")), Var("z"))
    heavy = [(encode(big, NameTable()), rule_mask("j", {"dbeta", "pi"}))]

    impls = kernel.backends()
    if "cython" not in impls:
        print("compiled kernel not available; build it with `pip install -e . --no-build-isolation`")
    rows = [
        ("one-step reducts, J", one_step, j),
        ("one-step reducts, ES", one_step, es),
        ("longest reduction, J", longest, j),
        ("20000 states of 2 2 2 g z", explore, heavy),
    ]
    print(f"{'workload':32} {'instances':>9} " + " ".join(f"{k:>10}" for k in impls) + "   speedup")
    for name, work, codes in rows:
        ts = {k: best_of(args.repeat, work, fn, codes) for k, fn in impls.items()}
        speed = f"{ts['python'] / ts['cython']:8.1f}x" if "cython" in ts else ""
        print(f"{name:32} {len(codes):9d} " + " ".join(f"{t:9.3f}s" for t in ts.values()) + "  " + speed)


if __name__ == "__main__":
    main()
