"""Time the compiled and pure-Python evaluation kernels on the same workloads.

    python benchmarks/bench_kernels.py [--sizes 8 16 32] [--repeat 3] [--json]

Each workload model checks a catalog formula on a seeded random graph and on
the complete graph (where most workloads hold, forcing a full scan); the
search-tree workload runs ``first_violation`` from the all-zero assignment.
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import time
from array import array

from relmod.catalog import catalog_formula
from relmod.generators import random_structure
from relmod.kernels import available_backends
from relmod.modelcheck import CompiledFormula, DenseStructure

WORKLOADS = ["clusters", "radius-2", "diam-2", "no-common-triangle", "on-triangle"]


def _run(backend, compiled: CompiledFormula, dense: DenseStructure, violation: bool) -> bool:
    assign = array("q", [0] * len(compiled.quant))
    if violation:
        slots = array("i", range(len(compiled.quant)))
        return backend.first_violation(dense.data, compiled.n, compiled.prog, slots, assign)
    return backend.check_prefix(dense.data, compiled.n, compiled.prog, compiled.quant, assign)


def bench(sizes, repeat: int, seed: int) -> list[dict]:
    backends = available_backends()
    rows = []
    for n in sizes:
        rng = random.Random(seed + n)
        for graph_name, density in (("random", 0.5), ("complete", 1.0)):
            s = random_structure(rng, "basic", n, density=density)
            rows += _bench_graph(backends, s, graph_name, repeat)
    return rows


def _bench_graph(backends, s, graph_name: str, repeat: int) -> list[dict]:
    dense = DenseStructure.from_structure(s)
    rows = []
    for name in WORKLOADS + ["clusters/first_violation"]:
        violation = name.endswith("/first_violation")
        compiled = CompiledFormula(catalog_formula(name.split("/")[0]), s.vocabulary, s.n)
        row = {"workload": name, "graph": graph_name, "n": s.n}
        answers = set()
        for label, backend in backends.items():
            times = []
            for _ in range(repeat):
                t0 = time.perf_counter()
                answers.add(_run(backend, compiled, dense, violation))
                times.append(time.perf_counter() - t0)
            row[label] = statistics.median(times)
        if len(answers) != 1:
            raise AssertionError(f"backends disagree on {name} at n={s.n}")
        if "cython" in row:
            row["speedup"] = row["python"] / max(row["cython"], 1e-9)
        rows.append(row)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 24])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = bench(args.sizes, args.repeat, args.seed)
    if args.json:
        print(json.dumps(rows, indent=1))
        return
    if "cython" not in available_backends():
        print("compiled extension not built; timing the pure-Python kernels only")
    print(f"{'workload':26s} {'graph':9s} {'n':>4s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for r in rows:
        cy = f"{r['cython']:10.5f}" if "cython" in r else f"{'-':>10s}"
        sp = f"{r['speedup']:7.1f}x" if "speedup" in r else f"{'-':>8s}"
        print(f"{r['workload']:26s} {r['graph']:9s} {r['n']:4d} {r['python']:10.5f} {cy} {sp}")


if __name__ == "__main__":
    main()
