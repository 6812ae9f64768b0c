"""Benchmark the compiled contiguity kernel against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Workloads:
  neighbors   raw neighbor enumeration in the map space L -> K^2 for the
              hollow triangle K (the hot inner loop of every class search)
  bfs         breadth-first exploration of the contiguity graph from the
              inclusion of an 8-vertex subcomplex L of K^2, capped at a
              fixed number of states so both backends do identical work
              (full components here run to tens of thousands of maps, the
              workload the compiled kernel exists for)
"""

from __future__ import annotations

import argparse
import statistics
import time
from collections import deque

from simplicial_tc import _kernels, build_complex, categorical_square, subcomplex
from simplicial_tc.complexes import embedding_ids


def build_space(backend_name):
    K = build_complex([{"a", "b"}, {"b", "c"}, {"a", "c"}])
    P = categorical_square(K)
    picks = [P.product.facets[i] for i in (0, 1, 5)]
    omega = subcomplex(P.product, picks)
    kernel = _kernels.select(P.product.n_vertices, backend_name)
    ctx = kernel.make_context(
        omega.facet_vertex_ids,
        omega.vertex_facets,
        P.product.facets,
        omega.n_vertices,
        P.product.n_vertices,
    )
    start = bytes(embedding_ids(omega, P.product))  # the inclusion map
    return kernel, ctx, start


def bench_neighbors(kernel, ctx, start, seconds=1.0):
    calls = 0
    t0 = time.perf_counter()
    while time.perf_counter() - t0 < seconds:
        kernel.neighbors(ctx, start)
        calls += 1
    return calls / (time.perf_counter() - t0)


def bench_bfs(kernel, ctx, start, cap):
    t0 = time.perf_counter()
    seen = {start}
    queue = deque([start])
    while queue and len(seen) < cap:
        a = queue.popleft()
        for b in kernel.neighbors(ctx, a):
            if b not in seen:
                seen.add(b)
                queue.append(b)
                if len(seen) >= cap:
                    break
    return time.perf_counter() - t0, len(seen)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--states", type=int, default=3000, help="BFS state cap per run")
    args = parser.parse_args()

    backends = _kernels.available_backends()
    print(f"available backends: {', '.join(backends)}")
    results = {}
    for name in backends:
        kernel, ctx, start = build_space(name)
        rate = bench_neighbors(kernel, ctx, start)
        times = []
        size = None
        for _ in range(args.repeat):
            dt, size = bench_bfs(kernel, ctx, start, args.states)
            times.append(dt)
        results[name] = (rate, statistics.median(times), size)
        print(
            f"{name:>5}: neighbors {rate:>10.0f} calls/s | "
            f"bfs over {size} maps in {statistics.median(times)*1000:.1f} ms"
        )
    if len(results) == 2:
        speedup = results["pure"][1] / results["fast"][1]
        print(f"compiled kernel speedup on the budgeted search: {speedup:.1f}x")


if __name__ == "__main__":
    main()
