"""Compiled versus pure-Python kernels: stabilization and the burning test.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import random
import timeit

from sandpile_trees import kernels
from sandpile_trees.dynamics import maximal_stable
from sandpile_trees.tree import build_tree

CASES = [(3, 6), (3, 9), (4, 5), (5, 4)]


def workloads(d, h, rng):
    g, _ = build_tree(d, h)
    n = g.num_vertices
    random_pile = [rng.randrange(0, 4 * d) for _ in range(n)]
    tall = [0] * n
    tall[0] = 50 * n
    top = list(maximal_stable(g).heights)
    return g, {"stabilize random": random_pile, "stabilize root pile": tall}, top


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the Python backend is available")
    rng = random.Random(0)
    header = f"{'tree':>8} {'N':>6} {'workload':>20} " + " ".join(f"{b:>10}" for b in backends)
    print(header + ("     speedup" if len(backends) > 1 else ""))
    for d, h in CASES:
        g, piles, top = workloads(d, h, rng)
        rows = [(name, lambda b, p=p: kernels.stabilize_fifo(g, p, b)) for name, p in piles.items()]
        rows.append(("burn maximal", lambda b: kernels.burn(g, top, b)))
        for name, fn in rows:
            times = [min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat))
                     for b in backends]
            line = f"{f'({d},{h})':>8} {g.num_vertices:>6} {name:>20} "
            line += " ".join(f"{t * 1e3:>8.2f}ms" for t in times)
            if len(times) > 1:
                line += f" {times[1] / times[0]:>10.1f}x"
            print(line)


if __name__ == "__main__":
    main()
