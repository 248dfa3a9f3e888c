"""Time grove enumeration with the compiled kernel and the pure-Python one.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit
from fractions import Fraction

from cpnet import _kernels_py, kernels
from cpnet.dyck import DegenerateMatchingError, all_matchings, standard_network
from cpnet.groves import GROVE_EDGE_CAP
from cpnet.network import cycle_on_nodes


def workloads():
    """A 12-cycle plus, for each n, the largest standard network under the grove cap."""
    rng = random.Random(7)
    out = [("cycle 12", cycle_on_nodes([1] * 12))]
    for n in (4, 5, 6):
        best = None
        for m in all_matchings(n):
            try:
                g, _ = standard_network(m)
            except DegenerateMatchingError:
                continue
            if len(g.edges) <= GROVE_EDGE_CAP and (best is None or len(g.edges) > len(best[1].edges)):
                best = (m, g)
        m, g = best
        cond = {e.id: Fraction(rng.randint(1, 9)) for e in g.edges}
        out.append((f"standard n={n}", standard_network(m, cond)[0]))
    return out


def args_of(g):
    index = {v: k for k, v in enumerate(g.vertices)}
    return g.nv, g.n, [index[e.u] for e in g.edges], [index[e.v] for e in g.edges]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    a = p.parse_args()
    if kernels.BACKEND != "cython":
        print("compiled kernel not built; only the fallback is timed")
    print(f"{'workload':<24}{'edges':>6}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for name, g in workloads():
        args = args_of(g)
        slow = min(timeit.repeat(lambda: _kernels_py.enumerate_groves(*args), number=1, repeat=a.repeat))
        fast = min(timeit.repeat(lambda: kernels.enumerate_groves(*args), number=1, repeat=a.repeat))
        assert kernels.enumerate_groves(*args).keys() == _kernels_py.enumerate_groves(*args).keys()
        print(f"{name:<24}{len(g.edges):>6}{slow:>11.4f}{fast:>11.4f}{slow / fast:>8.1f}x")


if __name__ == "__main__":
    main()
