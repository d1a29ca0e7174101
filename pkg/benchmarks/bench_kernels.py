"""Time the Cython kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import time

from bookcross import graph as G
from bookcross.kernels import backends


def cases():
    rng = random.Random(7)
    dense = G.Graph.from_edges([(u, v) for u in range(7) for v in range(u + 1, 7) if rng.random() < 0.6], 7)
    cr = [("K6", G.complete_graph(6)), ("K3,3", G.complete_bipartite(3, 3)), ("G(7,0.6)", dense)]
    minors = [("K7 > K5", G.complete_graph(7), G.complete_graph(5)),
              ("cube > K4", G.cube_graph(), G.complete_graph(4)),
              ("C8 > K4 (no)", G.cycle_graph(8), G.complete_graph(4))]
    return cr, minors


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = backends()
    cr, minors = cases()
    tasks = []
    for name, g in cr:
        es = list(g.edges)
        tasks.append((f"cr1 {name}", lambda m, g=g, es=es: m.cr1_search(g.n, es)[0]))
        tasks.append((f"cr2 {name}", lambda m, g=g, es=es: m.cr2_search(g.n, es)[0]))
    for name, g, h in minors:
        tasks.append((f"minor {name}", lambda m, g=g, h=h: m.minor_labels(list(g.adj_masks), list(h.adj_masks)) is not None))
    names = list(mods)
    print("task".ljust(20) + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in tasks:
        row, answers = [], set()
        for n in names:
            sec, out = timed(lambda: fn(mods[n]), args.repeat)
            row.append(sec)
            answers.add(out)
        if len(answers) != 1:
            raise SystemExit(f"backends disagree on {label}: {answers}")
        line = label.ljust(20) + "".join(f"{s * 1000:10.2f}ms" for s in row)
        if len(row) > 1:
            line += f"{row[0] / row[1]:11.1f}x"
        print(line)
    if "cython" not in mods:
        print("(compiled kernels not built; only the Python backend was timed)")


if __name__ == "__main__":
    main()
