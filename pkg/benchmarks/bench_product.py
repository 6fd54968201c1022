"""Compare the compiled and pure-Python product kernels on the meeting model.

    python3 benchmarks/bench_product.py --G 3 --cap 2 --repeat 3
"""

import argparse
import time

import numpy as np

from pnmc.expand import build_system
from pnmc.grouplib import make_meeting_model, meeting_instance
from pnmc.product import KERNEL, explore, flatten


def run(G: int, cap: int, repeat: int) -> None:
    model = make_meeting_model(G, cap)
    flat = flatten(build_system(model, meeting_instance(G, cap)))
    children = [leaf.lts for leaf in flat.children]
    kernels = ["python"] + (["compiled"] if KERNEL == "compiled" else [])
    results = {}
    for kernel in kernels:
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            states, lts = explore(children, flat.vectors, kernel=kernel)
            best = min(best, time.perf_counter() - t0)
        results[kernel] = (best, states, lts)
        print(f"{kernel:>8}: {lts.num_states} states, {lts.num_transitions} transitions, best {best:.3f}s")
    if len(results) == 2:
        (tp, sp, lp), (tc, sc, lc) = results["python"], results["compiled"]
        same = np.array_equal(sp, sc) and lp == lc
        print(f"identical output: {same}; speed-up {tp / tc:.1f}x")
    else:
        print("compiled kernel not built; only the Python kernel was timed")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--G", type=int, default=3)
    ap.add_argument("--cap", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    run(args.G, args.cap, args.repeat)
