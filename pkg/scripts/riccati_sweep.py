"""How often each Riccati route finds the strictly orthogonal P for random matrices.

    python3 scripts/riccati_sweep.py --trials 500 --dims 2 3 4 5
"""
import argparse
import time
from collections import Counter

import numpy as np

from hhd_kit.linear_hhd import (
    NonConvergenceError,
    RiccatiError,
    SolverOptions,
    solve_2x2,
    solve_riccati,
    symmetric_split,
)


def sweep(n: int, trials: int, rng) -> dict:
    routes = Counter()
    newton_hits = failures = 0
    worst = 0.0
    t0 = time.perf_counter()
    for _ in range(trials):
        a = rng.uniform(-5, 5, (n, n))
        try:
            d, rep = solve_riccati(a)
        except NonConvergenceError:
            failures += 1
            continue
        routes[rep.route] += 1
        worst = max(worst, rep.residual_norm)
        try:
            nd, _ = solve_riccati(a, SolverOptions(method="newton", seed=symmetric_split(a).p))
            ref = solve_2x2(a).p if n == 2 else d.p
            newton_hits += np.abs(nd.p - ref).max() <= 1e-6
        except RiccatiError:
            pass
    return {
        "n": n,
        "routes": dict(routes),
        "newton_from_split": newton_hits,
        "failures": failures,
        "worst_residual": worst,
        "seconds": time.perf_counter() - t0,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'n':>3} {'newton':>8} {'fail':>5} {'residual':>10} {'sec':>6}  routes")
    for n in args.dims:
        r = sweep(n, args.trials, rng)
        print(
            f"{r['n']:>3} {r['newton_from_split']:>4}/{args.trials:<3} {r['failures']:>5} "
            f"{r['worst_residual']:>10.1e} {r['seconds']:>6.2f}  {r['routes']}"
        )


if __name__ == "__main__":
    main()
