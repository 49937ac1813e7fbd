"""Monte Carlo 1- and 2-level statistics for the five groups against their closed forms."""

import argparse
import time

import numpy as np

from lowlying.rmt import ORTHOGONAL, SymmetryGroup, empirical_levels, predicted_1level, predicted_2level
from lowlying.testfns import fejer_pair


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, default=40)
    ap.add_argument("--samples", type=int, default=10**4)
    ap.add_argument("--sigma", type=float, default=0.5)
    ap.add_argument("--sigma2", type=float, default=0.25)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--solver", choices=("lapack", "qr"), default="lapack")
    args = ap.parse_args()
    F1, F2 = fejer_pair(args.sigma), fejer_pair(args.sigma2)
    seeds = np.random.SeedSequence(args.seed).spawn(len(SymmetryGroup))
    print("group,statistic,empirical,stderr,predicted,z,seconds")
    for seed, g in zip(seeds, SymmetryGroup):
        t0 = time.perf_counter()
        specs = [(F1, None)] + ([(F2, F2)] if g in ORTHOGONAL else [])
        est = empirical_levels(g, args.N, args.samples, specs, np.random.default_rng(seed), solver=args.solver)
        preds = [predicted_1level(g, F1)] + ([predicted_2level(g, F2, F2)] if g in ORTHOGONAL else [])
        dt = time.perf_counter() - t0
        for name, e, p in zip(("1-level", "2-level"), est, preds):
            print(f"{g.value},{name},{e.mean:.5f},{e.stderr:.5f},{p:.5f},{(e.mean - p) / e.stderr:+.2f},{dt:.1f}")


if __name__ == "__main__":
    main()
