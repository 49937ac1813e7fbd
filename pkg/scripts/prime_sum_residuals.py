"""Residuals of the linear and quadratic prime sums against their limits, R = 10^3 .. 10^10."""

import argparse
import math

from lowlying.primes import linear_target, prime_sum_linear, prime_sum_quadratic, quadratic_target
from lowlying.testfns import fejer_pair


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sigma", type=float, default=0.5)
    ap.add_argument("--max-exponent", type=int, default=10)
    args = ap.parse_args()
    F = fejer_pair(args.sigma)
    print("R,linear_residual,quadratic_residual,linear_times_logR,quadratic_times_logR")
    for e in range(3, args.max_exponent + 1):
        R = 10.0**e
        lin = float(prime_sum_linear(F, 1, R)) - linear_target(F, 1)
        quad = float(prime_sum_quadratic(F, R)) - quadratic_target(F)
        print(f"{R:.0e},{lin:.6f},{quad:.6f},{lin * math.log(R):.4f},{quad * math.log(R):.4f}")


if __name__ == "__main__":
    main()
