"""Petersson symbols Delta_k(1, 1) and Delta_k(1, p^2) across weights, as CSV."""

import argparse
import csv
import sys
import time

from lowlying.hecke import dim_Sk, harmonic_weight_average, hecke_family, petersson_delta


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmin", type=int, default=12)
    ap.add_argument("--kmax", type=int, default=80)
    ap.add_argument("--precision", type=int, default=10**5, help="coefficients computed up to this n")
    ap.add_argument("--primes", default="2,3,5")
    args = ap.parse_args()
    primes = [int(p) for p in args.primes.split(",")]
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["k", "dim", "delta_11_minus_1", "k_times_deviation", "dimension_average"] + [f"delta_1_{p}sq" for p in primes] + ["seconds"])
    for k in range(args.kmin + args.kmin % 2, args.kmax + 1, 2):
        if dim_Sk(k) == 0:
            continue
        t0 = time.perf_counter()
        forms = hecke_family(k, args.precision)
        dev = petersson_delta(k, 1, 1, forms) - 1
        row = [k, len(forms), dev, k * dev, harmonic_weight_average(forms)]
        row += [petersson_delta(k, 1, p * p, forms) for p in primes]
        w.writerow(row + [round(time.perf_counter() - t0, 2)])
        sys.stdout.flush()


if __name__ == "__main__":
    main()
