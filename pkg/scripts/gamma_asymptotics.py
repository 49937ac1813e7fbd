"""Gamma-factor term with R = k^4 for both phi families, by two quadrature routes."""

import argparse
import math

from lowlying.gammafactors import gamma_term_A, mu_params
from lowlying.maass import FIRST_EVEN_T
from lowlying.satake import FamilyTag
from lowlying.testfns import fejer_pair


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sigma", type=float, default=0.5)
    ap.add_argument("--weights", default="12,24,50,100,200,400,800,1600")
    args = ap.parse_args()
    F = fejer_pair(args.sigma)
    print("family,k,fourier,direct,scaled_error")
    for family in (FamilyTag.PHI_X_SYM2F, FamilyTag.PHI_X_F):
        for k in (int(x) for x in args.weights.split(",")):
            params = mu_params(family, k, FIRST_EVEN_T)
            a = gamma_term_A(params, F, float(k) ** 4)
            b = gamma_term_A(params, F, float(k) ** 4, method="direct")
            print(f"{family.name},{k},{a:.8f},{b:.8f},{(a / F.ghat0 - 1) * math.log(k):.4f}")


if __name__ == "__main__":
    main()
