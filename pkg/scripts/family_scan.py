"""Term-by-term family densities for a range of weights and supports."""

import argparse

from lowlying.density import d1_family, d2_family, ranking
from lowlying.hecke import dim_Sk, hecke_family
from lowlying.maass import bundled_maass
from lowlying.testfns import fejer_pair


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmin", type=int, default=12)
    ap.add_argument("--kmax", type=int, default=48)
    ap.add_argument("--sigma", type=float, default=0.125)
    ap.add_argument("--precision", type=int, default=2500)
    args = ap.parse_args()
    phi = bundled_maass()
    F = fejer_pair(args.sigma)
    print("k,family,total,gamma,nu1,nu2,plus_one_diagonal,verdict,residual,d2_total,d2_first")
    for k in range(args.kmin, args.kmax + 1, 2):
        if dim_Sk(k) == 0:
            continue
        forms = hecke_family(k, args.precision)
        d2 = d2_family("PHI_X_SYM2F", k, F, F, forms, phi)
        for fam in ("PHI_X_F", "PHI_X_SYM2F"):
            r = d1_family(fam, k, F, forms, phi)
            print(
                f"{k},{fam},{r.total:.5f},{r.gamma_term:.5f},{r.nu1_term:.5f},{r.nu2_term:.5f},"
                f"{r.breakdown['contrib_nu2_diag_one']:.5f},{r.verdict.label},{r.residual:.5f},"
                f"{d2.total:.5f},{ranking(d2)[0].value}"
            )


if __name__ == "__main__":
    main()
