"""Write the bundled Maass sample file.

No published coefficient table is bundled, so the sample is a synthetic
form with the spectral parameter of the first even Maass form for SL(2, Z)
and lambda(p) = 2 cos(theta_p), theta_p uniform, seed 0.
"""

from pathlib import Path

from lowlying.maass import format_maass, synthetic_maass

OUT = Path(__file__).resolve().parents[1] / "src" / "lowlying" / "data" / "maass_sample.txt"


def main() -> None:
    phi = synthetic_maass(seed=0, P=10_000)
    header = (
        "# Synthetic stand-in for the first even Maass form (t = 13.7797513519).\n"
        "# lambda(p) = 2 cos(theta_p), theta_p ~ U[0, pi], numpy default_rng(0).\n"
        "# These are NOT the Hecke eigenvalues of an automorphic form.\n"
    )
    OUT.write_text(header + format_maass(phi), encoding="utf-8")
    print(f"wrote {len(phi.primes)} primes to {OUT}")


if __name__ == "__main__":
    main()
