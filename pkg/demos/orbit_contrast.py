"""Two free groups acting on the disc, one summable orbit and one not.

GAMMA3 and LAMBDA2 are both free on two integer matrix generators and
produce orbits of identical combinatorial shape (sphere sizes 4 * 3^(L-1)).
Metrically they behave very differently: the GAMMA3 orbit approaches the
boundary fast enough that the sphere sums sigma_L = sum (1 - |point|)
form a summable series, while for LAMBDA2 they do not.  The packaged
thresholds turn the ratio sigma_{L+1}/sigma_L into a verdict.
"""

import sys

from pickdisc.fuchsian import (
    LAMBDA2,
    blaschke_diagnostics,
    load_blaschke_thresholds,
    orbit_points,
    separation_estimate,
)


def main(depth=9):
    thresholds = load_blaschke_thresholds()
    print(f"calibrated ratio thresholds: converging below "
          f"{thresholds['theta_converging']:.6f}, diverging above "
          f"{thresholds['theta_diverging']:.6f}\n")

    gamma = orbit_points(0j, depth)
    lam = orbit_points(0j, depth, preset=LAMBDA2)

    print(f"{'L':>2} {'size':>7} {'sigma GAMMA3':>13} {'sigma LAMBDA2':>13}")
    for lg, ll in zip(gamma.levels, lam.levels):
        print(f"{lg.length:>2} {lg.size:>7} {lg.sigma:>13.6f} {ll.sigma:>13.6f}")

    for name, table in (("GAMMA3", gamma), ("LAMBDA2", lam)):
        d = blaschke_diagnostics(table)
        tail = ", ".join(f"{r:.4f}" for r in d.ratios[-d.window:])
        print(f"\n{name}: last ratios [{tail}] -> {d.verdict}")

    sep = separation_estimate(0j, 8)
    print(f"\nsmallest pseudo-hyperbolic distance from 0 to its GAMMA3 orbit: "
          f"{sep:.12f}")
    print("that gap is what makes point configurations near the orbit readable")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 9)
