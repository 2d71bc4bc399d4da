"""Tour of the disc geometry helpers.

Covers the pseudo-hyperbolic distance rho, the point-swapping maps
phi_a, solving for the unique disc automorphism through three points,
and the rigidity matcher that reads a labeled triple back out of an
unlabeled point cloud by distances alone.
"""

import random

from pickdisc.hypgeo import (
    moebius_through_three_points,
    phi_a,
    rho,
    triple_rigidity_match,
)


def main():
    rng = random.Random(3)

    a, z = 0.3 + 0.2j, -0.4 + 0.1j
    print(f"rho({a}, {z}) = {rho(a, z):.6f}")
    print(f"phi_a swaps: phi_a(a, 0) = {phi_a(a, 0j):.6f}, phi_a(a, a) = {phi_a(a, a):.1f}")
    err = abs(phi_a(a, phi_a(a, z)) - z)
    print(f"involution check |phi_a(a, phi_a(a, z)) - z| = {err:.2e}")

    src = (0.1 + 0.1j, -0.3j, 0.5)
    dst = tuple(phi_a(a, s) for s in src)
    g = moebius_through_three_points(src, dst)
    worst = max(abs(g(s) - d) for s, d in zip(src, dst))
    extra = abs(g(0.2 - 0.2j) - phi_a(a, 0.2 - 0.2j))
    print(f"\nthree-point solve recovers phi_a on its samples: max error {worst:.2e}")
    print(f"and agrees with phi_a at a fourth point: {extra:.2e}")

    # distances are a fingerprint: shuffle the triple into a cloud with a
    # decoy point and the matcher still finds which point is which
    triple = [complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)) for _ in range(3)]
    cloud = triple[::-1] + [0.05 + 0.55j]
    sigma = triple_rigidity_match(triple, cloud, delta=1e-6)
    print(f"\nshuffled cloud indices recovered for the triple: {sigma}")
    assert [cloud[s] for s in sigma] == triple
    print("every labeled point found its unlabeled twin")


if __name__ == "__main__":
    main()
