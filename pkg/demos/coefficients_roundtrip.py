"""Walk through the coefficient layer: a-series, b-series, and back.

A kernel here is a power series sum a_n u^n with a_0 = 1.  Its
reciprocal-side coefficients b_n are defined by the recursion
a_n = sum_k b_k a_{n-k}, and the interesting kernels are the ones
where every b_n is nonnegative.  This script builds a log-convex
sequence from successor ratios, converts it both ways, and finishes
with the all-ones kernel where everything is exact.
"""

import random
from fractions import Fraction

from pickdisc.seqkernel import (
    CoefficientSequence,
    RatioSequence,
    a_from_b,
    b_from_a,
    check_admissible_log_convex,
    log_convex_from_ratios,
)


def main():
    rng = random.Random(12)
    draws = tuple(rng.uniform(0.2, 0.95) for _ in range(47))
    a = log_convex_from_ratios(RatioSequence(draws), 48)

    print("log-convex sequence from 47 successor ratios:")
    for n in (0, 1, 2, 5, 20, 47):
        print(f"  a_{n:<2} = {a.terms[n]:.10f}")

    # the tail condition (last ratio within 1e-6 of 1) is a property of
    # the truncation, not of the family: the same draws cut at 16 terms
    # still show a visible gap
    short = check_admissible_log_convex(log_convex_from_ratios(RatioSequence(draws[:15]), 16))
    full = check_admissible_log_convex(a)
    print(f"\nverdict at 16 terms: {short.verdict_at_truncation} "
          f"(last ratio {short.last_ratio:.7f})")
    print(f"verdict at 48 terms: {full.verdict_at_truncation} "
          f"(last ratio {full.last_ratio:.16f})")

    b = b_from_a(a)
    print(f"\nsmallest b_n: {min(b.terms):.3e}  (nonnegative up to rounding)")

    back = a_from_b(b, 48)
    worst = max(abs(x - y) for x, y in zip(a.terms, back.terms))
    print(f"roundtrip a -> b -> a, worst coefficient error: {worst:.3e}")

    # the all-ones kernel is the fixed point of the whole story, and with
    # Fractions the roundtrip is literally exact
    ones = CoefficientSequence.ones(10, exact=True)
    b_exact = b_from_a(ones)
    print("\nall-ones kernel, exact arithmetic:")
    print(f"  b = {[str(t) for t in b_exact.terms[:4]]} ...")
    assert b_exact.terms == (Fraction(1),) + (Fraction(0),) * 8
    assert a_from_b(b_exact, 10).terms == ones.terms
    print("  roundtrip is exact: True")


if __name__ == "__main__":
    main()
