"""Steer one ratio sequence toward another, one prefix at a time.

turbulence_step(s, t, n1, eps) returns a multiplier sequence g and a
root exponent N: the N-th power of g moves the first n1 + 1 ratios of
s exactly onto t, a single correction coordinate keeps the books
balanced, and g itself stays within an l1 budget eps of doing nothing.
Chaining steps with growing n1 and a shrinking budget walks s over to
t without any single step being violent.  Some requests are simply
impossible: if the correction coordinate cannot stay inside (0, 1)
the step refuses instead of cheating.
"""

from pickdisc.seqkernel import (
    RatioSequence,
    ScalingStepError,
    cumulative_product_deviation,
    turbulence_step,
)


def main():
    s = [0.5] * 6
    t = [0.7, 0.65, 0.6, 0.55, 0.5]
    print("start :", s)
    print("target:", t)
    print()

    budgets = [0.3, 0.15, 0.08, 0.04, 0.02]
    for n1, eps in enumerate(budgets):
        g, n_exp = turbulence_step(
            RatioSequence(tuple(s)), RatioSequence(tuple(t)), n1, eps
        )
        deviation, _ = cumulative_product_deviation(g, len(g))
        s = [gk**n_exp * sk for gk, sk in zip(g, s)] + s[len(g):]
        print(f"step n1={n1}: eps={eps:<5} N={n_exp:<3} step size {deviation:.4f}  "
              f"s -> {[round(x, 4) for x in s]}")

    matched = all(abs(sk - tk) <= 1e-12 for sk, tk in zip(s, t))
    print(f"\ntarget prefix matched exactly: {matched}")
    print("note how each step parks its correction just past the prefix,")
    print("and the next step sweeps it along")

    # a steep downward move with a large follow-up ratio is out of reach
    steep_s = RatioSequence((0.9, 0.8, 0.7))
    steep_t = RatioSequence((0.3, 0.35))
    try:
        turbulence_step(steep_s, steep_t, 0, 0.5)
    except ScalingStepError as exc:
        print(f"\ninfeasible request is refused: {exc}")


if __name__ == "__main__":
    main()
