"""Encode word subsets as point clouds and test translate equivalence.

A finite set A of group words becomes a configuration of disc points:
three satellite points per orbit word in a fixed window, plus one
anchor per element of A.  Two subsets get the same configuration up to
a disc automorphism exactly when one is a left translate of the other,
and the geometric test recovers the translating word without ever
looking at labels.
"""

from pickdisc.encode import (
    build_configuration,
    geometric_equivalence,
    make_params,
    word_search_equivalence,
)
from pickdisc.fuchsian import Word

W = Word.from_string


def main():
    params = make_params()
    offsets = ", ".join(f"{abs(s):.4f}" for s in params.satellites)
    print(f"window {params.window}, eps = {params.eps:.6f}, "
          f"satellite offset radii {offsets}")

    subset = [W("e"), W("a"), W("bA")]
    config = build_configuration(subset, params)
    print(f"\nencoded {{e, a, bA}}: {len(config.points)} points "
          f"({3 * 161} satellites + {len(subset)} anchors)")

    g = W("b")
    translated = [g * w for w in subset]
    other = build_configuration(translated, params)
    print(f"translate by b: {{{', '.join(str(w) for w in translated)}}}")

    geo = geometric_equivalence(config, other, params, search_length=2)
    ws = word_search_equivalence(subset, translated, params, search_length=2)
    print(f"geometric test: equivalent={geo.equivalent}, witness={geo.witness_word}")
    print(f"word search:    equivalent={ws.equivalent}, witness={ws.witness_word}")

    # a same-size subset that is not a translate is rejected by both modes
    decoy = [W("e"), W("a"), W("Ab")]
    miss = geometric_equivalence(
        config, build_configuration(decoy, params), params, search_length=2
    )
    print(f"\nagainst {{e, a, Ab}}: equivalent={miss.equivalent} "
          f"(note: {miss.note})")


if __name__ == "__main__":
    main()
