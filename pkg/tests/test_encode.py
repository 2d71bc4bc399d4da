"""Tests for subset encodings and the two equivalence procedures.

The word-search procedure is exact combinatorics and serves as the
oracle for the geometric procedure: on every pair tried here the two
must return the same verdict, and (nonempty sets having trivial
stabilizers in a free group) the same witness word.
"""

import math

import numpy as np
import pytest

from pickdisc.encode import (
    Configuration,
    EncodingError,
    EncodingParams,
    build_configuration,
    geometric_equivalence,
    make_params,
    word_search_equivalence,
)
from pickdisc.fuchsian import GAMMA3, Word, enumerate_words, word_to_matrix
from pickdisc.hypgeo import moebius_from_matrix, rho

PARAMS = make_params()  # entry-3 preset, window 4, base 0

W = Word.from_string


# ---------------------------------------------------------------------------
# parameter selection
# ---------------------------------------------------------------------------

def test_default_eps_is_half_the_frozen_separation():
    assert PARAMS.eps == pytest.approx(0.41602514716892186, abs=1e-15)
    assert PARAMS.delta == pytest.approx(PARAMS.eps / 400.0)
    assert PARAMS.window == 4
    assert PARAMS.base == 0j
    assert hash(PARAMS) == hash(make_params())


def test_satellites_hug_the_base_with_distinct_distances():
    dists = PARAMS.pairwise_distances()
    assert len(dists) == 6
    for i in range(6):
        for j in range(i + 1, 6):
            assert abs(dists[i] - dists[j]) >= PARAMS.delta
    for s in PARAMS.satellites:
        assert rho(s, PARAMS.base) < PARAMS.eps / 5.0
    assert PARAMS.quadruple()[0] == PARAMS.base


def test_make_params_validation_and_overrides():
    with pytest.raises(ValueError):
        make_params(window=0)
    with pytest.raises(ValueError):
        make_params(base=1.0)
    shallow = make_params(separation_level=1)
    assert shallow.eps == pytest.approx(0.5 * 3.0 / math.sqrt(13.0), abs=1e-15)


# ---------------------------------------------------------------------------
# building configurations
# ---------------------------------------------------------------------------

def test_configuration_counts_and_labels():
    subset = [W("e"), W("a"), W("bA")]
    config = build_configuration(subset, PARAMS)
    n_words = 2 * 3**4 - 1
    assert len(config) == 3 * n_words + len(subset)
    fam3 = [text for text, fam in config.labels if fam == 3]
    assert sorted(fam3) == sorted(w.to_string() for w in subset)
    per_word = {}
    for text, fam in config.labels:
        per_word.setdefault(text, []).append(fam)
    assert all(fams[:3] == [0, 1, 2] for fams in per_word.values())
    assert len(per_word) == n_words


def test_anchor_points_are_orbit_points():
    config = build_configuration([], PARAMS)
    anchors = {
        text: pt for (text, fam), pt in zip(config.labels, config.points) if fam == 0
    }
    for text in ("e", "a", "Ab", "baBA"):
        ref = moebius_from_matrix(word_to_matrix(W(text), GAMMA3))(PARAMS.base)
        assert anchors[text] == pytest.approx(ref, abs=1e-12)


def test_build_rejects_words_outside_the_window():
    with pytest.raises(ValueError):
        build_configuration([W("aaaaa")], PARAMS)
    with pytest.raises(TypeError):
        build_configuration(["a"], PARAMS)


def test_oversized_eps_breaks_cluster_isolation():
    small = make_params(window=2)
    bad = EncodingParams(
        preset=small.preset,
        base=small.base,
        eps=1.9,
        satellites=small.satellites,
        delta=small.delta,
        window=2,
    )
    with pytest.raises(EncodingError):
        build_configuration([], bad)


def test_coincident_satellites_are_rejected():
    small = make_params(window=2)
    s = small.satellites
    bad = EncodingParams(
        preset=small.preset,
        base=small.base,
        eps=small.eps,
        satellites=(s[0], s[0], s[2]),
        delta=small.delta,
        window=2,
    )
    with pytest.raises(EncodingError):
        build_configuration([], bad)


def test_configuration_validation_and_permutation():
    config = build_configuration([W("a")], PARAMS)
    with pytest.raises(ValueError):
        Configuration(points=config.points, labels=config.labels[:-1], params=PARAMS)
    with pytest.raises(ValueError):
        Configuration(points=np.array([1.0 + 0j]), labels=(("e", 0),), params=PARAMS)
    order = list(range(len(config)))[::-1]
    flipped = config.permuted(order)
    assert flipped.labels[0] == config.labels[-1]
    assert flipped.points[0] == config.points[-1]
    with pytest.raises(ValueError):
        config.permuted(order[:-1])


# ---------------------------------------------------------------------------
# word-search equivalence
# ---------------------------------------------------------------------------

def test_word_search_finds_a_translate():
    verdict = word_search_equivalence(
        [W("e"), W("a")], [W("b"), W("ba")], PARAMS, search_length=2
    )
    assert verdict.equivalent
    assert verdict.witness_word == W("b")
    assert verdict.mode == "word-search"
    assert verdict.witness_map is None


def test_word_search_rejects_non_translates():
    verdict = word_search_equivalence(
        [W("e"), W("a")], [W("a"), W("A")], PARAMS, search_length=2
    )
    assert not verdict.equivalent
    assert verdict.witness_word is None


def test_word_search_cardinality_shortcut_and_empty_sets():
    assert not word_search_equivalence([W("e")], [W("e"), W("a")], PARAMS, 2).equivalent
    empty = word_search_equivalence([], [], PARAMS, 2)
    assert empty.equivalent
    assert empty.witness_word == Word.identity()


def test_word_search_window_rules():
    with pytest.raises(ValueError):
        word_search_equivalence([W("e")], [W("e")], PARAMS, search_length=5)
    with pytest.raises(ValueError):
        word_search_equivalence([W("e")], [W("e")], PARAMS, search_length=-1)
    with pytest.raises(ValueError):
        # both sets stick out of the core window for this search length
        word_search_equivalence([W("aa")], [W("bb")], PARAMS, search_length=3)
    # one deep set is fine as long as the other fits the core
    assert word_search_equivalence([W("e")], [W("aaa")], PARAMS, 3).equivalent


# ---------------------------------------------------------------------------
# geometric equivalence
# ---------------------------------------------------------------------------

def _both(set_a, set_b, search_length=2):
    config_a = build_configuration(set_a, PARAMS)
    config_b = build_configuration(set_b, PARAMS)
    geo = geometric_equivalence(config_a, config_b, PARAMS, search_length)
    ws = word_search_equivalence(set_a, set_b, PARAMS, search_length)
    assert geo.equivalent == ws.equivalent
    assert geo.witness_word == ws.witness_word
    return geo


def test_geometric_translate_with_witness_map():
    geo = _both([W("e"), W("a")], [W("b"), W("ba")])
    assert geo.equivalent
    assert geo.witness_word == W("b")
    ref = moebius_from_matrix(word_to_matrix(W("b"), GAMMA3))
    for z in (0j, 0.3, 0.2 - 0.4j):
        assert geo.witness_map(z) == pytest.approx(ref(z), abs=1e-9)


def test_geometric_rejects_non_translates():
    geo = _both([W("e"), W("a")], [W("a"), W("A")])
    assert not geo.equivalent
    assert geo.witness_map is None


def test_geometric_handles_deep_targets():
    # the image set is allowed to reach the full window when the source
    # fits the core
    geo = _both([W("e"), W("a")], [W("bb"), W("bba")])
    assert geo.equivalent
    assert geo.witness_word == W("bb")


def test_geometric_empty_sets_are_identity_equivalent():
    geo = _both([], [])
    assert geo.equivalent
    assert geo.witness_word == Word.identity()


def test_geometric_singletons():
    assert _both([W("e")], [W("ab")]).equivalent
    assert not _both([W("a")], [W("aa"), W("ab")]).equivalent


def test_geometric_ignores_point_order_and_labels():
    set_a, set_b = [W("e"), W("A")], [W("B"), W("BA")]
    config_a = build_configuration(set_a, PARAMS)
    config_b = build_configuration(set_b, PARAMS)
    rng = np.random.default_rng(42)
    shuffled = config_b.permuted(rng.permutation(len(config_b)))
    masked = Configuration(
        points=np.array(shuffled.points),
        labels=(("", 0),) * len(shuffled),
        params=PARAMS,
    )
    geo = geometric_equivalence(config_a, masked, PARAMS, search_length=2)
    assert geo.equivalent
    assert geo.witness_word == W("B")


def test_geometric_requires_matching_params():
    other = make_params(window=3)
    config = build_configuration([], PARAMS)
    with pytest.raises(ValueError):
        geometric_equivalence(config, config, other, search_length=1)
    with pytest.raises(ValueError):
        geometric_equivalence(config, config, PARAMS, search_length=9)


def test_verdict_serialization():
    geo = _both([W("e")], [W("a")])
    payload = geo.as_dict()
    assert payload["equivalent"] is True
    assert payload["witness_word"] == "a"
    assert isinstance(payload["witness_map"]["alpha"], list)
    assert payload["window"] == 4
    assert "window" in payload["note"]

    miss = word_search_equivalence([W("e")], [W("b")], PARAMS, 0)
    assert not miss.equivalent
    assert miss.as_dict()["witness_word"] is None
    assert miss.as_dict()["witness_map"] is None
