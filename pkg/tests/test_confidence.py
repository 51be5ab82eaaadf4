import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kgvalidator.confidence import (
    SourceRegistry,
    instance_confidence,
    normalize_weights,
    triple_confidence,
    triple_confidence_unweighted,
)
from kgvalidator.errors import EmptyAttributeSpaceError, NegativeWeightError
from kgvalidator.similarity import SimilarityFunction

from oracles import instance_confidence_mean, triple_confidence_sum, triple_confidence_weighted

EXACT = SimilarityFunction("exact", "generic")
LEV = SimilarityFunction("levenshtein-normalized", "generic")


class TestNormalizeWeights:
    def test_unset_defaults_to_uniform(self):
        assert normalize_weights(None, m=3) == [1 / 3, 1 / 3, 1 / 3]

    def test_division_by_sum(self):
        assert normalize_weights([2, 1, 1]) == [0.5, 0.25, 0.25]

    def test_already_normalized(self):
        assert normalize_weights([0.5, 0.5]) == [0.5, 0.5]

    def test_all_zero_defaults(self):
        assert normalize_weights([0, 0], m=2) == [0.5, 0.5]

    def test_negative_rejected(self):
        with pytest.raises(NegativeWeightError) as err:
            normalize_weights([1, -0.1, 2])
        assert err.value.index == 1

    @given(raw=st.lists(st.floats(min_value=0.001, max_value=100), min_size=1, max_size=8))
    def test_sums_to_one(self, raw):
        assert math.isclose(sum(normalize_weights(raw)), 1.0, abs_tol=1e-12)


class TestUnweightedTripleConfidence:
    def test_all_sources_agree(self):
        assert triple_confidence_unweighted("x", ["x", "x", "x"], EXACT) == 3.0

    def test_single_match_others_absent(self):
        assert triple_confidence_unweighted("x", ["x", None, None], EXACT) == 1.0

    def test_partial_similarity(self):
        got = triple_confidence_unweighted("kitten", ["sitting", None], LEV)
        assert got == pytest.approx(1 - 3 / 7)


class TestWeightedTripleConfidence:
    def test_one_of_three_equal_weights(self):
        registry = SourceRegistry.create(["a", "b", "c"])
        score = triple_confidence("x", ["x", None, None], EXACT, registry)
        assert score.weighted == pytest.approx(1 / 3)

    def test_all_match_is_one(self):
        registry = SourceRegistry.create(["a", "b", "c"], weights=[0.2, 0.3, 0.5])
        score = triple_confidence("x", ["x", "x", "x"], EXACT, registry)
        assert score.weighted == pytest.approx(1.0)

    def test_dominant_weight(self):
        registry = SourceRegistry.create(["a", "b", "c"], weights=[0.8, 0.1, 0.1])
        score = triple_confidence("x", ["x", None, None], EXACT, registry)
        assert score.weighted == pytest.approx(0.8)

    def test_per_source_entries_recorded(self):
        registry = SourceRegistry.create(["a", "b"])
        score = triple_confidence("x", ["x", None], EXACT, registry)
        assert [e.source_id for e in score.per_source] == ["a", "b"]
        assert score.per_source[1].value is None
        assert score.per_source[1].sim == 0.0
        assert not score.per_source[1].matched

    def test_evidence_count_must_match(self):
        registry = SourceRegistry.create(["a", "b"])
        with pytest.raises(ValueError):
            triple_confidence("x", ["x"], EXACT, registry)


class TestInstanceConfidence:
    def _score(self, weighted):
        registry = SourceRegistry.create(["a"])
        return triple_confidence("x", ["x" if weighted else None], EXACT, registry)

    def test_mean_and_strict_threshold(self):
        registry = SourceRegistry.create(["a", "b"])
        triples = [
            triple_confidence("x", ["x", "x"], EXACT, registry),  # 1.0
            triple_confidence("x", ["x", None], EXACT, registry),  # 0.5
            triple_confidence("x", [None, None], EXACT, registry),  # 0.0
        ]
        score = instance_confidence(triples, threshold=0.5)
        assert score.confidence == pytest.approx(0.5)
        assert score.valid is False  # strictly greater than t required

    def test_constant_scores(self):
        registry = SourceRegistry.create(["a"])
        triples = [triple_confidence("x", ["x"], EXACT, registry) for _ in range(4)]
        assert instance_confidence(triples).confidence == pytest.approx(1.0)

    def test_single_triple_above_default_threshold(self):
        registry = SourceRegistry.create(["a", "b", "c", "d", "e"])
        score_one = triple_confidence("x", ["x", "x", "x", None, None], EXACT, registry)
        inst = instance_confidence([score_one])  # default t = 0.5
        assert inst.confidence == pytest.approx(0.6)
        assert inst.valid is True

    def test_empty_attribute_space(self):
        with pytest.raises(EmptyAttributeSpaceError):
            instance_confidence([], threshold=0.5)


class TestRegistry:
    def test_defaulted_weights_are_uniform(self):
        registry = SourceRegistry.create(["a", "b", "c"])
        assert registry.weights == [1 / 3, 1 / 3, 1 / 3]
        assert registry.defaulted

    def test_duplicate_sources_rejected(self):
        with pytest.raises(ValueError):
            SourceRegistry.create(["a", "a"])

    def test_negative_weight_rejected(self):
        with pytest.raises(NegativeWeightError):
            SourceRegistry.create(["a", "b"], weights=[1, -1])

    def test_zero_weights_default(self):
        registry = SourceRegistry.create(["a", "b"], weights=[0, 0])
        assert registry.defaulted
        assert registry.raw_weights == (1.0, 1.0)


# --- algebraic properties over random evidence -------------------------------

_sims_grid = st.lists(st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]), min_size=1, max_size=5)


def _registry_and_scores(sims, weights=None):
    sources = [f"s{i}" for i in range(len(sims))]
    registry = SourceRegistry.create(sources, weights)
    # build per-source evidence whose exact-kernel sims are the given grid
    # values, through levenshtein on constructed strings
    return registry


@given(sims=_sims_grid)
def test_uniform_weight_identity_is_exact(sims):
    """Defaulted (uniform) weighting equals the unweighted sum over m, bitwise."""
    from kgvalidator.confidence import SourceEvidence, score_triple

    registry = SourceRegistry.create([f"s{i}" for i in range(len(sims))])
    evidences = [
        SourceEvidence(f"s{i}", "v", sim, matched=True) for i, sim in enumerate(sims)
    ]
    score = score_triple("subj", "prop", ["v"], evidences, registry)
    assert score.weighted == score.unweighted / len(sims)


@given(
    sims=_sims_grid,
    weights_seed=st.integers(min_value=0, max_value=2**30),
    lam=st.sampled_from([0.1, 3.0, 1000.0]),
)
def test_weight_scaling_invariance(sims, weights_seed, lam):
    from kgvalidator.confidence import SourceEvidence, score_triple

    rng = random.Random(weights_seed)
    weights = [rng.uniform(0.01, 5.0) for _ in sims]
    sources = [f"s{i}" for i in range(len(sims))]
    evidences = [SourceEvidence(s, "v", sim, matched=True) for s, sim in zip(sources, sims)]

    base = score_triple("x", "p", ["v"], evidences, SourceRegistry.create(sources, weights))
    scaled = score_triple(
        "x", "p", ["v"], evidences, SourceRegistry.create(sources, [w * lam for w in weights])
    )
    assert abs(base.weighted - scaled.weighted) <= 1e-12


@given(sims=_sims_grid, seed=st.integers(min_value=0, max_value=2**30))
def test_matches_brute_force(sims, seed):
    from kgvalidator.confidence import SourceEvidence, score_triple

    rng = random.Random(seed)
    weights = [rng.uniform(0.0, 5.0) for _ in sims]
    if sum(weights) == 0:
        weights[0] = 1.0
    sources = [f"s{i}" for i in range(len(sims))]
    evidences = [SourceEvidence(s, "v", sim, matched=True) for s, sim in zip(sources, sims)]
    score = score_triple("x", "p", ["v"], evidences, SourceRegistry.create(sources, weights))
    assert score.unweighted == pytest.approx(triple_confidence_sum(sims), abs=1e-9)
    assert score.weighted == pytest.approx(triple_confidence_weighted(sims, weights), abs=1e-9)


@given(
    sims=_sims_grid,
    index=st.integers(min_value=0, max_value=4),
    bump=st.sampled_from([0.25, 0.5]),
)
def test_monotone_in_similarity(sims, index, bump):
    from kgvalidator.confidence import SourceEvidence, score_triple

    index = index % len(sims)
    bumped = list(sims)
    bumped[index] = min(1.0, bumped[index] + bump)
    sources = [f"s{i}" for i in range(len(sims))]
    registry = SourceRegistry.create(sources)

    def weighted(values):
        evidences = [SourceEvidence(s, "v", sim, matched=True) for s, sim in zip(sources, values)]
        return score_triple("x", "p", ["v"], evidences, registry).weighted

    assert weighted(bumped) >= weighted(sims)


@given(sims=_sims_grid, seed=st.integers(min_value=0, max_value=2**30))
def test_permutation_invariance(sims, seed):
    from kgvalidator.confidence import SourceEvidence, score_triple

    rng = random.Random(seed)
    weights = [rng.uniform(0.01, 5.0) for _ in sims]
    order = list(range(len(sims)))
    rng.shuffle(order)

    def weighted(sim_list, weight_list, names):
        evidences = [
            SourceEvidence(n, "v", sim, matched=True) for n, sim in zip(names, sim_list)
        ]
        return score_triple("x", "p", ["v"], evidences, SourceRegistry.create(names, weight_list)).weighted

    names = [f"s{i}" for i in range(len(sims))]
    base = weighted(sims, weights, names)
    permuted = weighted(
        [sims[i] for i in order], [weights[i] for i in order], [names[i] for i in order]
    )
    assert permuted == pytest.approx(base, abs=1e-12)


@given(
    triple_sims=st.lists(_sims_grid, min_size=1, max_size=6),
    threshold=st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]),
)
def test_instance_confidence_matches_mean_oracle(triple_sims, threshold):
    from kgvalidator.confidence import SourceEvidence, score_triple

    m = len(triple_sims[0])
    sources = [f"s{i}" for i in range(m)]
    registry = SourceRegistry.create(sources)
    triples = []
    for sims in triple_sims:
        sims = (sims + [0.0] * m)[:m]
        evidences = [SourceEvidence(s, "v", sim, matched=True) for s, sim in zip(sources, sims)]
        triples.append(score_triple("x", "p", ["v"], evidences, registry))
    inst = instance_confidence(triples, threshold=threshold)
    expected = instance_confidence_mean([t.weighted for t in triples])
    assert inst.confidence == pytest.approx(expected, abs=1e-12)
    assert 0.0 <= inst.confidence <= 1.0 + 1e-12
    assert inst.valid == (inst.confidence > threshold)
