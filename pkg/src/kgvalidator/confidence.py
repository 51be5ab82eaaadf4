"""Confidence scoring: weighted aggregation of per-source evidence.

A triple's confidence sums the similarity between the graph's value and each
source's value, weighted by the source weights and normalized by the weight
sum, so only weight ratios matter.  An instance's confidence is the mean of
its triple confidences, and the instance is valid when that mean strictly
exceeds the threshold.

Weights are kept raw and divided by their sum at scoring time.  When the user
sets no weights every source gets raw weight 1.0, which makes the uniform
weighted score bit-for-bit equal to the unweighted score divided by the
number of sources (storing 1/m per source would round differently).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import EmptyAttributeSpaceError, NegativeWeightError
from .similarity import SimilarityFunction, similarity

DEFAULT_THRESHOLD = 0.5


@dataclass(frozen=True)
class SourceRegistry:
    """The ordered sources a run validates against, with their raw weights."""

    sources: tuple[str, ...]
    raw_weights: tuple[float, ...]
    defaulted: bool

    def __post_init__(self):
        if not self.sources:
            raise ValueError("at least one source is required")
        if len(set(self.sources)) != len(self.sources):
            raise ValueError("duplicate source ids")
        if len(self.raw_weights) != len(self.sources):
            raise ValueError("one weight per source is required")
        for i, w in enumerate(self.raw_weights):
            if w < 0:
                raise NegativeWeightError(i)
        if sum(self.raw_weights) <= 0:
            raise ValueError("weight sum must be positive")

    @classmethod
    def create(cls, sources: Sequence[str], weights: Optional[Sequence[float]] = None) -> "SourceRegistry":
        """Build a registry; without weights every source weighs 1/m."""
        sources = tuple(sources)
        if weights is None or all(w == 0 for w in weights):
            if weights is not None:
                for i, w in enumerate(weights):
                    if w < 0:
                        raise NegativeWeightError(i)
            return cls(sources=sources, raw_weights=(1.0,) * len(sources), defaulted=True)
        return cls(sources=sources, raw_weights=tuple(float(w) for w in weights), defaulted=False)

    @property
    def m(self) -> int:
        return len(self.sources)

    @property
    def w_sum(self) -> float:
        return sum(self.raw_weights)

    @property
    def weights(self) -> list[float]:
        """Normalized weights summing to 1; exactly 1/m each when defaulted."""
        if self.defaulted:
            return [1.0 / self.m] * self.m
        return normalize_weights(self.raw_weights)


def normalize_weights(raw: Optional[Sequence[float]], m: Optional[int] = None) -> list[float]:
    """Scale raw weights to sum 1; unset or all-zero weights become 1/m each."""
    if raw is not None:
        for i, w in enumerate(raw):
            if w < 0:
                raise NegativeWeightError(i)
    if raw is None or len(raw) == 0 or all(w == 0 for w in raw):
        count = m if m is not None else (len(raw) if raw else 0)
        if not count:
            raise ValueError("cannot default weights without a source count")
        return [1.0 / count] * count
    total = sum(raw)
    return [w / total for w in raw]


@dataclass(frozen=True)
class SourceEvidence:
    """What one source contributed for one triple."""

    source_id: str
    value: Optional[str]  # best-matching raw value, None when absent
    sim: float
    matched: bool  # instance found in the source at all
    error: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "sourceId": self.source_id,
            "value": self.value,
            "sim": self.sim,
            "matched": self.matched,
            "error": self.error,
        }


@dataclass(frozen=True)
class TripleScore:
    property: str
    subject: str
    kg_value: str
    per_source: tuple[SourceEvidence, ...]
    unweighted: float
    weighted: float


@dataclass(frozen=True)
class InstanceScore:
    subject: str
    triples: tuple[TripleScore, ...]
    confidence: float
    valid: bool
    threshold: float
    match_errors: dict[str, str] = field(default_factory=dict)


def triple_confidence_unweighted(
    kg_value: str,
    evidences: Sequence[Optional[str]],
    f: SimilarityFunction,
) -> float:
    """Sum of per-source similarities; a missing evidence value adds 0."""
    total = 0.0
    for value in evidences:
        if value is not None:
            total += similarity(kg_value, value, f)
    return total


def score_triple(
    subject: str,
    prop: str,
    kg_values: Sequence[str],
    evidences: Sequence[SourceEvidence],
    registry: SourceRegistry,
) -> TripleScore:
    """Assemble a TripleScore from already-computed per-source evidence."""
    if len(evidences) != registry.m:
        raise ValueError("one evidence entry per source is required")
    unweighted = 0.0
    weighted = 0.0
    for evidence, weight in zip(evidences, registry.raw_weights):
        unweighted += evidence.sim
        weighted += evidence.sim * weight
    return TripleScore(
        property=prop,
        subject=subject,
        kg_value=kg_values[0],
        per_source=tuple(evidences),
        unweighted=unweighted,
        weighted=weighted / registry.w_sum,
    )


def triple_confidence(
    kg_value: str,
    evidences: Sequence[Optional[str]],
    f: SimilarityFunction,
    registry: SourceRegistry,
    subject: str = "",
    prop: str = "",
) -> TripleScore:
    """Score one triple against per-source evidence values.

    evidences holds one optional raw value per registry source; None means
    the source contributed nothing (no match, or property absent) and scores
    a similarity of 0 while its weight stays in the normalization sum.
    """
    if len(evidences) != registry.m:
        raise ValueError("one evidence value per source is required")
    per_source = []
    for source_id, value in zip(registry.sources, evidences):
        sim = similarity(kg_value, value, f) if value is not None else 0.0
        per_source.append(
            SourceEvidence(source_id=source_id, value=value, sim=sim, matched=value is not None)
        )
    return score_triple(subject, prop, [kg_value], per_source, registry)


def best_evidence_sim(
    kg_values: Sequence[str],
    source_values: Sequence[str],
    f: SimilarityFunction,
) -> tuple[float, Optional[str]]:
    """Best similarity over the cross product of values, with its source value.

    Multi-valued attributes score by their best-agreeing pair.
    """
    best = 0.0
    best_value: Optional[str] = None
    for sv in source_values:
        for kv in kg_values:
            sim = similarity(kv, sv, f)
            if best_value is None or sim > best:
                best = sim
                best_value = sv
    return best, best_value


def instance_confidence(
    triples: Sequence[TripleScore],
    threshold: float = DEFAULT_THRESHOLD,
    subject: Optional[str] = None,
    match_errors: Optional[dict[str, str]] = None,
) -> InstanceScore:
    """Mean of the weighted triple confidences, classified strictly above t."""
    if not triples:
        raise EmptyAttributeSpaceError("instance has no scored attributes")
    confidence = sum(t.weighted for t in triples) / len(triples)
    return InstanceScore(
        subject=subject if subject is not None else triples[0].subject,
        triples=tuple(triples),
        confidence=confidence,
        valid=confidence > threshold,
        threshold=threshold,
        match_errors=dict(match_errors or {}),
    )
