"""String similarity kernels used for evidence comparison.

All kernels are symmetric, map into [0, 1], and apply a value normalizer
before comparing, so "Hotel  ALPENHOF " and "hotel alpenhof" count as equal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .normalize import default_normalizer, normalize

SIMILARITY_KINDS = ("levenshtein-normalized", "exact", "token-jaccard")


@dataclass(frozen=True)
class SimilarityFunction:
    kind: str = "levenshtein-normalized"
    normalizer: str = "generic"

    def __post_init__(self):
        if self.kind not in SIMILARITY_KINDS:
            raise ValueError(f"unknown similarity kind: {self.kind}")


def default_similarity(prop: str) -> SimilarityFunction:
    """Default kernel for a property: edit similarity over its normalizer."""
    return SimilarityFunction("levenshtein-normalized", default_normalizer(prop))


def levenshtein_distance(a: str, b: str) -> int:
    """Minimum number of single-character edits turning a into b."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)

    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a):
        current = [i + 1]
        for j, cb in enumerate(b):
            insertion = previous[j + 1] + 1
            deletion = current[j] + 1
            substitution = previous[j] + (ca != cb)
            current.append(min(insertion, deletion, substitution))
        previous = current
    return previous[-1]


def similarity(a: str, b: str, f: SimilarityFunction) -> float:
    """Similarity of two raw values under kernel f, in [0, 1].

    Both values are normalized first.  Two empty normalized values compare
    as identical (1.0); exactly one empty compares as 0.0.
    """
    na = normalize(a, f.normalizer)
    nb = normalize(b, f.normalizer)
    if not na and not nb:
        return 1.0
    if not na or not nb:
        return 0.0

    if f.kind == "exact":
        return 1.0 if na == nb else 0.0
    if f.kind == "token-jaccard":
        ta, tb = set(na.split()), set(nb.split())
        return len(ta & tb) / len(ta | tb)
    distance = levenshtein_distance(na, nb)
    return 1.0 - distance / max(len(na), len(nb))
