"""Independent reference implementations used only to check the package.

Everything here is deliberately written from scratch (full-matrix edit
distance, atan2 haversine, literal sum/mean loops for the confidence
formulas) so tests compare two code paths, not one path with itself.
"""

import math


def levenshtein_matrix(a: str, b: str) -> int:
    """Textbook full-matrix dynamic-programming edit distance."""
    rows, cols = len(a) + 1, len(b) + 1
    d = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        d[i][0] = i
    for j in range(cols):
        d[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(
                d[i - 1][j] + 1,
                d[i][j - 1] + 1,
                d[i - 1][j - 1] + cost,
            )
    return d[rows - 1][cols - 1]


def haversine_atan2(a, b, radius_m=6_371_000.0):
    """Haversine distance via the atan2 formulation."""
    lat1, lon1, lat2, lon2 = map(math.radians, (a[0], a[1], b[0], b[1]))
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return radius_m * 2 * math.atan2(math.sqrt(h), math.sqrt(max(0.0, 1.0 - h)))


def triple_confidence_sum(sims):
    """Unweighted triple confidence: plain accumulation."""
    total = 0.0
    for s in sims:
        total = total + s
    return total


def triple_confidence_weighted(sims, weights):
    """Weighted triple confidence: sum of sim*weight over the weight sum."""
    assert len(sims) == len(weights)
    numerator = 0.0
    w_sum = 0.0
    for s, w in zip(sims, weights):
        numerator = numerator + s * w
        w_sum = w_sum + w
    return numerator / w_sum


def instance_confidence_mean(triple_confidences):
    """Instance confidence: arithmetic mean of the triple confidences."""
    total = 0.0
    for c in triple_confidences:
        total = total + c
    return total / len(triple_confidences)
