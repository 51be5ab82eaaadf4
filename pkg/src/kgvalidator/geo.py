"""Great-circle distances on the mean-radius sphere."""

from __future__ import annotations

import math

from .errors import CoordinateRangeError

EARTH_RADIUS_M = 6_371_000.0


def haversine_m(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Distance in meters between two (lat, lon) pairs in degrees.

    Raises CoordinateRangeError when a coordinate is outside [-90, 90] /
    [-180, 180].
    """
    for lat, lon in (a, b):
        if not (math.isfinite(lat) and -90.0 <= lat <= 90.0):
            raise CoordinateRangeError(f"latitude out of range: {lat}")
        if not (math.isfinite(lon) and -180.0 <= lon <= 180.0):
            raise CoordinateRangeError(f"longitude out of range: {lon}")

    lat1, lon1 = math.radians(a[0]), math.radians(a[1])
    lat2, lon2 = math.radians(b[0]), math.radians(b[1])
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2.0) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2.0) ** 2
    # Clamp against rounding drift before the square root.
    h = min(1.0, max(0.0, h))
    return 2.0 * EARTH_RADIUS_M * math.asin(math.sqrt(h))
