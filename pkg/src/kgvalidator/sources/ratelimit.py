"""Per-handle request pacing."""

from __future__ import annotations

import threading
import time
from collections import deque


class RateLimiter:
    """Sliding-window limiter: at most max_per_second acquisitions per second.

    clock and sleep are injectable so tests can drive a virtual clock.
    Thread-safe; one limiter serializes the outbound requests of one handle.
    """

    def __init__(self, max_per_second: float, clock=time.monotonic, sleep=time.sleep):
        if max_per_second <= 0:
            raise ValueError("rate limit must be > 0")
        self.max_per_second = max_per_second
        self._clock = clock
        self._sleep = sleep
        self._stamps: deque[float] = deque()
        self._lock = threading.Lock()

    def acquire(self):
        """Block until issuing one more request keeps the window under limit."""
        with self._lock:
            while True:
                now = self._clock()
                while self._stamps and now - self._stamps[0] >= 1.0:
                    self._stamps.popleft()
                if len(self._stamps) < self.max_per_second:
                    self._stamps.append(now)
                    return
                wait = 1.0 - (now - self._stamps[0])
                self._sleep(max(wait, 0.001))
