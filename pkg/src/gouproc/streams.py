"""Reproducible random streams.

A master seed is split into independent substreams keyed by a task label
and an optional index.  Results are therefore identical no matter how
work is scheduled across workers: each unit of work owns a stream that
depends only on (seed, label, index), never on execution order.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["substream", "poisson_event_times"]


def _label_key(label: str) -> int:
    # Stable across processes; Python's hash() is salted per run.
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def substream(seed: int, label: str, index: int | None = None) -> np.random.Generator:
    """Return a Generator for the (seed, label, index) substream."""
    entropy = [int(seed), _label_key(label)]
    if index is not None:
        entropy.append(int(index))
    return np.random.default_rng(np.random.SeedSequence(entropy))


def poisson_event_times(lam: float, t_max: float, rng: np.random.Generator) -> np.ndarray:
    """Event times of a unit-rate-``lam`` Poisson process on [0, t_max].

    Draws exponential inter-arrival gaps until the horizon is passed, so
    the same stream state always yields the same event set.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    times = []
    t = 0.0
    # Expected count is lam * t_max; draw in blocks to limit Python looping.
    block = max(16, int(lam * t_max * 1.5) + 16)
    while True:
        gaps = rng.exponential(1.0 / lam, size=block)
        for g in gaps:
            t += g
            if t > t_max:
                return np.array(times)
            times.append(t)
