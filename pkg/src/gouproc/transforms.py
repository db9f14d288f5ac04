"""Elementary series transforms: log-returns, aggregation, differencing."""

from __future__ import annotations

import logging

import numpy as np

__all__ = ["log_returns", "aggregate_returns", "difference"]

logger = logging.getLogger(__name__)


def log_returns(prices: np.ndarray) -> np.ndarray:
    """ln(P_{k+1} / P_k); requires strictly positive prices."""
    p = np.asarray(prices, dtype=float)
    if p.size < 2:
        raise ValueError("need at least 2 observations")
    if np.any(p <= 0.0):
        raise ValueError("prices must be strictly positive")
    return np.diff(np.log(p))


def aggregate_returns(returns: np.ndarray, m: int) -> np.ndarray:
    """Sum nonoverlapping blocks of ``m`` returns.

    A trailing remainder of fewer than ``m`` observations is dropped
    with a warning.
    """
    r = np.asarray(returns, dtype=float)
    if m < 1:
        raise ValueError("block size m must be >= 1")
    n_blocks, rem = divmod(r.size, m)
    if n_blocks == 0:
        raise ValueError("series shorter than one block")
    if rem:
        logger.warning("aggregate_returns: dropping %d trailing observations", rem)
    return r[: n_blocks * m].reshape(n_blocks, m).sum(axis=1)


def difference(x: np.ndarray, lag: int = 1) -> np.ndarray:
    """x_{k+lag} - x_k."""
    v = np.asarray(x, dtype=float)
    if lag < 1:
        raise ValueError("lag must be >= 1")
    if v.size <= lag:
        raise ValueError("series shorter than lag")
    return v[lag:] - v[:-lag]
