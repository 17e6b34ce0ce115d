"""Seeded, counter-based random number streams.

All Monte Carlo in the package draws from Philox generators keyed by
``(seed, stream)``.  Philox is counter-based, so a given key reproduces the
same draws no matter how work is scheduled across threads; per-replication
streams just bump the stream index.
"""

from __future__ import annotations

import numpy as np

__all__ = ["philox"]


def philox(seed: int, stream: int = 0) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, stream & 0xFFFFFFFFFFFFFFFF],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
