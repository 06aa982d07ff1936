"""Seeded random streams.

Streams come from numpy's counter-based Philox generator. A stream key is
derived from ``(seed, *parts)`` with blake2b, so the same seed, model and
index always select the same stream regardless of generation order.
"""

import hashlib
import struct

import numpy as np

SEED_MASK = (1 << 64) - 1


def derive_seed(seed: int, *parts: int | str) -> int:
    """64-bit stream key for ``seed`` combined with any labels or indices."""
    digest = hashlib.blake2b(digest_size=8, person=b"netmetric-rng")
    digest.update(struct.pack("<Q", int(seed) & SEED_MASK))
    for part in parts:
        encoded = part.encode("utf-8") if isinstance(part, str) else struct.pack("<q", int(part))
        digest.update(struct.pack("<I", len(encoded)))
        digest.update(encoded)
    return int.from_bytes(digest.digest(), "little")


def make_rng(seed: int, *parts: int | str) -> np.random.Generator:
    """Independent generator for the stream identified by ``(seed, *parts)``."""
    return np.random.Generator(np.random.Philox(key=derive_seed(seed, *parts)))
