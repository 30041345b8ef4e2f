"""Deterministic random streams built on counter-based (Philox) keys.

A stream is identified by (master_seed, stream_id). Substreams are derived
by hashing string/int labels into a fresh 64-bit stream id, so any part of a
computation can be given its own independent stream without coordination.
The same (master_seed, stream_id) pair always yields the same draws,
regardless of platform, thread count, or what other streams were consumed.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_stream_id(parent: int, *labels: int | str) -> int:
    """Hash a parent stream id plus labels into a new 64-bit stream id."""
    text = "%d/%s" % (parent & _MASK64, "/".join(str(x) for x in labels))
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


@dataclass(frozen=True)
class RandomSource:
    """A reproducible random stream: a master seed plus a substream selector.

    Value-semantic and cheap to copy; safe to hand to concurrent workers.
    """

    master_seed: int
    stream_id: int = 0

    def substream(self, *labels: int | str) -> "RandomSource":
        """Return an independent child stream named by `labels`."""
        return RandomSource(self.master_seed, derive_stream_id(self.stream_id, *labels))

    def generator(self) -> np.random.Generator:
        """Fresh numpy Generator positioned at the start of this stream."""
        key = np.array(
            [self.master_seed & _MASK64, self.stream_id & _MASK64], dtype=np.uint64
        )
        return np.random.Generator(np.random.Philox(key=key))
