"""
Slot-addressable random streams.

Each stream is identified by (master seed, replication, stream id). Slots are
grouped in chunks of CHUNK_SLOTS; a chunk is a Philox generator keyed by
SeedSequence([seed, replication, stream_id, chunk_code]) and every slot owns a
fixed run of 64-bit words inside it. Any slot, negative ones included, can be
read without generating the slots before it.
"""

from collections import OrderedDict
from typing import Tuple

import numpy as np

CHUNK_SLOTS = 1024
_CACHE_CHUNKS = 4

ARRIVALS = 0
CHANNELS = 1
SERVICES = 2


def stream_id(leg_code: int, process: int) -> int:
    """Stream id of one process on one leg (uplink code 0, downlink code 1)."""
    return 3 * leg_code + process


def chunk_code(chunk: int) -> int:
    """Map chunk index onto a non-negative key: c >= 0 -> 2c, c < 0 -> -2c - 1."""
    return 2 * chunk if chunk >= 0 else -2 * chunk - 1


class RandomStream:
    """Words for slot t are a pure function of (seed, replication, stream, t)."""

    def __init__(self, seed: int, replication: int, stream: int, words_per_slot: int):
        if words_per_slot < 0:
            raise ValueError("words_per_slot must be >= 0")
        self.seed = int(seed)
        self.replication = int(replication)
        self.stream = int(stream)
        self.words_per_slot = int(words_per_slot)
        self._chunks: "OrderedDict[int, np.ndarray]" = OrderedDict()

    @property
    def key(self) -> Tuple[int, int, int]:
        return self.seed, self.replication, self.stream

    def _chunk(self, chunk: int) -> np.ndarray:
        words = self._chunks.get(chunk)
        if words is not None:
            self._chunks.move_to_end(chunk)
            return words
        entropy = [self.seed, self.replication, self.stream, chunk_code(chunk)]
        bit_generator = np.random.Philox(np.random.SeedSequence(entropy))
        words = bit_generator.random_raw(CHUNK_SLOTS * self.words_per_slot)
        words = np.asarray(words, dtype=np.uint64).reshape(CHUNK_SLOTS, self.words_per_slot)
        self._chunks[chunk] = words
        if len(self._chunks) > _CACHE_CHUNKS:
            self._chunks.popitem(last=False)
        return words

    def slot_words(self, t: int) -> np.ndarray:
        """The words owned by slot t (read-only view)."""
        if self.words_per_slot == 0:
            return np.zeros(0, dtype=np.uint64)
        chunk, position = divmod(int(t), CHUNK_SLOTS)
        return self._chunk(chunk)[position]
