"""Deterministic seed derivation and per-purpose random streams.

Every stochastic operation in the package draws from a PCG64 stream whose
seed is derived from ``(master_seed, purpose_tag, index...)`` through
BLAKE2b.  Purpose tags keep independent operations on independent streams
even when they share a master seed, and the construction is stable across
platforms and Python versions, so all determinism guarantees reduce to
"same master seed, same results".
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(master: int, *parts) -> int:
    """Collapse a master seed plus context parts into a 64-bit child seed.

    Parts may be ints or strings; each is length- and type-prefixed before
    hashing so distinct tag tuples can never collide by concatenation.
    """
    h = hashlib.blake2b(digest_size=8)
    h.update((int(master) & _MASK64).to_bytes(8, "big"))
    for part in parts:
        if isinstance(part, (int, np.integer)):
            h.update(b"i" + (int(part) & _MASK64).to_bytes(8, "big"))
        else:
            raw = str(part).encode("utf-8")
            h.update(b"s" + len(raw).to_bytes(4, "big") + raw)
    return int.from_bytes(h.digest(), "big")


def generator(master: int, *parts) -> np.random.Generator:
    """A fresh PCG64 generator keyed by (master, parts)."""
    return np.random.Generator(np.random.PCG64(derive_seed(master, *parts)))
