"""Deterministic named random substreams.

All randomness in the package flows from a single 64-bit seed. Components
draw from named substreams so that, for example, graph generation and chain
simulation stay reproducible independently of each other.
"""

import hashlib
import random


def substream(seed: int, name: str) -> random.Random:
    """Return a ``random.Random`` derived deterministically from (seed, name)."""
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))
