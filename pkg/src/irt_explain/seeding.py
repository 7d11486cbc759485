"""Deterministic seed derivation.

Every stage and pool member draws its randomness from a seed derived by
stable hashing, so results do not depend on scheduling or call order.
"""

from __future__ import annotations

import hashlib


def derive_seed(master: int, label: str) -> int:
    """Derive a 63-bit child seed from a master seed and a text label.

    Uses SHA-256 so the mapping is stable across processes and platforms
    (unlike the interpreter's salted ``hash``).
    """
    digest = hashlib.sha256(f"{master}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1
