"""Named seed sub-streams.

All randomness in a run flows from one root seed; each consumer draws from
its own named stream so adding a consumer never perturbs the others. The
derivation is a stable hash, identical across platforms and processes.
"""

from __future__ import annotations

import hashlib


def substream(seed: int, name: str) -> int:
    """Derive a 63-bit child seed for the named consumer."""
    digest = hashlib.sha256(f"{seed}/{name}".encode()).digest()
    return int.from_bytes(digest[:8], "big") & (2**63 - 1)
