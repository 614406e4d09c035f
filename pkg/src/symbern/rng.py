"""Seeded substreams for Monte Carlo sampling.

Draw ``i`` belongs to block ``i // BLOCK``.  Block ``b`` under seed ``s`` is
generated by PCG64 seeded with ``SeedSequence(s, spawn_key=(b,))`` and always
produces a full block, truncated afterwards.  Results therefore depend only
on (seed, n) and never on how blocks are spread over workers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

BLOCK = 4096


def substream(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def blocked(n: int, seed: int, draw_block: Callable[[np.random.Generator], np.ndarray],
            workers: int = 1) -> np.ndarray:
    """Concatenate ``draw_block(substream(seed, b))`` over the blocks covering ``n`` draws."""
    if n < 1:
        raise ValueError("need at least one draw")
    nblocks = -(-n // BLOCK)
    job = lambda b: draw_block(substream(seed, b))  # noqa: E731
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(nblocks)))
    else:
        parts = [job(b) for b in range(nblocks)]
    return np.concatenate(parts)[:n]
