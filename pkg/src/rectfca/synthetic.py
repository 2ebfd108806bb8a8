"""Seeded random contexts and extent families for tests and benchmarks."""

from __future__ import annotations

import numpy as np

from .bitvec import BitVec
from .context import FormalContext

# attribute-group sizes of a 22-feature one-hot table with 115 columns
MUSHROOM_GROUPS = (6, 4, 10, 2, 9, 4, 3, 2, 12, 2, 5, 4, 4, 9, 9, 2, 4, 3, 5, 9, 6, 1)


def random_context(m: int, n: int, density: float = 0.4, seed: int = 0, word_bits: int | None = None) -> FormalContext:
    """Independent Bernoulli(``density``) incidences."""
    rng = np.random.default_rng(seed)
    return FormalContext(rng.random((m, n)) < density, word_bits=word_bits)


def one_hot_context(
    m: int = 8124, groups=MUSHROOM_GROUPS, seed: int = 0, word_bits: int | None = None
) -> FormalContext:
    """Each object picks exactly one attribute from every group, with skewed
    per-group frequencies, mimicking a scaled categorical data set."""
    rng = np.random.default_rng(seed)
    n = int(sum(groups))
    table = np.zeros((m, n), dtype=bool)
    offset = 0
    for size in groups:
        weights = rng.dirichlet(np.full(size, 0.7))
        picks = rng.choice(size, size=m, p=weights)
        table[np.arange(m), offset + picks] = True
        offset += size
    return FormalContext(table, word_bits=word_bits)


def random_extents(ctx: FormalContext, k: int, seed: int = 0, max_attrs: int = 3) -> list[BitVec]:
    """Up to ``k`` distinct closed extents, as closures of random small attribute sets."""
    rng = np.random.default_rng(seed)
    out: dict[BitVec, None] = {}
    attempts = 0
    while len(out) < k and attempts < 50 * k + 100:
        attempts += 1
        size = int(rng.integers(1, max_attrs + 1)) if ctx.n else 0
        attrs = rng.choice(ctx.n, size=min(size, ctx.n), replace=False).tolist() if ctx.n else []
        out.setdefault(ctx.derive_attrs(attrs), None)
    return list(out)
