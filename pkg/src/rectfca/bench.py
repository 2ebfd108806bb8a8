"""Timing of the attribute-reduction pass and the enumerator under both kernel backends."""

from __future__ import annotations

import time

from . import kernels
from .attr_reduction import ColumnStore, greedy_attr_reduce
from .lattice import enumerate_concepts
from .synthetic import one_hot_context, random_context, random_extents


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def run(
    m: int = 8124,
    k: int = 512,
    seed: int = 0,
    backends: tuple[str, ...] | None = None,
    word_bits: int | None = None,
    enum_shape: tuple[int, int] = (200, 20),
) -> list[dict]:
    """One row per backend: reduction time, enumeration time, reduction outcome.

    A warm-up call on a tiny input runs first so numba compile time is not
    counted.
    """
    ctx = one_hot_context(m, seed=seed, word_bits=word_bits)
    extents = random_extents(ctx, k, seed=seed)
    small = random_context(*enum_shape, density=0.3, seed=seed, word_bits=word_bits)
    rows = []
    for name in backends or kernels.available():
        tiny = random_context(6, 5, seed=1, word_bits=word_bits)
        greedy_attr_reduce(ColumnStore(tiny), random_extents(tiny, 3), 0, backend=name)
        enumerate_concepts(tiny, backend=name)

        report, t_reduce = _timed(lambda: greedy_attr_reduce(ColumnStore(ctx), extents, 0, backend=name))
        lattice, t_enum = _timed(lambda: enumerate_concepts(small, backend=name))
        rows.append(
            {
                "backend": name,
                "shape": f"{ctx.m}x{ctx.n}",
                "extents": len(extents),
                "reduce_seconds": round(t_reduce, 4),
                "removed": report.n_removed,
                "enum_shape": f"{small.m}x{small.n}",
                "concepts": len(lattice),
                "enum_seconds": round(t_enum, 4),
            }
        )
    return rows
