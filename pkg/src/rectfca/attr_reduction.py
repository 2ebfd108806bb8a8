"""Attribute reduction preserving a designated family of concept extents.

A column may be deleted when, for every extent ``X`` to preserve, the
intersection of the remaining columns that contain ``X`` is still exactly
``X``. Columns are tested one at a time in a cyclic order and zeroed in a
working copy as soon as they are found removable. Containment tests and
intersections run word by word on the packed columns.

Removability is monotone: a column removable with respect to a set of
active columns stays removable with respect to any superset. A column kept
during the pass therefore remains blocked at the end, and the kept set is
irredundant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .bitvec import BitVec
from .context import FormalContext, SetLike
from .errors import InvalidArgumentError, NotClosedError


class ColumnStore:
    """Mutable column-major working copy of a context.

    Removed columns are zeroed in place and marked inactive; the source
    context is never touched.
    """

    def __init__(self, ctx: FormalContext, word_bits: int | None = None):
        if word_bits is not None:
            ctx = ctx.with_word_bits(word_bits)
        self.source = ctx
        self.m = ctx.m
        self.n = ctx.n
        self.cols = np.array(ctx.cols, copy=True)
        self.active_mask = np.ones(ctx.n, dtype=bool)
        self.full = np.array(ctx.all_objects().words, copy=True)

    @property
    def word_bits(self) -> int:
        return self.source.word_bits

    @property
    def active(self) -> BitVec:
        return BitVec.from_bools(self.active_mask, self.word_bits)

    def copy(self) -> ColumnStore:
        other = object.__new__(ColumnStore)
        other.source = self.source
        other.m, other.n = self.m, self.n
        other.cols = self.cols.copy()
        other.active_mask = self.active_mask.copy()
        other.full = self.full.copy()
        return other

    def column(self, q: int) -> BitVec:
        self._check_index(q)
        return BitVec(self.m, self.cols[q].copy())

    def zero_column(self, q: int) -> None:
        self._check_index(q)
        self.cols[q] = 0
        self.active_mask[q] = False

    def to_context(self) -> FormalContext:
        """The reduced context, with removed columns dropped."""
        return self.source.restrict_attributes(np.flatnonzero(self.active_mask).tolist())

    def _check_index(self, q: int) -> None:
        if not 0 <= q < self.n:
            raise InvalidArgumentError(f"column {q} out of range for {self.n} columns")

    def _objset(self, x: SetLike) -> BitVec:
        return self.source.obj_set(x)


def _extent_words(store: ColumnStore, extents: Iterable[SetLike]) -> np.ndarray:
    rows = [store._objset(x).words for x in extents]
    if not rows:
        return np.zeros((0, store.cols.shape[1]), dtype=store.cols.dtype)
    return np.ascontiguousarray(np.stack(rows))


def validate_extents(store: ColumnStore, extents: Sequence[SetLike]) -> np.ndarray:
    """Packed extents, each checked to be closed in the original context."""
    words = _extent_words(store, extents)
    for i, x in enumerate(extents):
        x = store._objset(x)
        if store.source.close_objects(x) != x:
            raise NotClosedError(i)
    return words


def column_contains_extent(store: ColumnStore, q: int, x: SetLike, backend: str | None = None) -> bool:
    store._check_index(q)
    xw = store._objset(x).words
    k = kernels.get(backend)
    return bool(k.subset_matrix(xw[None, :], store.cols[q : q + 1])[0, 0])


def induced_intension(store: ColumnStore, x: SetLike, backend: str | None = None) -> BitVec:
    """Active columns containing ``x``; may differ from the intent in the source context."""
    xw = np.ascontiguousarray(store._objset(x).words)
    mask = kernels.get(backend).intent_mask(xw, store.cols, store.active_mask)
    return BitVec.from_bools(mask, store.word_bits)


def closure_extent(store: ColumnStore, cols: SetLike, backend: str | None = None) -> BitVec:
    """Intersection of the named columns (all objects when none are named)."""
    mask = store.source.attr_set(cols).to_bools()
    if (mask & ~store.active_mask).any():
        bad = np.flatnonzero(mask & ~store.active_mask).tolist()
        raise InvalidArgumentError(f"columns {bad} have been removed")
    words = kernels.get(backend).meet(store.cols, mask, store.full)
    return BitVec(store.m, np.asarray(words, dtype=store.cols.dtype))


def find_blocking_extent(
    store: ColumnStore, q: int, extents: Sequence[SetLike], backend: str | None = None
) -> int | None:
    """Index of the first extent whose closure breaks without column ``q``, or None."""
    store._check_index(q)
    if not store.active_mask[q]:
        raise InvalidArgumentError(f"column {q} has already been removed")
    words = _extent_words(store, extents)
    k = kernels.get(backend)
    contains = k.subset_matrix(words, store.cols)
    hit = k.blocking_extent(store.cols, store.active_mask, q, words, contains, store.full, False)
    return None if hit < 0 else hit


def is_column_removable(store: ColumnStore, q: int, extents: Sequence[SetLike], backend: str | None = None) -> bool:
    return find_blocking_extent(store, q, extents, backend) is None


@dataclass
class ColumnAudit:
    column: int
    step: int
    removed: bool
    blocking_extent: int | None

    def to_dict(self, names: Sequence[str] | None = None) -> dict:
        d = {
            "column": self.column,
            "step": self.step,
            "removed": self.removed,
            "blocking_extent": self.blocking_extent,
        }
        if names is not None:
            d["name"] = names[self.column]
        return d


@dataclass
class ReductReport:
    removed: BitVec
    kept: BitVec
    start: int
    audit: list[ColumnAudit] = field(default_factory=list)

    @property
    def n_removed(self) -> int:
        return self.removed.count()

    def to_dict(self, names: Sequence[str] | None = None) -> dict:
        label = (lambda q: names[q]) if names is not None else (lambda q: q)
        return {
            "start": self.start,
            "removed": [label(q) for q in self.removed],
            "kept": [label(q) for q in self.kept],
            "audit": [a.to_dict(names) for a in self.audit],
        }


def greedy_attr_reduce(
    store: ColumnStore,
    extents: Sequence[SetLike],
    start: int = 0,
    backend: str | None = None,
) -> ReductReport:
    """One cyclic pass over the columns beginning at ``start``; mutates ``store``.

    Each column is zeroed iff every extent is still regenerated without it at
    that moment.
    """
    n = store.n
    if n and not 0 <= start < n:
        raise InvalidArgumentError(f"start column {start} out of range for {n} columns")
    words = validate_extents(store, extents)
    k = kernels.get(backend)
    # containment against the original columns; zeroed columns are masked out
    # through ``active_mask`` instead of being re-tested
    contains = k.subset_matrix(words, store.cols)
    audit = []
    for step in range(n):
        q = (start + step) % n
        if not store.active_mask[q]:
            audit.append(ColumnAudit(q, step, True, None))
            continue
        # every extent is preserved before this step, and dropping q cannot
        # change the closure of an extent that q does not contain
        hit = k.blocking_extent(store.cols, store.active_mask, q, words, contains, store.full, True)
        if hit < 0:
            store.zero_column(q)
            audit.append(ColumnAudit(q, step, True, None))
        else:
            audit.append(ColumnAudit(q, step, False, int(hit)))
    kept = store.active
    return ReductReport(removed=~kept, kept=kept, start=start, audit=audit)


def reduce_context(
    ctx: FormalContext,
    extents: Sequence[SetLike],
    start: int = 0,
    backend: str | None = None,
    word_bits: int | None = None,
) -> tuple[ReductReport, FormalContext]:
    store = ColumnStore(ctx, word_bits)
    report = greedy_attr_reduce(store, extents, start, backend)
    return report, store.to_context()


def rotation_reducts(
    store: ColumnStore, extents: Sequence[SetLike], backend: str | None = None
) -> list[ReductReport]:
    """One greedy pass per start column, each on its own copy of ``store``.

    Reports are deduplicated by kept set and returned in order of first
    appearance. This does not in general produce every reduct.
    """
    if store.n < 1:
        raise InvalidArgumentError("rotation needs at least one column")
    out: list[ReductReport] = []
    seen: set[BitVec] = set()
    for start in range(store.n):
        report = greedy_attr_reduce(store.copy(), extents, start, backend)
        if report.kept not in seen:
            seen.add(report.kept)
            out.append(report)
    return out


def preserves_extents(ctx: FormalContext, kept: SetLike, extents: Iterable[SetLike]) -> bool:
    """Plain check: every extent equals its closure in the context restricted to ``kept``."""
    sub = ctx.restrict_attributes(kept)
    return all(sub.close_objects(ctx.obj_set(x).to_indices()) == ctx.obj_set(x) for x in extents)
