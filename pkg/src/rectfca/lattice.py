"""Concept enumeration, the lattice order, meet and join."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence, overload

import numpy as np

from . import kernels
from .bitvec import BitVec, pack_bools
from .context import FormalConcept, FormalContext
from .errors import InvalidArgumentError, ResourceLimitError

DEFAULT_CAP = 1_000_000


class ConceptList(Sequence[FormalConcept]):
    """An ordered, duplicate-free list of concepts of one context.

    Packed extent and intent matrices are kept alongside so that rectangle
    arithmetic can run on whole lists at once.
    """

    def __init__(self, concepts: Iterable[FormalConcept], m: int, n: int):
        items: list[FormalConcept] = []
        seen: dict[BitVec, int] = {}
        for c in concepts:
            if c.extent.length != m or c.intent.length != n:
                raise InvalidArgumentError("concept dimensions do not match the list")
            if c.extent in seen:
                continue
            seen[c.extent] = len(items)
            items.append(c)
        self._items = tuple(items)
        self._index = seen
        self.m = m
        self.n = n
        self._bool_cache: tuple[np.ndarray, np.ndarray] | None = None

    @classmethod
    def _from_arrays(cls, extents: np.ndarray, intents: np.ndarray, m: int, n: int) -> ConceptList:
        # trusted path from the enumerator: no duplicate check needed, but
        # building the index costs the same, so reuse __init__
        return cls(
            (FormalConcept(BitVec(m, e), BitVec(n, i)) for e, i in zip(extents, intents)), m, n
        )

    @overload
    def __getitem__(self, i: int) -> FormalConcept: ...
    @overload
    def __getitem__(self, i: slice) -> ConceptList: ...

    def __getitem__(self, i):
        if isinstance(i, slice):
            return ConceptList(self._items[i], self.m, self.n)
        return self._items[i]

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[FormalConcept]:
        return iter(self._items)

    def __contains__(self, c: object) -> bool:
        return isinstance(c, FormalConcept) and self._index.get(c.extent) is not None and (
            self._items[self._index[c.extent]] == c
        )

    def index(self, c: FormalConcept, start: int = 0, stop: int | None = None) -> int:
        i = self._index.get(c.extent)
        if i is None or self._items[i] != c:
            raise ValueError(f"{c!r} is not in the list")
        return i

    def find_extent(self, extent: BitVec) -> int | None:
        return self._index.get(extent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ConceptList):
            return self._items == other._items
        return NotImplemented

    def __repr__(self) -> str:
        return f"ConceptList({len(self)} concepts)"

    def bool_matrices(self) -> tuple[np.ndarray, np.ndarray]:
        """``(E, B)`` with ``E[k, g]`` = g in extent k and ``B[k, a]`` = a in intent k."""
        if self._bool_cache is None:
            ext = np.zeros((len(self), self.m), dtype=bool)
            ints = np.zeros((len(self), self.n), dtype=bool)
            for k, c in enumerate(self._items):
                ext[k] = c.extent.to_bools()
                ints[k] = c.intent.to_bools()
            self._bool_cache = (ext, ints)
        return self._bool_cache

    def extents(self) -> list[BitVec]:
        return [c.extent for c in self._items]

    def canonical(self) -> ConceptList:
        return ConceptList(sorted(self._items, key=canonical_key), self.m, self.n)

    def subset(self, indices: Iterable[int]) -> ConceptList:
        return ConceptList((self._items[i] for i in indices), self.m, self.n)


def canonical_key(c: FormalConcept) -> int:
    return c.extent.to_int()


def _as_list(ctx: FormalContext, concepts: Iterable[FormalConcept]) -> ConceptList:
    if isinstance(concepts, ConceptList) and concepts.m == ctx.m and concepts.n == ctx.n:
        return concepts
    return ConceptList(concepts, ctx.m, ctx.n)


def enumerate_concepts(ctx: FormalContext, cap: int = DEFAULT_CAP, backend: str | None = None) -> ConceptList:
    """All concepts of ``ctx`` in canonical order (extent read as an integer, ascending).

    Uses Close-by-One over the packed columns with an explicit stack, so the
    recursion depth never exceeds the number of attributes.
    """
    k = kernels.get(backend)
    full = np.ascontiguousarray(ctx.all_objects().words)
    cols = np.ascontiguousarray(ctx.cols)
    extents, intents, overflow = k.cbo(cols, full, ctx.n, cap)
    if overflow:
        raise ResourceLimitError(f"more than {cap} concepts; raise the cap to enumerate them all")
    order = _extent_order(extents)
    intents_packed = pack_bools(intents[order], ctx.word_bits)
    return ConceptList._from_arrays(extents[order], intents_packed, ctx.m, ctx.n)


def _extent_order(extents: np.ndarray) -> np.ndarray:
    if extents.shape[1] == 0:
        return np.arange(extents.shape[0])
    # np.lexsort treats its last key as primary; the last word is most significant
    return np.lexsort(tuple(extents[:, w] for w in range(extents.shape[1])))


def brute_force_concepts(ctx: FormalContext) -> ConceptList:
    """Closures of every attribute subset, deduplicated. Exponential; tests only."""
    if ctx.n > 20:
        raise ResourceLimitError("power-set enumeration is limited to 20 attributes")
    table = ctx.incidence
    seen: dict[int, FormalConcept] = {}
    for mask in range(1 << ctx.n):
        sel = np.array([(mask >> a) & 1 for a in range(ctx.n)], dtype=bool)
        ext = table[:, sel].all(axis=1) if sel.any() else np.ones(ctx.m, dtype=bool)
        key = int(sum(1 << g for g in np.flatnonzero(ext)))
        if key not in seen:
            intent = table[ext].all(axis=0) if ext.any() else np.ones(ctx.n, dtype=bool)
            seen[key] = FormalConcept(
                BitVec.from_bools(ext, ctx.word_bits), BitVec.from_bools(intent, ctx.word_bits)
            )
    return ConceptList((seen[k] for k in sorted(seen)), ctx.m, ctx.n)


def leq(c1: FormalConcept, c2: FormalConcept) -> bool:
    if c1.extent.length != c2.extent.length or c1.intent.length != c2.intent.length:
        raise InvalidArgumentError("concepts come from contexts of different shape")
    return c1.extent.issubset(c2.extent)


def meet(ctx: FormalContext, c1: FormalConcept, c2: FormalConcept) -> FormalConcept:
    """Greatest lower bound: (X1 & X2, (X1 & X2)*)."""
    _check_pair(ctx, c1, c2)
    ext = c1.extent & c2.extent
    return FormalConcept(ext, ctx.derive_objects(ext))


def join(ctx: FormalContext, c1: FormalConcept, c2: FormalConcept) -> FormalConcept:
    """Least upper bound: ((B1 & B2)*, B1 & B2)."""
    _check_pair(ctx, c1, c2)
    intent = c1.intent & c2.intent
    return FormalConcept(ctx.derive_attrs(intent), intent)


def top(ctx: FormalContext) -> FormalConcept:
    return ctx.concept_from_extent(ctx.all_objects())


def bottom(ctx: FormalContext) -> FormalConcept:
    return ctx.concept_from_intent(ctx.all_attributes())


def _check_pair(ctx: FormalContext, c1: FormalConcept, c2: FormalConcept) -> None:
    for c in (c1, c2):
        if c.extent.length != ctx.m or c.intent.length != ctx.n:
            raise InvalidArgumentError(f"{c!r} does not belong to a {ctx.m}x{ctx.n} context")


def require_full_lattice(ctx: FormalContext, concepts: Iterable[FormalConcept] | None) -> ConceptList:
    """The full lattice of ``ctx``; if ``concepts`` is given it must be exactly that."""
    full = enumerate_concepts(ctx)
    if concepts is None:
        return full
    given = _as_list(ctx, concepts)
    if len(given) != len(full) or any(c not in full for c in given):
        raise InvalidArgumentError(
            f"expected the full lattice ({len(full)} concepts), got {len(given)} concepts"
        )
    return given

