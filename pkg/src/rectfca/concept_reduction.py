"""Concept reduction preserving the incidence relation.

A set of concepts is *consistent* when the union of their rectangles
``extent x intent`` is exactly the incidence relation, and a *reduction set*
when additionally no member can be dropped. Every concept of the lattice is
then core (in all reduction sets), relatively necessary (in some) or
unnecessary (in none).

Two polynomial classifiers are provided next to a brute-force oracle that
enumerates every reduction set:

* :func:`classify` marks a concept core when some cell of its rectangle is
  covered by no other concept, and otherwise rebuilds the relation from the
  object concepts of objects outside its extent plus the attribute concepts
  of attributes outside its intent. If that family misses a cell, the concept
  is relatively necessary.
* :func:`classify_by_cover` calls a non-core concept unnecessary when its
  rectangle lies inside the union of core and side-covered concepts.

Concepts whose rectangle is empty (empty extent or empty intent) never belong
to a reduction set and are labelled unnecessary.
"""

from __future__ import annotations

import enum
import itertools
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .bitvec import pack_bools
from .context import FormalConcept, FormalContext
from .errors import InvalidArgumentError, ResourceLimitError
from .lattice import ConceptList, _as_list, require_full_lattice

ORACLE_CAP = 16


class ConceptClass(str, enum.Enum):
    CORE = "core"
    RELATIVELY_NECESSARY = "relatively_necessary"
    UNNECESSARY = "unnecessary"


Classification = dict[FormalConcept, ConceptClass]


# ------------------------------------------------------------ rectangle covers


def _validated(ctx: FormalContext, concepts: Iterable[FormalConcept]) -> ConceptList:
    lst = _as_list(ctx, concepts)
    for c in lst:
        ctx.validate_concept(c)
    return lst


def cover_counts(ctx: FormalContext, concepts: Iterable[FormalConcept]) -> np.ndarray:
    """``count[g, a]``: how many of ``concepts`` have cell (g, a) in their rectangle."""
    lst = _as_list(ctx, concepts)
    ext, ints = lst.bool_matrices()
    return ext.T.astype(np.int64) @ ints.astype(np.int64)


def rectangle_union(ctx: FormalContext, concepts: Iterable[FormalConcept]) -> np.ndarray:
    return cover_counts(ctx, concepts) > 0


def is_consistent(ctx: FormalContext, concepts: Iterable[FormalConcept]) -> bool:
    lst = _validated(ctx, concepts)
    return bool(np.array_equal(rectangle_union(ctx, lst), ctx.incidence))


def _has_private_cell(lst: ConceptList, counts: np.ndarray) -> np.ndarray:
    ext, ints = lst.bool_matrices()
    private = (counts == 1).astype(np.int64)
    return np.einsum("kg,ga,ka->k", ext.astype(np.int64), private, ints.astype(np.int64)) > 0


def is_reduction_set(ctx: FormalContext, concepts: Iterable[FormalConcept]) -> bool:
    lst = _validated(ctx, concepts)
    counts = cover_counts(ctx, lst)
    if not np.array_equal(counts > 0, ctx.incidence):
        return False
    # a member is redundant iff each of its cells is covered by another member
    return bool(_has_private_cell(lst, counts).all())


# ------------------------------------------------------------- classification


def core_concepts(ctx: FormalContext, lattice: Iterable[FormalConcept] | None = None) -> ConceptList:
    """Concepts owning a cell that no other concept of the lattice covers.

    This is an exact test, not only a sufficient one: when every cell of a
    concept is covered elsewhere, the rest of the lattice is still consistent
    and some reduction set avoids the concept.
    """
    full = require_full_lattice(ctx, lattice)
    core = _has_private_cell(full, cover_counts(ctx, full))
    return full.subset(np.flatnonzero(core))


def is_side_covered(ctx: FormalContext, c: FormalConcept) -> bool:
    """Whether the intent is a union of intents of objects outside the extent, or dually.

    Only the largest eligible union needs checking: every eligible object
    intent lies inside the intent, so if any subfamily reaches the intent the
    full eligible family does too.
    """
    ctx.validate_concept(c)
    a_words, b_words = c.extent.words, c.intent.words

    outside = ~c.extent.to_bools()
    rows = ctx.rows[outside]
    eligible = rows[((rows & ~b_words) == 0).all(axis=1)] if rows.size else rows
    union = np.bitwise_or.reduce(eligible, axis=0) if len(eligible) else np.zeros_like(b_words)
    if np.array_equal(union, b_words):
        return True

    outside = ~c.intent.to_bools()
    cols = ctx.cols[outside]
    eligible = cols[((cols & ~a_words) == 0).all(axis=1)] if cols.size else cols
    union = np.bitwise_or.reduce(eligible, axis=0) if len(eligible) else np.zeros_like(a_words)
    return bool(np.array_equal(union, a_words))


def _generator_rectangles(ctx: FormalContext):
    """Boolean extents/intents of all object concepts and attribute concepts."""
    table = ctx.incidence.astype(np.int64)
    row_sizes = table.sum(axis=1)
    col_sizes = table.sum(axis=0)
    # x in g** iff row x contains row g; y in a** iff column y contains column a
    obj_ext = (table @ table.T) == row_sizes[:, None]
    attr_int = (table.T @ table) == col_sizes[:, None]
    return obj_ext, ctx.incidence, ctx.incidence.T, attr_int


def complement_family_covers(ctx: FormalContext, c: FormalConcept, _gens=None) -> bool:
    """Whether object concepts of objects outside the extent, together with
    attribute concepts of attributes outside the intent, cover the relation."""
    obj_ext, obj_int, attr_ext, attr_int = _gens if _gens is not None else _generator_rectangles(ctx)
    g_out = ~c.extent.to_bools()
    a_out = ~c.intent.to_bools()
    union = (obj_ext[g_out].T.astype(np.int64) @ obj_int[g_out].astype(np.int64)) > 0
    union |= (attr_ext[a_out].T.astype(np.int64) @ attr_int[a_out].astype(np.int64)) > 0
    return bool(np.array_equal(union, ctx.incidence))


def classify(ctx: FormalContext, lattice: Iterable[FormalConcept] | None = None) -> Classification:
    full = require_full_lattice(ctx, lattice)
    core = _has_private_cell(full, cover_counts(ctx, full))
    gens = _generator_rectangles(ctx)
    out: Classification = {}
    for c, is_core in zip(full, core):
        if is_core:
            out[c] = ConceptClass.CORE
        elif c.is_empty_rectangle or complement_family_covers(ctx, c, gens):
            out[c] = ConceptClass.UNNECESSARY
        else:
            out[c] = ConceptClass.RELATIVELY_NECESSARY
    return out


def classify_by_cover(ctx: FormalContext, lattice: Iterable[FormalConcept] | None = None) -> Classification:
    """Cross-check path: a non-core concept is unnecessary iff core and
    side-covered concepts jointly cover its rectangle."""
    full = require_full_lattice(ctx, lattice)
    core = _has_private_cell(full, cover_counts(ctx, full))
    side = np.array([is_side_covered(ctx, c) for c in full], dtype=bool)
    covering = full.subset(np.flatnonzero(core | side))
    cover = rectangle_union(ctx, covering)
    ext, ints = full.bool_matrices()
    out: Classification = {}
    for k, c in enumerate(full):
        if core[k]:
            out[c] = ConceptClass.CORE
            continue
        rect = np.outer(ext[k], ints[k])
        inside = not (rect & ~cover).any()
        out[c] = ConceptClass.UNNECESSARY if inside else ConceptClass.RELATIVELY_NECESSARY
    return out


# --------------------------------------------------------------------- oracle


def _reduction_masks(ctx: FormalContext, full: ConceptList) -> list[int]:
    k = len(full)
    ext, ints = full.bool_matrices()
    rects = (ext[:, :, None] & ints[:, None, :]).reshape(k, -1)
    cells = pack_bools(rects, 64)
    target = pack_bools(ctx.incidence.reshape(-1), 64)
    size = 1 << k
    union = np.zeros((size, cells.shape[1]), dtype=cells.dtype)
    for b in range(k):
        lo = 1 << b
        union[lo : 2 * lo] = union[:lo] | cells[b]
    consistent = (union == target).all(axis=1)
    idx = np.arange(size)
    reduction = consistent.copy()
    for b in range(k):
        member = ((idx >> b) & 1).astype(bool)
        reduction &= ~(member & consistent[idx ^ (1 << b)])
    return [int(i) for i in np.flatnonzero(reduction)]


def reduction_family(
    ctx: FormalContext, lattice: Iterable[FormalConcept] | None = None, cap: int = ORACLE_CAP
) -> list[ConceptList]:
    """Every reduction set of the lattice, by exhaustive subset search.

    Exponential in the lattice size; refuses lattices larger than ``cap``.
    """
    full = require_full_lattice(ctx, lattice)
    if len(full) > cap:
        raise ResourceLimitError(f"lattice has {len(full)} concepts, oracle cap is {cap}")
    return [
        full.subset(b for b in range(len(full)) if (mask >> b) & 1) for mask in _reduction_masks(ctx, full)
    ]


def classify_by_definition(
    ctx: FormalContext, lattice: Iterable[FormalConcept] | None = None, cap: int = ORACLE_CAP
) -> Classification:
    """Core = in every reduction set, unnecessary = in none, the rest relatively necessary."""
    full = require_full_lattice(ctx, lattice)
    if len(full) > cap:
        raise ResourceLimitError(f"lattice has {len(full)} concepts, oracle cap is {cap}")
    masks = _reduction_masks(ctx, full)
    every = (1 << len(full)) - 1
    some = 0
    for mask in masks:
        every &= mask
        some |= mask
    out: Classification = {}
    for b, c in enumerate(full):
        if (every >> b) & 1:
            out[c] = ConceptClass.CORE
        elif (some >> b) & 1:
            out[c] = ConceptClass.RELATIVELY_NECESSARY
        else:
            out[c] = ConceptClass.UNNECESSARY
    return out


def class_counts(result: Mapping[FormalConcept, ConceptClass], nonempty_only: bool = False) -> dict[ConceptClass, int]:
    counts = {cls: 0 for cls in ConceptClass}
    for c, cls in result.items():
        if nonempty_only and c.is_empty_rectangle:
            continue
        counts[cls] += 1
    return counts


# ---------------------------------------------------------- greedy reduction


def greedy_reduction(
    ctx: FormalContext,
    lattice: Iterable[FormalConcept] | None = None,
    order: Sequence[int] | Sequence[FormalConcept] | None = None,
) -> ConceptList:
    """Scan the lattice in ``order`` and drop each concept whose cells are all
    still covered by the surviving concepts. The survivors form a reduction set
    (returned in lattice order)."""
    full = require_full_lattice(ctx, lattice)
    k = len(full)
    if order is None:
        positions = list(range(k))
    else:
        positions = [full.index(o) if isinstance(o, FormalConcept) else int(o) for o in order]
        if sorted(positions) != list(range(k)):
            raise InvalidArgumentError("order must be a permutation of the lattice")
    counts = cover_counts(ctx, full)
    ext, ints = full.bool_matrices()
    keep = np.ones(k, dtype=bool)
    for i in positions:
        rect = np.outer(ext[i], ints[i])
        if (counts[rect] >= 2).all():
            keep[i] = False
            counts[rect] -= 1
    return full.subset(np.flatnonzero(keep))


# ------------------------------------------------------ extremal generators

BOUND_KINDS = ("relative", "unnecessary")


def gen_bound_context(n: int, kind: str = "relative", word_bits: int | None = None) -> FormalContext:
    """Contexts realizing the lower bounds on relatively necessary / unnecessary counts.

    ``relative``: one row per ``n//2``-subset of the attributes.
    ``unnecessary``: those rows followed by one row per ``(n//2 + 1)``-subset.
    Rows are listed in lexicographic subset order.
    """
    if not 2 <= n <= 20:
        raise InvalidArgumentError(f"attribute count must be in [2, 20], got {n}")
    if kind not in BOUND_KINDS:
        raise InvalidArgumentError(f"kind must be one of {BOUND_KINDS}, got {kind!r}")
    half = n // 2
    rows = list(itertools.combinations(range(n), half))
    if kind == "unnecessary":
        rows += list(itertools.combinations(range(n), half + 1))
    return FormalContext.from_rows(rows, n, word_bits=word_bits)


def relative_bound(n: int) -> int:
    return comb(n, n // 2) + n


def unnecessary_bound(n: int) -> int:
    return comb(n, n // 2 + 1)
