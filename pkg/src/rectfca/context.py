"""Formal contexts stored as packed row-major and column-major bit matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bitvec import BitVec, pack_bools, tail_mask, unpack_words, word_dtype
from .errors import InvalidArgumentError

SetLike = BitVec | Iterable[int]


@dataclass(frozen=True)
class FormalConcept:
    """An (extent, intent) pair; geometrically a maximal rectangle of incidences."""

    extent: BitVec
    intent: BitVec

    @property
    def is_empty_rectangle(self) -> bool:
        return not (self.extent.any() and self.intent.any())

    def cells(self) -> list[tuple[int, int]]:
        return [(g, a) for g in self.extent for a in self.intent]

    def __repr__(self) -> str:
        return f"FormalConcept({set(self.extent) or '{}'}, {set(self.intent) or '{}'})"


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


class FormalContext:
    """The triple (G, M, I).

    Objects and attributes are addressed by dense 0-based indices; names are
    carried along for I/O only. Instances are immutable.
    """

    def __init__(
        self,
        incidence,
        object_names: Sequence[str] | None = None,
        attribute_names: Sequence[str] | None = None,
        name: str = "",
        word_bits: int | None = None,
    ):
        table = np.asarray(incidence, dtype=bool)
        if table.ndim != 2:
            if table.size == 0:
                table = table.reshape(0, 0)
            else:
                raise InvalidArgumentError("incidence must be a 2-D table")
        self.m, self.n = table.shape
        dtype = word_dtype(word_bits)
        self.word_bits = dtype.itemsize * 8
        self.rows = _readonly(pack_bools(table, self.word_bits))
        self.cols = _readonly(pack_bools(table.T, self.word_bits))
        self._table = _readonly(table.copy())
        self.object_names = tuple(object_names) if object_names is not None else default_object_names(self.m)
        self.attribute_names = (
            tuple(attribute_names) if attribute_names is not None else default_attribute_names(self.n)
        )
        if len(self.object_names) != self.m or len(self.attribute_names) != self.n:
            raise InvalidArgumentError("name tables do not match the context dimensions")
        self.name = name
        self._full_objects = _readonly(tail_mask(self.m, self.word_bits))
        self._full_attrs = _readonly(tail_mask(self.n, self.word_bits))

    # construction helpers

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], n: int, **kwargs) -> FormalContext:
        rows = [list(r) for r in rows]
        table = np.zeros((len(rows), n), dtype=bool)
        for g, attrs in enumerate(rows):
            for a in attrs:
                if not 0 <= a < n:
                    raise InvalidArgumentError(f"attribute {a} out of range in row {g}")
                table[g, a] = True
        return cls(table, **kwargs)

    @classmethod
    def from_strings(cls, lines: Sequence[str], **kwargs) -> FormalContext:
        """Build from rows written as 0/1 (or ./X) strings, e.g. ``"01100"``."""
        table = [[ch in "1Xx" for ch in line] for line in lines]
        n = len(table[0]) if table else 0
        return cls(np.array(table, dtype=bool).reshape(len(table), n), **kwargs)

    def with_word_bits(self, word_bits: int) -> FormalContext:
        if word_bits == self.word_bits:
            return self
        return FormalContext(self._table, self.object_names, self.attribute_names, self.name, word_bits)

    def restrict_attributes(self, keep: SetLike) -> FormalContext:
        mask = self.attr_set(keep).to_bools()
        names = [nm for nm, k in zip(self.attribute_names, mask) if k]
        return FormalContext(self._table[:, mask], self.object_names, names, self.name, self.word_bits)

    # views

    @property
    def incidence(self) -> np.ndarray:
        return self._table

    @property
    def n_incidences(self) -> int:
        return int(self._table.sum())

    def row(self, g: int) -> BitVec:
        return BitVec(self.n, self.rows[g].copy())

    def col(self, a: int) -> BitVec:
        return BitVec(self.m, self.cols[a].copy())

    def all_objects(self) -> BitVec:
        return BitVec(self.m, self._full_objects.copy())

    def all_attributes(self) -> BitVec:
        return BitVec(self.n, self._full_attrs.copy())

    def obj_set(self, x: SetLike) -> BitVec:
        return _coerce(x, self.m, self.word_bits, "object")

    def attr_set(self, b: SetLike) -> BitVec:
        return _coerce(b, self.n, self.word_bits, "attribute")

    # derivation operators

    def derive_objects(self, x: SetLike) -> BitVec:
        """Attributes shared by every object of ``x``; all attributes when ``x`` is empty."""
        x = self.obj_set(x)
        sel = x.to_bools()
        words = np.bitwise_and.reduce(self.rows[sel], axis=0) if sel.any() else self._full_attrs.copy()
        return BitVec(self.n, np.array(words, dtype=self.rows.dtype).reshape(-1))

    def derive_attrs(self, b: SetLike) -> BitVec:
        """Objects having every attribute of ``b``; all objects when ``b`` is empty."""
        b = self.attr_set(b)
        sel = b.to_bools()
        words = np.bitwise_and.reduce(self.cols[sel], axis=0) if sel.any() else self._full_objects.copy()
        return BitVec(self.m, np.array(words, dtype=self.cols.dtype).reshape(-1))

    def close_objects(self, x: SetLike) -> BitVec:
        return self.derive_attrs(self.derive_objects(x))

    def close_attrs(self, b: SetLike) -> BitVec:
        return self.derive_objects(self.derive_attrs(b))

    def is_concept(self, extent: BitVec, intent: BitVec) -> bool:
        return self.derive_objects(extent) == intent and self.derive_attrs(intent) == extent

    def concept_from_extent(self, x: SetLike) -> FormalConcept:
        intent = self.derive_objects(x)
        return FormalConcept(self.derive_attrs(intent), intent)

    def concept_from_intent(self, b: SetLike) -> FormalConcept:
        extent = self.derive_attrs(b)
        return FormalConcept(extent, self.derive_objects(extent))

    def object_concept(self, g: int) -> FormalConcept:
        intent = self.row(g)
        return FormalConcept(self.derive_attrs(intent), intent)

    def attribute_concept(self, a: int) -> FormalConcept:
        extent = self.col(a)
        return FormalConcept(extent, self.derive_objects(extent))

    def generator_concepts(self) -> tuple[list[FormalConcept], list[FormalConcept]]:
        """Object concepts (g**, g*) and attribute concepts (m*, m**), positionally."""
        return (
            [self.object_concept(g) for g in range(self.m)],
            [self.attribute_concept(a) for a in range(self.n)],
        )

    def validate_concept(self, c: FormalConcept) -> None:
        if c.extent.length != self.m or c.intent.length != self.n:
            raise InvalidArgumentError(
                f"concept of shape {c.extent.length}x{c.intent.length} used with a {self.m}x{self.n} context"
            )
        if not self.is_concept(c.extent, c.intent):
            raise InvalidArgumentError(f"{c!r} is not a formal concept of this context")

    # equality is structural; names are metadata but still compared so that
    # round-trip tests catch dropped labels

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (
            np.array_equal(self._table, other._table)
            and self.object_names == other.object_names
            and self.attribute_names == other.attribute_names
            and self.name == other.name
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"FormalContext({self.m}x{self.n}, |I|={self.n_incidences}, W={self.word_bits})"


def default_object_names(m: int) -> tuple[str, ...]:
    return tuple(str(g + 1) for g in range(m))


def default_attribute_names(n: int) -> tuple[str, ...]:
    return tuple(f"a{a + 1}" for a in range(n))


def _coerce(value: SetLike, length: int, word_bits: int, kind: str) -> BitVec:
    if isinstance(value, BitVec):
        if value.length != length:
            raise InvalidArgumentError(f"{kind} set has length {value.length}, context needs {length}")
        return value.with_width(word_bits)
    return BitVec.from_indices(length, value, word_bits)


def unpack_rows(words: np.ndarray, length: int) -> np.ndarray:
    """Boolean matrix from a stack of packed rows (2-D in, 2-D out)."""
    return unpack_words(words, length)
