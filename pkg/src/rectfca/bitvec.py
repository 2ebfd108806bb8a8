"""Fixed-length packed bit vectors.

Bit ``j`` of word ``k`` stands for index ``k * W + j`` (least significant bit
first), so the vector with ones at positions 0..7 packs to the word value 255.
Bits at positions ``>= length`` are always zero.
"""

from __future__ import annotations

import os
from typing import Iterable, Iterator

import numpy as np

from .errors import InvalidArgumentError

_DTYPES = {32: np.dtype("<u4"), 64: np.dtype("<u8")}

DEFAULT_WORD_BITS = int(os.environ.get("RECTFCA_WORD_BITS", "32"))
if DEFAULT_WORD_BITS not in _DTYPES:
    raise ImportError(f"RECTFCA_WORD_BITS must be 32 or 64, got {DEFAULT_WORD_BITS}")


def word_dtype(word_bits: int | None = None) -> np.dtype:
    bits = DEFAULT_WORD_BITS if word_bits is None else word_bits
    try:
        return _DTYPES[bits]
    except KeyError:
        raise InvalidArgumentError(f"word width must be 32 or 64, got {bits}") from None


def n_words(length: int, word_bits: int) -> int:
    return (length + word_bits - 1) // word_bits


def pack_bools(bools: np.ndarray, word_bits: int | None = None) -> np.ndarray:
    """Pack the last axis of a boolean array into little-endian words."""
    dtype = word_dtype(word_bits)
    bools = np.asarray(bools, dtype=bool)
    length = bools.shape[-1]
    nbytes = n_words(length, dtype.itemsize * 8) * dtype.itemsize
    packed = np.packbits(bools, axis=-1, bitorder="little")
    pad = nbytes - packed.shape[-1]
    if pad:
        widths = [(0, 0)] * (packed.ndim - 1) + [(0, pad)]
        packed = np.pad(packed, widths)
    return np.ascontiguousarray(packed).view(dtype)


def unpack_words(words: np.ndarray, length: int) -> np.ndarray:
    """Inverse of :func:`pack_bools`."""
    words = np.ascontiguousarray(words)
    as_bytes = words.view(np.uint8)
    return np.unpackbits(as_bytes, axis=-1, bitorder="little", count=length).astype(bool)


def tail_mask(length: int, word_bits: int) -> np.ndarray:
    """Words with every valid position set; used to keep padding canonical."""
    return pack_bools(np.ones(length, dtype=bool), word_bits)


class BitVec:
    __slots__ = ("length", "words")

    def __init__(self, length: int, words: np.ndarray):
        words = np.asarray(words)
        if words.dtype not in (_DTYPES[32], _DTYPES[64]):
            words = words.astype(word_dtype())
        word_bits = words.dtype.itemsize * 8
        if words.ndim != 1 or words.shape[0] != n_words(length, word_bits):
            raise InvalidArgumentError(
                f"{words.shape} words cannot hold exactly {length} bits at width {word_bits}"
            )
        rem = length % word_bits
        if rem and int(words[-1]) >> rem:
            raise InvalidArgumentError("bits beyond the vector length must be zero")
        self.length = length
        self.words = words

    # construction

    @classmethod
    def zeros(cls, length: int, word_bits: int | None = None) -> BitVec:
        dtype = word_dtype(word_bits)
        return cls(length, np.zeros(n_words(length, dtype.itemsize * 8), dtype=dtype))

    @classmethod
    def ones(cls, length: int, word_bits: int | None = None) -> BitVec:
        dtype = word_dtype(word_bits)
        return cls(length, tail_mask(length, dtype.itemsize * 8))

    @classmethod
    def from_bools(cls, bools, word_bits: int | None = None) -> BitVec:
        bools = np.asarray(bools, dtype=bool)
        return cls(bools.shape[0], pack_bools(bools, word_bits))

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int], word_bits: int | None = None) -> BitVec:
        bools = np.zeros(length, dtype=bool)
        for i in indices:
            if not 0 <= i < length:
                raise InvalidArgumentError(f"index {i} out of range for length {length}")
            bools[i] = True
        return cls.from_bools(bools, word_bits)

    @classmethod
    def from_int(cls, length: int, value: int, word_bits: int | None = None) -> BitVec:
        if value < 0 or value >> length:
            raise InvalidArgumentError(f"{value} does not fit in {length} bits")
        dtype = word_dtype(word_bits)
        nw = n_words(length, dtype.itemsize * 8)
        raw = value.to_bytes(nw * dtype.itemsize, "little")
        return cls(length, np.frombuffer(raw, dtype=dtype).copy())

    # views

    @property
    def word_bits(self) -> int:
        return self.words.dtype.itemsize * 8

    def to_bools(self) -> np.ndarray:
        return unpack_words(self.words, self.length)

    def to_indices(self) -> list[int]:
        return np.flatnonzero(self.to_bools()).tolist()

    def to_int(self) -> int:
        return int.from_bytes(self.words.tobytes(), "little")

    def with_width(self, word_bits: int) -> BitVec:
        if word_bits == self.word_bits:
            return self
        return BitVec.from_bools(self.to_bools(), word_bits)

    def count(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def any(self) -> bool:
        return bool(self.words.any())

    def __iter__(self) -> Iterator[int]:
        return iter(self.to_indices())

    def __contains__(self, index: int) -> bool:
        if not 0 <= index < self.length:
            return False
        w = self.word_bits
        return bool((int(self.words[index // w]) >> (index % w)) & 1)

    # set algebra, all word-wise

    def _check(self, other: BitVec) -> None:
        if not isinstance(other, BitVec):
            raise TypeError(f"expected BitVec, got {type(other).__name__}")
        if other.length != self.length:
            raise InvalidArgumentError(f"length mismatch: {self.length} vs {other.length}")
        if other.word_bits != self.word_bits:
            raise InvalidArgumentError("word width mismatch")

    def __and__(self, other: BitVec) -> BitVec:
        self._check(other)
        return BitVec(self.length, self.words & other.words)

    def __or__(self, other: BitVec) -> BitVec:
        self._check(other)
        return BitVec(self.length, self.words | other.words)

    def __xor__(self, other: BitVec) -> BitVec:
        self._check(other)
        return BitVec(self.length, self.words ^ other.words)

    def __sub__(self, other: BitVec) -> BitVec:
        self._check(other)
        return BitVec(self.length, self.words & ~other.words)

    def __invert__(self) -> BitVec:
        return BitVec(self.length, ~self.words & tail_mask(self.length, self.word_bits))

    def issubset(self, other: BitVec) -> bool:
        self._check(other)
        return bool(np.array_equal(other.words & self.words, self.words))

    __le__ = issubset

    def __ge__(self, other: BitVec) -> bool:
        return other.issubset(self)

    def __lt__(self, other: BitVec) -> bool:
        return self.issubset(other) and self != other

    def __gt__(self, other: BitVec) -> bool:
        return other < self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVec):
            return NotImplemented
        if self.length != other.length:
            return False
        if self.word_bits != other.word_bits:
            return self.to_int() == other.to_int()
        return bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.length, self.to_int()))

    def __repr__(self) -> str:
        return f"BitVec({self.length}, {{{', '.join(map(str, self.to_indices()))}}})"
