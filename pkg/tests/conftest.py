from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from rectfca.context import FormalConcept, FormalContext
from rectfca.formats import parse_cxt

FIXTURES = Path(__file__).parent / "fixtures"

TABLES = {
    "table1": ["01100", "11000", "10000", "00001", "00011", "00111", "11100"],
    "table3": ["11100"] * 3 + ["01111"] * 3,
    "table4": ["11100"] * 3 + ["01111"] * 3 + ["11000", "10100"],
    "table5": ["11000", "10100", "10010", "10001", "01100", "01010", "01001", "00110", "00101", "00011"],
    "table6": ["1100", "1010", "1001", "0110", "0101", "0011", "1110", "1101", "1011", "0111"],
}

# concepts of table 1 as numbered in the source, objects 1-based, attributes by name
TABLE2 = {
    "C0": ({1, 2, 3, 4, 5, 6, 7}, set()),
    "C1": ({4, 5, 6}, {"a5"}),
    "C2": ({1, 6, 7}, {"a3"}),
    "C3": ({1, 2, 7}, {"a2"}),
    "C4": ({2, 3, 7}, {"a1"}),
    "C5": ({2, 7}, {"a1", "a2"}),
    "C6": ({1, 7}, {"a2", "a3"}),
    "C7": ({5, 6}, {"a4", "a5"}),
    "C8": ({6}, {"a3", "a4", "a5"}),
    "C9": ({7}, {"a1", "a2", "a3"}),
    "C10": (set(), {"a1", "a2", "a3", "a4", "a5"}),
}

WORD_BITS = (32, 64)
BACKENDS = ("numba", "numpy")


def table(name: str, word_bits: int | None = None) -> FormalContext:
    return FormalContext.from_strings(TABLES[name], word_bits=word_bits)


def concept(ctx: FormalContext, objects, attributes) -> FormalConcept:
    """Concept from 1-based object numbers and ``a<k>`` attribute names."""
    ext = ctx.obj_set([g - 1 for g in objects])
    intent = ctx.attr_set([int(a[1:]) - 1 for a in attributes])
    c = FormalConcept(ext, intent)
    assert ctx.is_concept(ext, intent), c
    return c


def table2(ctx: FormalContext, *names: str) -> list[FormalConcept]:
    return [concept(ctx, *TABLE2[nm]) for nm in names]


def random_table(rng: np.random.Generator, m: int, n: int, density: float = 0.4) -> np.ndarray:
    return rng.random((m, n)) < density


@pytest.fixture(params=WORD_BITS, ids=lambda w: f"w{w}")
def word_bits(request) -> int:
    return request.param


@pytest.fixture(params=BACKENDS)
def backend(request) -> str:
    return request.param


@pytest.fixture
def t1(word_bits) -> FormalContext:
    return table("table1", word_bits)


@pytest.fixture
def fixture_text():
    def read(name: str) -> str:
        return (FIXTURES / name).read_text()

    return read


@pytest.fixture
def load_fixture(word_bits):
    def load(name: str) -> FormalContext:
        return parse_cxt((FIXTURES / name).read_text(), word_bits=word_bits)

    return load
