"""Formal concept analysis on packed bit matrices.

Concept classification by rectangle covering (core / relatively necessary /
unnecessary) and word-parallel attribute reduction that preserves a chosen
family of concept extents.
"""

from .attr_reduction import (
    ColumnStore,
    ReductReport,
    closure_extent,
    column_contains_extent,
    find_blocking_extent,
    greedy_attr_reduce,
    induced_intension,
    is_column_removable,
    rotation_reducts,
)
from .bitvec import BitVec
from .concept_reduction import (
    ConceptClass,
    classify,
    classify_by_cover,
    classify_by_definition,
    core_concepts,
    cover_counts,
    gen_bound_context,
    greedy_reduction,
    is_consistent,
    is_reduction_set,
    is_side_covered,
    reduction_family,
)
from .context import FormalConcept, FormalContext
from .errors import (
    FCAError,
    InvalidArgumentError,
    NotClosedError,
    ParseError,
    ResourceLimitError,
)
from .formats import parse, serialize
from .lattice import ConceptList, enumerate_concepts, join, leq, meet

__version__ = "0.1.0"
