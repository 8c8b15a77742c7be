"""Submatrix maximum queries on Monge matrices. Indices are 0-based, intervals closed."""

from ._monge import (
    Entry,
    MongePredecessor,
    ParseError,
    PartialIndex,
    ReductionMatrix,
    StaircaseIndex,
    SubcolumnIndex,
    SubmatrixIndex,
    UniverseReduction,
    column_maxima,
    generate,
    is_monge,
    random_partial_shape,
    random_staircase,
)

__all__ = [
    "Entry",
    "MongePredecessor",
    "ParseError",
    "PartialIndex",
    "ReductionMatrix",
    "StaircaseIndex",
    "SubcolumnIndex",
    "SubmatrixIndex",
    "UniverseReduction",
    "column_maxima",
    "generate",
    "is_monge",
    "random_partial_shape",
    "random_staircase",
]
