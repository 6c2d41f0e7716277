"""Property graph to RDF-star conversion (PREC-0 description plus contexts)."""

from ._prec import (
    ContextError,
    MalformedPrec0Error,
    ParseError,
    PgError,
    PrecError,
    SpecificityTieError,
    convert,
    describe,
    isomorphic,
    loss_warnings,
    normalize,
    revert,
)

__all__ = [
    "ContextError",
    "MalformedPrec0Error",
    "ParseError",
    "PgError",
    "PrecError",
    "SpecificityTieError",
    "convert",
    "describe",
    "isomorphic",
    "loss_warnings",
    "normalize",
    "revert",
]
