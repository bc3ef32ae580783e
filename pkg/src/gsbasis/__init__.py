"""Gröbner–Shirshov bases for monoid and Coxeter group presentations.

The package works with binomial relations ``u = v`` over a finite, linearly
ordered alphabet.  Words are plain tuples of generator indices; the order
lives on the :class:`~gsbasis.words.Alphabet`.
"""

from gsbasis.errors import InvalidInput, PreconditionError, ResourceLimit
from gsbasis.words import Alphabet, Ambiguity, Kind, Word, deglex_compare, find_ambiguities
from gsbasis.rewrite import Rule, RewriteSystem
from gsbasis.completion import (
    Caps,
    CompletionResult,
    CompositionResidue,
    Status,
    chained_composition_check,
    complete,
    compose,
    interreduce,
    verify_closed,
)

__all__ = [
    "Alphabet",
    "Ambiguity",
    "Caps",
    "CompletionResult",
    "CompositionResidue",
    "InvalidInput",
    "Kind",
    "PreconditionError",
    "ResourceLimit",
    "RewriteSystem",
    "Rule",
    "Status",
    "Word",
    "chained_composition_check",
    "complete",
    "compose",
    "deglex_compare",
    "find_ambiguities",
    "interreduce",
    "verify_closed",
]

__version__ = "0.1.0"
