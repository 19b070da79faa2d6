"""Exception types shared across the package.

Errors are split into three families: input problems (parsing, malformed
rotations), violated preconditions of an operation, and internal
inconsistencies.  An internal inconsistency means a certified property that
the theory guarantees failed at runtime, i.e. an implementation bug or an
input outside the supported class; it carries a diagnostic payload.
"""

from __future__ import annotations

from typing import Any


class PrismCactusError(Exception):
    """Base class for all package errors."""


class ParseError(PrismCactusError):
    """Malformed input file; carries line information when available."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InconsistentRotation(PrismCactusError):
    """An edge end is missing, duplicated, or asymmetric in a rotation system."""


class OuterNotFace(PrismCactusError):
    """The designated outer walk does not bound a face of the embedding."""


class NotACycle(PrismCactusError):
    """A vertex sequence expected to be a simple cycle is not one."""


class Disconnected(PrismCactusError):
    """Operation requires a connected graph."""


class TooSmall(PrismCactusError):
    """Graph is below the minimum order for the requested test."""


class TooLarge(PrismCactusError):
    """Instance exceeds the configured bound for exhaustive search."""


class LimitExceeded(PrismCactusError):
    """Corpus generation bounds exceed the configured limits."""


class NotExternal(PrismCactusError):
    """A vertex required to lie on the outer cycle does not."""


class AnchorInvalid(PrismCactusError):
    """A chain anchor is missing, internal, or coincides with a cutvertex."""


class PreconditionViolated(PrismCactusError):
    """A stated hypothesis of the operation does not hold for the input."""


class BadPair(PrismCactusError):
    """The two requested vertices form an obstructed (bad) pair."""


class OddCycleInput(PrismCactusError):
    """Odd cycles are excluded by hypothesis from this operation."""


class NotBipartiteCactus(PrismCactusError):
    """The given cactus is not bipartite (or not a valid cactus at all)."""


class ExhaustionFailure(PrismCactusError):
    """A complete search exhausted without a witness where one is guaranteed."""


class InternalInconsistency(PrismCactusError):
    """A property guaranteed by the underlying theory failed at runtime.

    ``payload`` holds the diagnostic bundle (host graph, parameters, partial
    objects) so failures of the extracted constructions are reproducible.
    """

    def __init__(self, message: str, payload: dict[str, Any] | None = None):
        super().__init__(message)
        self.payload = payload or {}
