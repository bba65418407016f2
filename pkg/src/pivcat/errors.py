"""Exception hierarchy.

Validation errors carry a ``witness`` naming the offending indices so callers
(and the CLI) can report exactly where an axiom failed.
"""

from __future__ import annotations

from typing import Any


class PivcatError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str = "", witness: Any = None):
        super().__init__(message)
        self.witness = witness


class ValidationError(PivcatError):
    pass


class AssociativityViolation(ValidationError):
    pass


class UnitViolation(ValidationError):
    pass


class DualityViolation(ValidationError):
    pass


class ReciprocityViolation(ValidationError):
    pass


class RepresentationViolation(ValidationError):
    pass


class CommutationViolation(ValidationError):
    pass


class GradeViolation(ValidationError):
    pass


class GroupAxiomViolation(ValidationError):
    pass


class CharacterViolation(ValidationError):
    pass


class IndexOutOfRange(PivcatError, IndexError):
    pass


class LabelUnknown(PivcatError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class NotASubgroup(PivcatError):
    pass


class Infeasible(PivcatError):
    pass


class RingMismatch(PivcatError):
    pass


class AlgebraMismatch(PivcatError):
    pass


class NotNormalized(PivcatError):
    pass


class PreconditionFailed(PivcatError):
    pass


class NotSemisimpleBasis(PivcatError):
    pass


class NoSerrePermutation(PivcatError):
    pass


class AmbiguousSerrePermutation(PivcatError):
    pass


class ConvergenceFailure(PivcatError):
    pass


class SizeGuardExceeded(PivcatError):
    pass


class MalformedInput(PivcatError):
    pass
