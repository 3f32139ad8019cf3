# -*- coding: utf-8 -*-

"""Exceptions raised by nilpotentia."""

from typing import Any, Dict, Sequence, Tuple


class NilpotentiaError(Exception):
    """The base class for all errors raised by nilpotentia.

    Subclasses carry their structured context as attributes; `as_dict`
    exposes it for the machine-readable error stream of the CLI.
    """

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context = context

    def as_dict(self) -> Dict[str, Any]:
        """Return a JSON-serializable representation of the error.

        Returns:
            Dict[str, Any]: The error class name, message and context.
        """
        return {"error": type(self).__name__, "message": self.message, **self.context}


##
# Input errors
#
# Raised while reading or validating user-supplied tables. The CLI maps all
# of these to exit code 2.
#
class InputFormatError(NilpotentiaError, ValueError):
    """The input could not be parsed as a semigroup or spec document."""


class BadShape(InputFormatError):
    """A table is not square, has out-of-range entries or mismatched labels."""


class InvalidSemigroup(NilpotentiaError, ValueError):
    """A well-formed table that does not define a semigroup."""


class NonAssociative(InvalidSemigroup):
    """A table fails associativity for a specific triple."""

    def __init__(self, triple: Tuple[int, int, int], labels: Sequence[str]) -> None:
        i, j, k = triple
        super().__init__(
            f"The table is not associative: ({labels[i]}*{labels[j]})*{labels[k]} "
            f"!= {labels[i]}*({labels[j]}*{labels[k]}).",
            triple=[labels[i], labels[j], labels[k]],
        )
        self.triple = triple


class EmptyGeneratorSet(NilpotentiaError, ValueError):
    """A closure was requested for an empty set of generators."""


class ElementIndexOutOfRange(NilpotentiaError, IndexError):
    """An element index does not belong to the semigroup."""


##
# Construction errors
#
class NotAGroup(NilpotentiaError, ValueError):
    """A semigroup expected to be a group is not one."""


class NotRegular(NilpotentiaError, ValueError):
    """A sandwich matrix has a row or column of zeros (or zeros without θ)."""


class InvalidGlueSpec(NilpotentiaError, ValueError):
    """Base class for inconsistent glued union data."""


class GammaNotHomomorphism(InvalidGlueSpec):
    """Γ(st) differs from Γ(s)∘Γ(t) for some pair."""


class CocycleViolation(InvalidGlueSpec):
    """Ψ(st)(i) differs from Ψ(s)(Γ(t)(i))·Ψ(t)(i) for some pair and point."""


class SupportMismatch(InvalidGlueSpec):
    """The support of Ψ(s) differs from the support of Γ(s)."""


class NotInjectiveOffTheta(InvalidGlueSpec):
    """A transformation identifies two points that it does not send to θ."""


class NonAssociativeResult(InvalidGlueSpec):
    """The glued multiplication table is not associative."""


##
# Structure errors
#
class NotAnIdeal(NilpotentiaError, ValueError):
    """A subset of a semigroup is not a two-sided ideal."""


class NotCompletelyZeroSimple(NilpotentiaError, ValueError):
    """An ideal is not a completely 0-simple semigroup."""


class ReconstructionMismatch(NilpotentiaError, ValueError):
    """Recovered Rees coordinates do not reproduce the multiplication."""


class NotInverseIdeal(NilpotentiaError, ValueError):
    """A Rees decomposition is not of the form M⁰(G,n,n;Iₙ)."""


class IllDefined(NilpotentiaError, ValueError):
    """Γ or Ψ depends on the choice of column in the inverse ideal."""


##
# Classification errors
#
class NoInverseIdeal(NilpotentiaError, LookupError):
    """No ideal of the form M⁰(G,n,n;Iₙ) with G nilpotent was found."""


class TypeInvariantViolation(NilpotentiaError, AssertionError):
    """A classification failed to verify one of its structural invariants."""


##
# Limits and parameters
#
class CapExceeded(NilpotentiaError, ValueError):
    """An exhaustive computation was requested beyond its configured cap."""


class BadParameter(NilpotentiaError, LookupError):
    """An unknown catalog name or an out-of-range family parameter."""
