"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SoftTopError(Exception):
    """Base class for all errors raised by softtop."""


class ContextMismatch(SoftTopError):
    """Operands live over different contexts."""


class EmptyFamily(SoftTopError):
    """A generalized union/intersection was given no soft sets."""


class EmptySubset(SoftTopError):
    """A subset of the universe that must be nonempty was empty."""


class UnknownLabel(SoftTopError):
    """A universe or parameter label does not exist in the context."""


class BudgetExceeded(SoftTopError):
    """A product context would exceed its cell budget."""


class SizeCapExceeded(SoftTopError):
    """Topology generation grew past the configured size cap."""

    def __init__(self, cap: int, partial: int) -> None:
        super().__init__(f"topology size cap {cap} exceeded (reached {partial} open sets)")
        self.cap = cap
        self.partial = partial


class FactorArityMismatch(SoftTopError):
    """Number or order of factors does not match the product context."""


class ChainMismatch(SoftTopError):
    """Composition of mappings whose codomain and domain do not line up."""


class NotBijective(SoftTopError):
    """An inverse was requested for a non-bijective mapping."""


class NotOpenMember(SoftTopError):
    """A soft set expected to be open is not in the topology."""


class IndexOutOfRange(SoftTopError):
    """A factor index is outside the arity of a product."""


class TooLarge(SoftTopError):
    """Exhaustive enumeration requested over too many cells."""


class AxiomViolation(SoftTopError):
    """A collection of soft sets fails one of the soft topology axioms."""

    def __init__(self, verdict, message: str | None = None) -> None:
        super().__init__(message or str(verdict))
        self.verdict = verdict


class LemmaViolation(SoftTopError):
    """The embedding lemma hypotheses hold but the diagonal is not an embedding.

    This can only signal a defect; ``report`` carries the full witness trail.
    """

    def __init__(self, report) -> None:
        super().__init__("embedding lemma hypotheses hold but diagonal mapping is not an embedding")
        self.report = report


class ParseError(SoftTopError):
    """A document is malformed."""

    def __init__(self, message: str, field: str | None = None) -> None:
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
