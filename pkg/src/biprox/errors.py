"""Exception types shared across biprox modules."""

from __future__ import annotations


class BiproxError(Exception):
    """Base class for all biprox-specific errors."""


class DegreeMismatch(BiproxError):
    """Permutations of different degrees were combined."""


class OrderCapExceeded(BiproxError):
    """A group closure grew past the configured order cap."""


class SubgroupCapExceeded(BiproxError):
    """Subgroup enumeration produced more subgroups than the cap allows."""


class NotNested(BiproxError):
    """An operation requiring nested subgroups H <= K <= G got a non-chain."""


class QuotientOrderCapExceeded(BiproxError):
    """An equivalence check needed a quotient larger than the cap."""


class NotTrivialH(BiproxError):
    """An operation defined only for contexts with H = {1} got a larger H."""


class ContextMismatch(BiproxError):
    """Elements from different box contexts were combined."""


class NotPositive(BiproxError):
    """A positivity-requiring operation received a non-positive element."""


class NumericRankAmbiguous(BiproxError):
    """An eigenvalue gap fell inside the ambiguous band; result withheld."""


class BiprojectionCheckFailed(BiproxError):
    """A generated projection failed the biprojection criteria."""


class NotABiprojection(BiproxError):
    """An element expected to be a biprojection is not one."""


class BasisNotSpanning(BiproxError):
    """A coproduct table was requested against a non-spanning basis."""


class NotBoolean(BiproxError):
    """A Boolean-lattice-only operation was applied to a non-Boolean lattice."""


class TheoremViolation(BiproxError):
    """A proved implication failed on a concrete instance; this signals an
    internal inconsistency (bug), never a legitimate result."""


class AxiomViolation(BiproxError):
    """A fusion-ring axiom failed; the message names the identity instance."""


class GroupSpecError(BiproxError):
    """A group or subgroup specification string could not be parsed."""
