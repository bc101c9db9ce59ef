"""Exception hierarchy.

Every error raised on purpose by this package derives from QuantcatError, so
callers (and the CLI) can distinguish "your input is bad" from a genuine bug.
"""


class QuantcatError(Exception):
    """Base class for all deliberate failures."""


class InvalidInput(QuantcatError):
    """Malformed or mathematically inconsistent input data."""


class UnknownElement(InvalidInput):
    """A name was looked up in a carrier or hom that does not contain it."""


class TypeMismatch(InvalidInput):
    """Composite or comparison attempted between incompatible types/objects."""


class TypeViolation(InvalidInput):
    """A table entry lives in the wrong hom for its row/column types."""


class EnumerationUnsupported(QuantcatError):
    """The operation needs to enumerate a hom that is not enumerable."""


class EnumerationTooLarge(QuantcatError):
    """An enumeration would exceed the configured element budget."""


class CarrierTooLarge(QuantcatError):
    """A constructed carrier (e.g. a presheaf object set) exceeds its cap."""


class CorpusTooLarge(QuantcatError):
    """A generated test corpus exceeds its cap."""


class NotCompletelyDistributive(QuantcatError):
    """A hom lattice fails complete distributivity where it is required.

    Carries a witness triple (hom, element data) in args[1] when available.
    """


class NotConical(QuantcatError):
    """A presheaf expected to be a join of representables is not one."""


class InvalidFunctor(QuantcatError):
    """A claimed functor fails the action inequality."""


class InvalidMorphism(QuantcatError):
    """A claimed monad morphism fails naturality or a unit/mult law."""
