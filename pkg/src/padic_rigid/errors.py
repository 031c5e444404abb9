"""Exception types shared across the package.

Domain errors (bad mathematical input, non-units, exhausted resources)
derive from PadicRigidError so the CLI can map them to exit code 1;
anything else bubbles up as a usage or internal error.
"""


class PadicRigidError(Exception):
    """Base class for all domain errors raised by this package."""


class IncompatibleOperandsError(PadicRigidError):
    """Two values with mismatched prime or precision were combined."""


class NonUnitError(PadicRigidError):
    """Inversion was requested for an element divisible by p."""


class PrecisionError(PadicRigidError):
    """A precision argument was outside its allowed range."""


class ParameterError(PadicRigidError):
    """A numeric parameter violated a documented precondition."""


class ResourceLimitError(PadicRigidError):
    """A search space exceeded the configured exhaustive-search budget."""


class NonInvertibleError(PadicRigidError):
    """A ring element has no inverse in the rationalized ring."""


class PresentationError(PadicRigidError):
    """A ring presentation violated associativity or identity laws."""


class CertificateError(PadicRigidError):
    """A supplied membership certificate failed exact re-verification."""


class PurificationCapError(PadicRigidError):
    """Purification did not stabilize within the denominator cap."""


class UnknownExperimentError(PadicRigidError):
    """run_trials was asked for an experiment that is not registered."""
