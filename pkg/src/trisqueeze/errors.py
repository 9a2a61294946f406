"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: :class:`InvalidArgumentError` -> 2,
:class:`TruncationError` and :class:`PrecisionError` -> 3.
"""


class TrisqueezeError(Exception):
    """Base class for library errors."""


class InvalidArgumentError(TrisqueezeError, ValueError):
    """Non-finite, mis-shaped, or out-of-range input."""


class TruncationError(TrisqueezeError):
    """The Fock cutoff is too small for the requested state.

    ``suggested_cutoff`` carries the smallest cutoff that would satisfy the
    tail budget, when one can be computed.
    """

    def __init__(self, message, suggested_cutoff=None):
        super().__init__(message)
        self.suggested_cutoff = suggested_cutoff


class PrecisionError(TrisqueezeError):
    """A result is too contaminated by truncation to be trusted."""


class ResourceError(TrisqueezeError):
    """A series or time-stepping loop exceeded its iteration budget."""
