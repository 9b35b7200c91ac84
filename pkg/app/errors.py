"""Exception hierarchy shared by all holonomy-lab modules.

Every exception carries the process exit code the CLI reports for it:
2 for configuration problems, 3 for violated preconditions and 4 for
numerical-integrity failures.
"""


class HolonomyLabError(Exception):
    """Base class for all errors raised by holonomy-lab."""
    exit_code = 1


class ConfigError(HolonomyLabError, ValueError):
    """Invalid experiment configuration or CLI arguments."""
    exit_code = 2


class PreconditionError(HolonomyLabError, ValueError):
    """An operation was called with inputs that violate its precondition."""
    exit_code = 3


class DimensionError(PreconditionError):
    """Non-square, oversized or mismatched matrix dimensions."""


class ConstructionError(PreconditionError):
    """A model object failed its construction invariant."""


class UnsupportedEnvelopeError(PreconditionError):
    """Pulse envelope kind without a closed-form area."""


class ModelError(PreconditionError):
    """A sampled Hamiltonian is not Hermitian."""


class NotCyclicError(PreconditionError):
    """The loop does not close: pulse area differs from pi or frames differ at the ends."""


class GaugeViolationError(PreconditionError):
    """A gauge transformation is not single-valued along the loop."""


class SpanMismatchError(PreconditionError):
    """Two frames do not span the same subspace."""


class NumericalIntegrityError(HolonomyLabError, ArithmeticError):
    """A computed quantity left its tolerance band."""
    exit_code = 4


class ResolutionError(NumericalIntegrityError):
    """The time grid is too coarse for the requested accuracy."""
