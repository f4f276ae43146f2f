"""Exception hierarchy shared by all modules."""


class LoewnerError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LoewnerError, ValueError):
    """Evaluation requested outside the admissible domain (usually |z| < 1)."""


class ParameterError(LoewnerError, ValueError):
    """A parameter lies outside the range a construction admits."""


class OrderMismatchError(LoewnerError, ValueError):
    """Binary series operation on series of different truncation orders."""


class SingularSeriesError(LoewnerError, ArithmeticError):
    """Reciprocal of a series with vanishing constant term."""


class NormalizationError(LoewnerError, ValueError):
    """An input violates the normalization a formula relies on (e.g. c0 != 1)."""


class SingularityError(LoewnerError, ArithmeticError):
    """A quantity hit a pole or a zero denominator during evaluation."""


class BoundarySingularityError(SingularityError):
    """A closed form was requested at (or too close to) one of its boundary poles."""


class ContourTooCloseError(LoewnerError, ArithmeticError):
    """Winding-number target lies too close to the sampled image contour."""


class WindingResidualError(LoewnerError, ArithmeticError):
    """Winding integral did not settle on an integer within tolerance."""


class WitnessRecoveryError(LoewnerError, RuntimeError):
    """A falsification was detected but no verifiable witness pair could be recovered."""


class InternalInvariantError(LoewnerError, RuntimeError):
    """An invariant the package maintains internally was violated."""
