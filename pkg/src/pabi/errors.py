"""Semantic exception hierarchy for the pabi package.

Every error raised on a contract violation derives from :class:`PabiError`,
so callers can catch one base class at pipeline boundaries while tests can
assert the precise failure mode.
"""


class PabiError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDistribution(PabiError, ValueError):
    """Probability vector has negative entries or does not sum to one."""


class SupportMismatch(PabiError, ValueError):
    """KL divergence requested where p puts mass outside q's support."""


class NonPositiveBaseline(PabiError, ValueError):
    """Informativeness ratio requested with a non-positive full uncertainty."""


class OutOfRange(PabiError, ValueError):
    """Scalar argument outside its documented range."""


class SingularDenominator(PabiError, ArithmeticError):
    """Cross-domain noise estimator evaluated at its singular point."""


class DegenerateMarginal(PabiError, ValueError):
    """Mutual-information measure requested on a zero-entropy gold marginal."""


class PartitionMismatch(PabiError, ValueError):
    """Label-coarsening groups do not partition the fine label set."""


class InfeasibleMask(PabiError, ValueError):
    """A partial observation admits no constraint-consistent completion."""


class UnmappedLabel(PabiError, KeyError):
    """Auxiliary mapping is not total over the dataset's label set."""


class EmptyInput(PabiError, ValueError):
    """An operation that needs at least one observation received none."""


class UnknownLabelInTraining(PabiError, ValueError):
    """Supervised training received the unknown-tag sentinel."""


class InfeasiblePrior(PabiError, ValueError):
    """Every decoding path has zero probability under the supplied prior."""


class MissingAlignment(PabiError, ValueError):
    """Auxiliary prior estimation requires aligned gold data."""


class ParseError(PabiError, ValueError):
    """Malformed corpus file; message carries the offending line number."""


class EmptyCorpus(PabiError, ValueError):
    """Corpus file contained no sentences."""


class ConfigError(PabiError, ValueError):
    """Run configuration invalid; message lists every violated field."""


class DegenerateBounds(PabiError, ValueError):
    """Relative improvement requested with upper bound <= lower bound."""


class DegenerateSeries(PabiError, ValueError):
    """Correlation requested on a constant or too-short series."""
