"""Exception types shared across the package.

Each class also derives from the closest builtin (ValueError / RuntimeError)
so callers that do not know about causelab still catch something sensible.
"""


class CauselabError(Exception):
    """Base class for every causelab-specific error."""


class EmptyCausationError(CauselabError, ValueError):
    """A causation must hold one or more cause events."""


class OracleBoundExceededError(CauselabError, ValueError):
    """Input too large for the exhaustive reference matcher."""


class UnknownEventTypeError(CauselabError, ValueError):
    """An event value falls outside the configured alphabet."""


class CausationSpaceExhaustedError(CauselabError, RuntimeError):
    """Could not draw the requested number of distinct cause multisets."""


class InfeasibleParametersError(CauselabError, RuntimeError):
    """Rejection sampling cannot satisfy the requested class counts."""


class NoPositiveInstancesError(CauselabError, ValueError):
    """An estimate was requested from an empty collection of positives."""


class InconsistentPositivesError(CauselabError, ValueError):
    """A supposed positive instance does not embed the learned causes."""


class TrainingDivergedError(CauselabError, RuntimeError):
    """The training loss became non-finite."""


class SweepCsvError(CauselabError, ValueError):
    """A sweep results file failed to parse."""
