"""
Exception hierarchy for minmodlab.

Every error raised on purpose by the library derives from MinModError, and most
also derive from the builtin that describes them best so plain ``except ValueError``
handlers keep working.
"""


class MinModError(Exception):
    """Root of all library errors."""


class ConfigError(MinModError, ValueError):
    """Bad environment variable, CLI config file entry or flag combination."""


class InvalidSpec(MinModError, ValueError):
    """Malformed function spec or spec file."""


class MixedSignZeros(InvalidSpec):
    """Square substitution needs every zero on the positive axis."""


class ParameterOutOfRange(MinModError, ValueError):
    pass


class TailNotConvergent(MinModError, ArithmeticError):
    """The zero generator cannot drive the tail below the requested tolerance."""


class CutoffTooSmall(MinModError, ValueError):
    """An omitted zero lies inside the disc of radius 2r."""


class CannotDecideConvergence(MinModError, ValueError):
    pass


class DegenerateGrowth(MinModError, ArithmeticError):
    """log log M(r) is not increasing on the grid (polynomial-like input)."""


class NoCandidates(MinModError, ValueError):
    """Decay-ray hypotheses (genus >= 2 or deg Q >= m + 1) are not met."""


class InvalidInstance(MinModError, ValueError):
    pass


class BadAngle(MinModError, ValueError):
    pass


class BelowFixedPoint(MinModError, ValueError):
    """Schedule base radius does not satisfy M(r) > r (or the analogue for the schedule)."""


class EvaluationOverflow(MinModError, OverflowError):
    pass
