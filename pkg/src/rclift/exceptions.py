"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`RCLError`,
so callers can catch the whole family with one clause.
"""


class RCLError(Exception):
    pass


class DimensionMismatch(RCLError, ValueError):
    pass


class NonHermitian(RCLError, ValueError):
    pass


class IndefiniteMatrix(RCLError, ValueError):
    pass


class OutsideDisk(RCLError, ValueError):
    pass


class SingularConstantTerm(RCLError, ValueError):
    pass


class ConstantTermNotIdentity(RCLError, ValueError):
    pass


class DegreeTooLow(RCLError, ValueError):
    pass


class NotScalar(RCLError, ValueError):
    pass


class ValidationFailed(RCLError):
    pass


class GenerationFailed(RCLError):
    pass


class ParameterNotSchur(RCLError):
    pass


class ParameterNotInSOmega(RCLError):
    pass


class ResidualTooLarge(RCLError):
    pass


class SolutionInvalid(RCLError):
    pass


class NotPositiveReal(RCLError):
    pass
