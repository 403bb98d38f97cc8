"""Exception hierarchy shared by all modules."""


class CauchyMeansError(Exception):
    """Base class for every error raised by this package."""


class InvalidParams(CauchyMeansError, ValueError):
    pass


class InvalidDomain(CauchyMeansError, ValueError):
    pass


class NotSubinterval(InvalidDomain):
    pass


class PoleInDomain(CauchyMeansError, ValueError):
    pass


class ZeroInDomain(CauchyMeansError, ValueError):
    pass


class OutOfDomain(CauchyMeansError, ValueError):
    pass


class MissingDerivatives(CauchyMeansError, ValueError):
    pass


class EmptyShrunkDomain(CauchyMeansError, ValueError):
    pass


class BracketFailure(CauchyMeansError, ArithmeticError):
    pass


class DegenerateH(CauchyMeansError, ArithmeticError):
    pass


class GeneratorError(CauchyMeansError, ValueError):
    """A generator (pair) violates the monotonicity/nonvanishing hypotheses."""


class SingularFit(CauchyMeansError, ArithmeticError):
    pass


class DegenerateFit(CauchyMeansError, ArithmeticError):
    pass


class InsufficientSamples(CauchyMeansError, ValueError):
    pass


class SpecError(CauchyMeansError, ValueError):
    """Malformed JSON/CSV job specification."""
