"""Exception types raised by quatspec."""


class QuatspecError(ValueError):
    """Base class for all quatspec errors."""


class RealInput(QuatspecError):
    """A real quaternion was given where a subfield must be determined."""


class NotImaginaryUnit(QuatspecError):
    pass


class LengthMismatch(QuatspecError):
    pass


class NotHermitian(QuatspecError):
    pass


class NotSkewSelfadjoint(QuatspecError):
    pass


class NotSimpleSpectrum(QuatspecError):
    pass


class ConstructionFailed(QuatspecError):
    """The generating-vector certificate did not hold to tolerance."""


class DegenerateWeight(QuatspecError):
    """Some atom carries (numerically) zero mass under the generating vector."""
