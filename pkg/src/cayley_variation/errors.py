"""Exception types raised across the package."""


class CayleyVariationError(Exception):
    """Base class for every error raised by this package."""


# division algebra
class ZeroDivisor(CayleyVariationError, ZeroDivisionError):
    pass


class IdentityViolation(CayleyVariationError):
    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


# dense linear algebra
class ShapeMismatch(CayleyVariationError, ValueError):
    pass


class NotSymmetric(CayleyVariationError, ValueError):
    pass


class NoConvergence(CayleyVariationError, RuntimeError):
    pass


class NotOrthogonal(CayleyVariationError, ValueError):
    pass


# octonionic lines
class ZeroVector(CayleyVariationError, ValueError):
    pass


class NotUnit(CayleyVariationError, ValueError):
    pass


class NotOnLine(CayleyVariationError, ValueError):
    pass


class NotOrthonormalBasis(CayleyVariationError, ValueError):
    pass


class LemmaViolation(CayleyVariationError, AssertionError):
    """A computed quantity contradicts a proved statement. Always a bug."""


# second variation
class BadStructure(CayleyVariationError, ValueError):
    pass


class BadIndex(CayleyVariationError, IndexError):
    pass


class DimensionMismatch(CayleyVariationError, ValueError):
    pass


class ConstraintViolated(CayleyVariationError, ValueError):
    pass


class CertificatesAbsent(CayleyVariationError):
    def __init__(self, message, commutator_norms):
        super().__init__(message)
        self.commutator_norms = commutator_norms


# extremizer
class DegenerateGroup(CayleyVariationError, AssertionError):
    pass


class NegativeEigenvalue(CayleyVariationError, ValueError):
    pass


# command line harness
class ConfigError(CayleyVariationError, ValueError):
    pass


class PropertyFailure(CayleyVariationError):
    pass
