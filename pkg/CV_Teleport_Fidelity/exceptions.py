class CVTeleFiError(ValueError):
    """Base class for all errors raised by this package"""


class DomainError(CVTeleFiError):
    """Argument outside the domain of an operation"""


class DegenerateStateError(CVTeleFiError):
    """Photon subtraction from the vacuum (lam = 0 with m + n > 0)"""


class TruncationError(CVTeleFiError):
    """Fock truncation would exceed the hard cap"""


class UnsupportedOrderError(CVTeleFiError):
    """No closed-form expression for this number of subtracted photons"""


class UnphysicalCMError(CVTeleFiError):
    """Covariance matrix violates the uncertainty principle"""


class QuadratureError(CVTeleFiError):
    """Quadrature grid too coarse for the requested accuracy"""


class GridError(CVTeleFiError):
    """Malformed squeezing grid"""


def to_error_dict(err):
    """
    Purpose:
      Machine-readable form of an error, as printed by the command-line tool

    :param err: Exception

    :return: dict with keys 'error' and 'message'
    """

    return {'error': type(err).__name__, 'message': str(err)}
