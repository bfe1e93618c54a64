from dataclasses import dataclass

import numpy as np

from .. import entropy_clamp_tol, unphysical_tol
from ..exceptions import UnphysicalCMError
from ..log_commons import get_logger
from ..resource_state import covariance_matrix
from ..special_functions import h_entropy

log = get_logger(__name__)

# symplectic form for quadrature order (x1, p1, x2, p2)
omega = np.array([[0., 1., 0., 0.],
                  [-1., 0., 0., 0.],
                  [0., 0., 0., 1.],
                  [0., 0., -1., 0.]])


@dataclass(frozen=True)
class SymplecticSpectrum:
    d_plus: float
    d_minus: float
    invariants_i: tuple
    delta_sigma: float


def _snap_to_vacuum(d):
    # rounding noise around the vacuum value 1/2
    if abs(d - 0.5) <= entropy_clamp_tol:
        return 0.5
    return d


def symplectic_eigenvalues(cm):
    """
    Purpose:
      Symplectic eigenvalues of a standard-form two-mode covariance matrix

        I1 = det A = a^2, I2 = det B = b^2, I3 = det C = -c^2, I4 = det sigma
        Delta = I1 + I2 + 2 I3
        d_pm = sqrt((Delta +/- sqrt(Delta^2 - 4 I4)) / 2)

      Delta^2 - 4 I4 = (a - b)^2 ((a + b)^2 - 4 c^2) is evaluated in this
      factored form, and d_- = sqrt(I4) / d_+.

    :param cm: TwoModeCM

    :return spectrum: SymplecticSpectrum
    """

    a, b, c = cm.a_diag, cm.b_diag, cm.c_diag

    i1 = a * a
    i2 = b * b
    i3 = -c * c
    det_ab_c = a * b - c * c
    i4 = det_ab_c**2
    delta = i1 + i2 + 2.0 * i3

    sum_term = (a + b - 2.0 * abs(c)) * (a + b + 2.0 * abs(c))
    discriminant = (a - b)**2 * sum_term

    # clamp within tolerance
    if discriminant < 0.0:
        if discriminant < -entropy_clamp_tol * max(1.0, delta**2):
            log.warning("!!! Negative symplectic discriminant {} !!!".format(discriminant))
            raise UnphysicalCMError("Delta^2 - 4 I4 = {} < 0 for (a, b, c) = "
                                    "({}, {}, {})".format(discriminant, a, b, c))
        discriminant = 0.0

    d_plus_sq = (delta + np.sqrt(discriminant)) / 2.0
    if not d_plus_sq > 0.0 or det_ab_c <= 0.0:
        log.warning("!!! Unphysical covariance matrix (a, b, c) = ({}, {}, {}) !!!".format(a, b, c))
        raise UnphysicalCMError("Covariance matrix (a, b, c) = ({}, {}, {}) has no "
                                "physical symplectic spectrum".format(a, b, c))

    d_plus = float(np.sqrt(d_plus_sq))
    d_minus = float(det_ab_c / d_plus)

    if d_minus < 0.5 - unphysical_tol:
        log.warning("!!! d_minus = {} below 1/2 !!!".format(d_minus))
        raise UnphysicalCMError("Smallest symplectic eigenvalue {} violates the uncertainty "
                                "principle".format(d_minus))

    d_plus = _snap_to_vacuum(d_plus)
    d_minus = _snap_to_vacuum(max(d_minus, 0.5))

    return SymplecticSpectrum(d_plus, d_minus, (i1, i2, i3, i4), delta)


def symplectic_eigenvalues_numeric(cm):
    """
    Purpose:
      Cross-check of symplectic_eigenvalues(): moduli of the eigenvalues of
      i Omega sigma for the full 4x4 matrix

    :param cm: TwoModeCM

    :return: tuple (d_plus, d_minus)
    """

    eigenvalues = np.abs(np.linalg.eigvals(1j * omega @ cm.matrix()))
    eigenvalues = np.sort(eigenvalues)

    return float(eigenvalues[-1]), float(eigenvalues[0])


def non_gaussianity_from_cm(cm):
    spectrum = symplectic_eigenvalues(cm)
    return float(h_entropy(spectrum.d_minus) + h_entropy(spectrum.d_plus))


def non_gaussianity(spec):
    """
    Purpose:
      Relative-entropy non-Gaussianity delta[rho] of the resource

    :param spec: SubtractionSpec

    :return: float delta >= 0
    """

    cm = covariance_matrix(spec)
    delta = non_gaussianity_from_cm(cm)

    log.debug("delta({}, {}, {}) = {:.15g}".format(spec.m, spec.n, spec.lam, delta))

    return delta


def zero_squeezing_non_gaussianity(m, n):
    """
    Purpose:
      One-sided limit of delta as lam -> 0+.  The resource tends to the Fock
      state |n-m>|0> (or |0>|m-n>), whose covariance matrix has d_+ = |n-m| + 1/2
      and d_- = 1/2, so delta -> h(|n-m| + 1/2).

    :param m: int
    :param n: int

    :return: float
    """

    return float(h_entropy(abs(n - m) + 0.5))
