from dataclasses import dataclass, field
from math import atanh, ceil, log as ln

import numpy as np
from scipy.special import gammaln

from . import tail_eps as default_tail_eps
from . import truncation_cap, truncation_margin, max_subtraction, unphysical_tol
from .exceptions import DomainError, DegenerateStateError, TruncationError
from .exceptions import UnphysicalCMError
from .log_commons import get_logger
from .special_functions import factorial, jacobi_p

log = get_logger(__name__)

operations0 = ['subtract']


@dataclass(frozen=True)
class SubtractionSpec:
    """
    Resource descriptor: m photons subtracted from mode 1, n from mode 2,
    squeezing lam = tanh(r)
    """
    m: int
    n: int
    lam: float
    operation: str = 'subtract'

    def __post_init__(self):
        for name in ['m', 'n']:
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise DomainError("{} must be a non-negative integer, got {}".format(name, value))
            if value > max_subtraction:
                raise DomainError("{} = {} exceeds the supported ceiling of {} "
                                  "subtracted photons".format(name, value, max_subtraction))
            object.__setattr__(self, name, int(value))

        lam = float(self.lam)
        if not 0.0 <= lam < 1.0:
            raise DomainError("lam must lie in [0, 1), got {}".format(lam))
        object.__setattr__(self, 'lam', lam)

        if self.operation not in operations0:
            raise DomainError("Unsupported operation '{}'; only {} is "
                              "implemented".format(self.operation, operations0))

        if lam == 0.0 and self.m + self.n > 0:
            log.warning("!!! Photon subtraction from the vacuum: (m, n) = ({}, {}) at lam = 0 "
                        "!!!".format(self.m, self.n))
            raise DegenerateStateError("lam = 0 with m + n = {} > 0 gives the zero "
                                       "vector".format(self.m + self.n))

    @property
    def r(self):
        return atanh(self.lam)

    def swapped(self):
        return SubtractionSpec(self.n, self.m, self.lam, self.operation)


@dataclass(frozen=True, eq=False)
class FockState:
    """
    Normalized truncated Fock expansion of a SubtractionSpec.  Amplitude
    amplitudes[i] sits at (j, k) = (k0 + i - m, k0 + i - n) with
    k0 = max(m, n), i.e. on the shifted diagonal k - j = m - n.
    """
    m: int
    n: int
    lam: float
    amplitudes: np.ndarray = field(repr=False)
    truncation: int
    raw_norm: float

    @property
    def k0(self):
        return max(self.m, self.n)

    @property
    def j_index(self):
        return np.arange(self.k0, self.truncation + 1) - self.m

    @property
    def k_index(self):
        return np.arange(self.k0, self.truncation + 1) - self.n

    @property
    def coeffs(self):
        return {(int(j), int(k)): float(c)
                for j, k, c in zip(self.j_index, self.k_index, self.amplitudes)}

    def grid(self):
        """Dense (j, k) coefficient grid"""
        grid = np.zeros((self.truncation - self.m + 1, self.truncation - self.n + 1))
        grid[self.j_index, self.k_index] = self.amplitudes
        return grid


@dataclass(frozen=True)
class TwoModeCM:
    """
    Covariance matrix in standard form, quadrature order (x1, p1, x2, p2):
    A = a_diag I, B = b_diag I, C = diag(c_diag, -c_diag)
    """
    a_diag: float
    b_diag: float
    c_diag: float

    def __post_init__(self):
        for name in ['a_diag', 'b_diag']:
            if getattr(self, name) < 0.5 - unphysical_tol:
                raise UnphysicalCMError("{} = {} is below the vacuum variance "
                                        "1/2".format(name, getattr(self, name)))

    def swapped(self):
        return TwoModeCM(self.b_diag, self.a_diag, self.c_diag)

    def matrix(self):
        a, b, c = self.a_diag, self.b_diag, self.c_diag
        return np.array([[a, 0., c, 0.],
                         [0., a, 0., -c],
                         [c, 0., b, 0.],
                         [0., -c, 0., b]])


def _normalization(m, n, lam):
    """N_{r,m,n} without the subtraction ceiling; used for the m+1, n+1 ratios"""

    if m == 0 and n == 0:
        return 1.0

    sinh2 = lam**2 / (1.0 - lam**2)
    cosh2r = (1.0 + lam**2) / (1.0 - lam**2)

    low, high = sorted((m, n))
    return factorial(m) * factorial(n) * sinh2**high * jacobi_p(low, high - low, 0, cosh2r)


def normalization(spec):
    """
    Purpose:
      Squared norm N_{r,m,n} of a^m b^n S(r)|00>, from the Jacobi-polynomial
      form (m <= n branch, modes exchanged otherwise)

    :param spec: SubtractionSpec

    :return: float N > 0
    """

    return _normalization(spec.m, spec.n, spec.lam)


def mean_photon_numbers(spec):
    """
    Purpose:
      Mean photon numbers <a^dag a> and <b^dag b> of the normalized state,
      N_{r,m+1,n}/N_{r,m,n} and N_{r,m,n+1}/N_{r,m,n}

    :param spec: SubtractionSpec

    :return: tuple of floats
    """

    norm = normalization(spec)
    return (_normalization(spec.m + 1, spec.n, spec.lam) / norm,
            _normalization(spec.m, spec.n + 1, spec.lam) / norm)


def truncation_index(spec, tail_eps=None):
    """
    Purpose:
      Starting truncation K = max(m,n) + ceil(ln(tail_eps (1-lam^2)) / (2 ln lam)) + margin

    :param spec: SubtractionSpec
    :param tail_eps: float. Default: package tail_eps

    :return: int K
    """

    if tail_eps is None:
        tail_eps = default_tail_eps
    if tail_eps <= 0:
        raise DomainError("tail_eps must be positive, got {}".format(tail_eps))

    k0 = max(spec.m, spec.n)
    if spec.lam == 0.0:
        return k0

    geometric = ceil(ln(tail_eps * (1.0 - spec.lam**2)) / (2.0 * ln(spec.lam)))
    return k0 + max(geometric, 0) + truncation_margin


def _log_amplitudes(k, m, n, lam):
    # ln of the unnormalized amplitude at pre-subtraction index k
    return (0.5 * np.log1p(-lam**2) + k * np.log(lam) + gammaln(k + 1)
            - 0.5 * gammaln(k - m + 1) - 0.5 * gammaln(k - n + 1))


def _tail_weight(k_start, m, n, lam):
    """Squared-amplitude mass beyond k_start - 1, summed until negligible"""

    total = 0.0
    block = 64
    k = k_start
    while True:
        ks = np.arange(k, k + block)
        terms = np.exp(2.0 * _log_amplitudes(ks, m, n, lam))
        total += terms.sum()
        if terms[-1] <= 1e-30 * max(total, 1e-300):
            return total
        k += block
        if k > 100 * truncation_cap:
            return total


def _adaptive_truncation(spec, tail_eps, norm):
    """Smallest K on the margin grid whose discarded tail is below tail_eps"""

    m, n, lam = spec.m, spec.n, spec.lam
    truncation = truncation_index(spec, tail_eps=tail_eps)

    while True:
        if truncation > truncation_cap:
            log.warning("!!! Truncation {} exceeds cap {} for (m, n, lam) = ({}, {}, {}) "
                        "!!!".format(truncation, truncation_cap, m, n, lam))
            raise TruncationError("Fock truncation K = {} exceeds the cap {} "
                                  "(tail_eps = {})".format(truncation, truncation_cap, tail_eps))

        tail = _tail_weight(truncation + 1, m, n, lam)
        if tail / norm < tail_eps:
            return truncation
        truncation += truncation_margin


def fock_coefficients(spec, tail_eps=None, truncation=None):
    """
    Purpose:
      Truncated, normalized Fock amplitudes c_{k-m, k-n} proportional to
      lam^k k! / sqrt((k-m)! (k-n)!).  K grows from truncation_index() until the
      discarded squared-amplitude tail, relative to N, drops below tail_eps.

    :param spec: SubtractionSpec
    :param tail_eps: float. Default: package tail_eps
    :param truncation: int to fix K instead of choosing it adaptively

    :return state: FockState
    """

    m, n, lam = spec.m, spec.n, spec.lam
    k0 = max(m, n)

    if lam == 0.0:
        return FockState(m, n, lam, np.array([1.0]), 0, 1.0)

    if tail_eps is None:
        tail_eps = default_tail_eps

    norm = normalization(spec)

    if truncation is not None:
        if not k0 <= truncation <= truncation_cap:
            raise TruncationError("Fixed truncation {} outside [{}, {}]".format(
                truncation, k0, truncation_cap))
    else:
        truncation = _adaptive_truncation(spec, tail_eps, norm)

    ks = np.arange(k0, truncation + 1)
    raw = np.exp(_log_amplitudes(ks, m, n, lam))
    raw_norm = float(np.sum(raw**2))

    log.debug("Fock expansion of ({}, {}, {}): K = {}, retained norm {:.16g}".format(
        m, n, lam, truncation, raw_norm / norm))

    return FockState(m, n, lam, raw / np.sqrt(raw_norm), int(truncation), raw_norm)


def covariance_matrix(spec):
    """
    Purpose:
      Closed-form covariance matrix of the resource (n >= m branch; modes are
      exchanged and A, B swapped back otherwise):

        a = 1/2 + N_{r,m+1,n}/N,  b = 1/2 + N_{r,m,n+1}/N,
        c = (n+1)/2 sinh(2r) P_m^{(n-m,1)}(cosh 2r) / P_m^{(n-m,0)}(cosh 2r)

    :param spec: SubtractionSpec

    :return cm: TwoModeCM
    """

    if spec.m > spec.n:
        return covariance_matrix(spec.swapped()).swapped()

    m, n, lam = spec.m, spec.n, spec.lam
    n_a, n_b = mean_photon_numbers(spec)

    sinh_2r = 2.0 * lam / (1.0 - lam**2)
    cosh_2r = (1.0 + lam**2) / (1.0 - lam**2)

    c_diag = 0.5 * (n + 1) * sinh_2r * jacobi_p(m, n - m, 1, cosh_2r) / jacobi_p(m, n - m, 0, cosh_2r)

    return TwoModeCM(0.5 + n_a, 0.5 + n_b, c_diag)
