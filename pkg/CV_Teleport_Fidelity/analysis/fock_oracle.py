from dataclasses import dataclass, replace

import numpy as np
from scipy.special import gammaln, roots_laguerre, xlogy

from .. import radial_nodes as default_radial_nodes
from .. import angular_nodes as default_angular_nodes
from .. import oracle_tail_eps, refine_tol, imag_residue_tol
from ..exceptions import CVTeleFiError, DomainError, QuadratureError
from ..log_commons import get_logger
from ..resource_state import SubtractionSpec, TwoModeCM, fock_coefficients
from ..special_functions import laguerre_assoc, laguerre_table
from .gaussian_calculus import coherent_log_chi

log = get_logger(__name__)

first_moment_tol = 1e-12


@dataclass(frozen=True)
class QuadratureScheme:
    radial_nodes: int = default_radial_nodes
    angular_nodes: int = default_angular_nodes

    @staticmethod
    def min_angular_nodes(m, n):
        return 4 * (m + n) + 8

    @classmethod
    def for_spec(cls, m, n, radial_nodes=None, angular_nodes=None):
        """Default scheme with the angular grid raised to the degree bound of (m, n)"""

        if radial_nodes is None:
            radial_nodes = default_radial_nodes
        if angular_nodes is None:
            angular_nodes = default_angular_nodes

        return cls(radial_nodes, max(angular_nodes, cls.min_angular_nodes(m, n)))

    def validate(self, m, n):
        if self.radial_nodes < 1:
            raise QuadratureError("radial_nodes must be positive, got {}".format(self.radial_nodes))
        if self.angular_nodes < self.min_angular_nodes(m, n):
            log.warning("!!! {} angular nodes below {} for (m, n) = ({}, {}) !!!".format(
                self.angular_nodes, self.min_angular_nodes(m, n), m, n))
            raise QuadratureError("angular_nodes = {} < 4(m+n)+8 = {}".format(
                self.angular_nodes, self.min_angular_nodes(m, n)))

    def refined(self):
        return replace(self, radial_nodes=2 * self.radial_nodes)


def displacement_element(j, k, alpha):
    """
    Purpose:
      <j| D(alpha) |k> for D(alpha) = exp(alpha a^dag - alpha* a):

        j >= k: sqrt(k!/j!) alpha^(j-k) e^{-|alpha|^2/2} L_k^{(j-k)}(|alpha|^2)
        j <  k: sqrt(j!/k!) (-alpha*)^(k-j) e^{-|alpha|^2/2} L_j^{(k-j)}(|alpha|^2)

    :param j: non-negative int row
    :param k: non-negative int column
    :param alpha: complex

    :return: complex
    """

    if j < 0 or k < 0:
        raise DomainError("Fock indices must be non-negative, got ({}, {})".format(j, k))

    t = abs(alpha)**2
    theta = np.angle(alpha)
    low, high = min(j, k), max(j, k)
    d = high - low

    log_prefactor = -t / 2.0 + xlogy(d / 2.0, t) + 0.5 * (gammaln(low + 1) - gammaln(high + 1))
    radial = np.exp(log_prefactor) * laguerre_assoc(low, d, t)

    if j >= k:
        return complex(radial * np.exp(1j * d * theta))
    return complex((-1)**d * radial * np.exp(-1j * d * theta))


def radial_displacement(dim, t):
    """
    Purpose:
      Real matrix S(t) with <p| D(alpha) |q> = S_pq(|alpha|^2) e^{i (p-q) arg(alpha)}
      for p, q < dim, from one Laguerre table

    :param dim: int matrix size
    :param t: float |alpha|^2

    :return s_matrix: (dim, dim) numpy array
    """

    orders = np.arange(dim)
    q_index, d_index = np.nonzero(orders[:, np.newaxis] + orders[np.newaxis, :] < dim)

    # entries with q + d >= dim are never used and may overflow
    with np.errstate(over='ignore', invalid='ignore'):
        table = laguerre_table(dim - 1, orders, t)      # table[q, d] = L_q^{(d)}(t)
        log_prefactor = (-t / 2.0 + xlogy(d_index / 2.0, t)
                         + 0.5 * (gammaln(q_index + 1) - gammaln(q_index + d_index + 1)))
        lower = np.exp(log_prefactor) * table[q_index, d_index]

    s_matrix = np.empty((dim, dim))
    s_matrix[q_index + d_index, q_index] = lower
    s_matrix[q_index, q_index + d_index] = np.where(d_index % 2 == 0, lower, -lower)

    return s_matrix


def displacement_matrix(dim, alpha):
    """
    Purpose:
      Truncated matrix of D(alpha) on Fock states 0 ... dim-1

    :param dim: int
    :param alpha: complex

    :return: (dim, dim) complex numpy array
    """

    orders = np.arange(dim)
    phase = np.exp(1j * np.angle(alpha) * (orders[:, np.newaxis] - orders[np.newaxis, :]))

    return radial_displacement(dim, abs(alpha)**2) * phase


def chi12_numeric(state, alpha, beta):
    """
    Purpose:
      <psi| D_1(alpha) D_2(beta) |psi> over the shifted-diagonal support

    :param state: FockState (normalized)
    :param alpha: complex
    :param beta: complex

    :return: complex
    """

    j, k, amps = state.j_index, state.k_index, state.amplitudes

    d1 = displacement_matrix(int(j.max()) + 1, alpha)
    d2 = displacement_matrix(int(k.max()) + 1, beta)

    block = d1[np.ix_(j, j)] * d2[np.ix_(k, k)]

    return complex(amps @ block @ amps)


def _quadrature(state, mu, scheme):
    nodes, weights = roots_laguerre(scheme.radial_nodes)
    thetas = 2.0 * np.pi * np.arange(scheme.angular_nodes) / scheme.angular_nodes

    j, k, amps = state.j_index, state.k_index, state.amplitudes
    dim = int(max(j.max(), k.max())) + 1
    pair_amps = np.outer(amps, amps)

    radial_sum = np.empty(len(nodes), dtype=complex)
    for i, t in enumerate(nodes):
        s_matrix = radial_displacement(dim, t)
        m_block = pair_amps * s_matrix[np.ix_(j, j)] * s_matrix[np.ix_(k, k)]

        alpha = np.sqrt(t) * np.exp(1j * thetas)
        # chi_out(-alpha) = chi_in(-alpha) chi_12(-alpha*, -alpha)
        theta_1 = np.angle(-np.conj(alpha))
        theta_2 = np.angle(-alpha)
        phases = np.exp(1j * (np.outer(theta_1, j) + np.outer(theta_2, k)))
        chi = np.sum((phases @ m_block) * phases.conj(), axis=1)

        # e^{t} cancels the Gauss-Laguerre weight
        inputs = np.exp(coherent_log_chi(alpha, mu) + coherent_log_chi(-alpha, mu) + t)
        radial_sum[i] = np.sum(inputs * chi)

    value = np.sum(weights * radial_sum) / scheme.angular_nodes

    if abs(value.imag) > imag_residue_tol:
        log.warning("!!! Imaginary quadrature residue {} !!!".format(value.imag))
        raise QuadratureError("Fidelity quadrature has imaginary residue {}".format(value.imag))

    return float(value.real)


def fidelity_numeric(state, mu=0j, scheme=None, check_refinement=True):
    """
    Purpose:
      F = (1/pi) int d^2alpha chi_in(alpha) chi_out(-alpha) by quadrature in
      t = |alpha|^2 (Gauss-Laguerre, weight e^{-t}) and a uniform phase grid.
      The coherent amplitude mu is carried through.

    :param state: FockState (normalized)
    :param mu: complex coherent input amplitude. Default: 0
    :param scheme: QuadratureScheme. Default: for_spec(m, n)
    :param check_refinement: bool to repeat with doubled radial nodes and fail
                             when the result moves by more than refine_tol

    :return: float F
    """

    if scheme is None:
        scheme = QuadratureScheme.for_spec(state.m, state.n)
    scheme.validate(state.m, state.n)

    value = _quadrature(state, mu, scheme)

    if check_refinement:
        finer = _quadrature(state, mu, scheme.refined())
        if abs(finer - value) > refine_tol:
            log.warning("!!! Radial quadrature not converged: {} vs {} !!!".format(value, finer))
            raise QuadratureError("Doubling radial nodes moved F by {:.3g} > {}".format(
                abs(finer - value), refine_tol))
        value = finer

    log.debug("oracle F({}, {}, {}) = {:.15g} (K = {}, mu = {})".format(
        state.m, state.n, state.lam, value, state.truncation, mu))

    return value


def fidelity_oracle(spec, mu=0j, scheme=None, tail_eps=None):
    """fidelity_numeric() of the oracle-grade Fock expansion of spec"""

    if tail_eps is None:
        tail_eps = oracle_tail_eps
    return fidelity_numeric(fock_coefficients(spec, tail_eps=tail_eps), mu=mu, scheme=scheme)


def ladder_moments(state):
    """
    Purpose:
      <a^dag a>, <b^dag b>, <a>, <b>, <a^2>, <b^2>, <ab>, <a^dag b> from sums
      over the dense coefficient grid

    :param state: FockState (normalized)

    :return moments: dict
    """

    grid = state.grid()
    n_j, n_k = grid.shape
    j = np.arange(n_j)[:, np.newaxis]
    k = np.arange(n_k)[np.newaxis, :]
    prob = grid**2

    moments = dict()
    moments['n_a'] = np.sum(j * prob)
    moments['n_b'] = np.sum(k * prob)
    moments['a'] = np.sum(grid[:-1, :] * grid[1:, :] * np.sqrt(j[1:]))
    moments['b'] = np.sum(grid[:, :-1] * grid[:, 1:] * np.sqrt(k[:, 1:]))
    moments['a2'] = np.sum(grid[:-2, :] * grid[2:, :] * np.sqrt(j[2:] * (j[2:] - 1)))
    moments['b2'] = np.sum(grid[:, :-2] * grid[:, 2:] * np.sqrt(k[:, 2:] * (k[:, 2:] - 1)))
    moments['ab'] = np.sum(grid[:-1, :-1] * grid[1:, 1:] * np.sqrt(j[1:] * k[:, 1:]))
    moments['adag_b'] = np.sum(grid[1:, :-1] * grid[:-1, 1:] * np.sqrt(j[1:] * k[:, 1:]))

    return {key: float(value) for key, value in moments.items()}


def cm_numeric_matrix(state):
    """
    Purpose:
      Full 4x4 covariance matrix, quadrature order (x1, p1, x2, p2), vacuum
      variance 1/2, from ladder moments of a real-amplitude state

    :param state: FockState (normalized)

    :return sigma: (4, 4) numpy array
    """

    mom = ladder_moments(state)

    for key in ['a', 'b', 'a2', 'b2']:
        if abs(mom[key]) > first_moment_tol:
            log.warning("!!! <{}> = {} does not vanish !!!".format(key, mom[key]))
            raise CVTeleFiError("Moment <{}> = {} should vanish for the resource".format(key, mom[key]))

    mean_x1 = np.sqrt(2.0) * mom['a']
    mean_x2 = np.sqrt(2.0) * mom['b']

    var_x1 = 0.5 + mom['n_a'] + mom['a2'] - mean_x1**2
    var_p1 = 0.5 + mom['n_a'] - mom['a2']
    var_x2 = 0.5 + mom['n_b'] + mom['b2'] - mean_x2**2
    var_p2 = 0.5 + mom['n_b'] - mom['b2']
    cov_x = mom['ab'] + mom['adag_b'] - mean_x1 * mean_x2
    cov_p = -mom['ab'] + mom['adag_b']

    return np.array([[var_x1, 0., cov_x, 0.],
                     [0., var_p1, 0., cov_p],
                     [cov_x, 0., var_x2, 0.],
                     [0., cov_p, 0., var_p2]])


def cm_numeric(state):
    """
    Purpose:
      Standard-form covariance matrix (a_diag, b_diag, c_diag) from ladder
      moments

    :param state: FockState (normalized)

    :return cm: TwoModeCM
    """

    sigma = cm_numeric_matrix(state)
    return TwoModeCM(sigma[0, 0], sigma[2, 2], sigma[0, 2])


def cm_oracle(spec, tail_eps=None):
    """cm_numeric() of the oracle-grade Fock expansion of spec"""

    if tail_eps is None:
        tail_eps = oracle_tail_eps
    return cm_numeric(fock_coefficients(spec, tail_eps=tail_eps))


def oracle_for(m, n, lam, mu=0j, scheme=None):
    return fidelity_oracle(SubtractionSpec(m, n, lam), mu=mu, scheme=scheme)
