from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import lru_cache
from types import MappingProxyType

import numpy as np

from .. import drop_ratio, imag_residue_tol
from ..exceptions import DomainError
from ..log_commons import get_logger
from ..resource_state import SubtractionSpec, normalization

log = get_logger(__name__)

ALPHA, ALPHA_C, BETA, BETA_C = 0, 1, 2, 3
variable_names0 = ['alpha', 'alpha_c', 'beta', 'beta_c']

# Fidelity substitution: first slot alpha*, second slot alpha, i.e.
# (alpha_1, alpha_1*, beta, beta*) = (alpha*, alpha, alpha, alpha*)
fidelity_substitution = np.array([[0., 1.],
                                  [1., 0.],
                                  [1., 0.],
                                  [0., 1.]])


def kernel_matrix(u, v, w):
    """
    Symmetric H with grad(phi) = H z for
    phi = u alpha alpha* + v beta beta* + w (alpha beta + alpha* beta*)
    """

    return np.array([[0., u, w, 0.],
                     [u, 0., 0., w],
                     [w, 0., 0., v],
                     [0., w, v, 0.]])


def _canonical(terms):
    """Drop coefficients below drop_ratio of the largest"""

    if not terms:
        return {}

    biggest = max(abs(coef) for coef in terms.values())
    if biggest == 0.0:
        return {}

    cutoff = drop_ratio * biggest
    return {expo: coef for expo, coef in terms.items() if abs(coef) > cutoff}


def _multiply(left, right):
    out = defaultdict(float)
    for expo_l, coef_l in left.items():
        for expo_r, coef_r in right.items():
            out[tuple(a + b for a, b in zip(expo_l, expo_r))] += coef_l * coef_r
    return dict(out)


def _linear_power(row, power, nvar):
    """Expansion of (sum_j row[j] y_j)^power as {exponent tuple: coefficient}"""

    single = {}
    for j, coef in enumerate(row):
        if coef != 0.0:
            expo = [0] * nvar
            expo[j] = 1
            single[tuple(expo)] = coef

    result = {tuple([0] * nvar): 1.0}
    for _ in range(power):
        result = _multiply(result, single)
    return result


def _expand_in_forms(terms, transform, nvar):
    """
    Rewrite a polynomial in forms x_i = sum_j transform[i, j] y_j as a
    polynomial in the y_j
    """

    out = defaultdict(float)
    cache = {}
    for expo, coef in terms.items():
        product = {tuple([0] * nvar): coef}
        for i, power in enumerate(expo):
            if power == 0:
                continue
            if (i, power) not in cache:
                cache[(i, power)] = _linear_power(transform[i], power, nvar)
            product = _multiply(product, cache[(i, power)])
        for key, value in product.items():
            out[key] += value
    return dict(out)


@dataclass(frozen=True, eq=False)
class GaussianPolynomial:
    """
    sum_{(p,q,s,t)} c_{pqst} f_1^p f_2^q f_3^s f_4^t  x  exp(phi)

    with f_i = sum_x basis[i, x] z_x (identity basis when basis is None) and
    kernel = (u, v, w) defining phi.
    """
    terms: dict
    kernel: tuple
    basis: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'terms', MappingProxyType(dict(self.terms)))
        object.__setattr__(self, 'kernel', tuple(float(k) for k in self.kernel))
        if self.basis is not None:
            basis = np.array(self.basis, dtype=float)
            basis.setflags(write=False)
            object.__setattr__(self, 'basis', basis)

    @property
    def u(self):
        return self.kernel[0]

    @property
    def v(self):
        return self.kernel[1]

    @property
    def w(self):
        return self.kernel[2]

    def basis_matrix(self):
        if self.basis is None:
            return np.eye(4)
        return self.basis

    def coefficient(self, p, q, s, t):
        return self.terms.get((p, q, s, t), 0.0)

    def degree(self):
        if not self.terms:
            return 0
        return max(sum(expo) for expo in self.terms)

    def is_conjugation_symmetric(self, rtol=1e-12):
        """coefficient(p,q,s,t) == coefficient(q,p,t,s) for every term"""

        scale = max([abs(c) for c in self.terms.values()] + [0.0])
        for (p, q, s, t), coef in self.terms.items():
            if abs(coef - self.coefficient(q, p, t, s)) > rtol * scale:
                return False
        return True

    def _kernel_gradient(self):
        """G with d(phi)/dz_v = sum_i G[v, i] f_i"""

        hessian = kernel_matrix(*self.kernel)
        if self.basis is None:
            return hessian
        if np.array_equal(self.basis, hessian):
            return np.eye(4)

        gradient = hessian @ np.linalg.inv(self.basis)
        gradient[np.abs(gradient) < 1e-14 * np.abs(gradient).max()] = 0.0
        return gradient

    def derivative(self, var):
        """
        Purpose:
          d/dz_var of the polynomial x Gaussian, z = (alpha, alpha*, beta, beta*)

        :param var: int index, one of ALPHA, ALPHA_C, BETA, BETA_C

        :return: GaussianPolynomial with the same kernel and basis
        """

        basis = self.basis_matrix()
        lowering = [(i, basis[i, var]) for i in range(4) if basis[i, var] != 0.0]
        raising = [(i, g) for i, g in enumerate(self._kernel_gradient()[var]) if g != 0.0]

        out = defaultdict(float)
        for expo, coef in self.terms.items():
            for i, factor in lowering:
                if expo[i] > 0:
                    new = list(expo)
                    new[i] -= 1
                    out[tuple(new)] += coef * expo[i] * factor
            for i, factor in raising:
                new = list(expo)
                new[i] += 1
                out[tuple(new)] += coef * factor

        return replace(self, terms=_canonical(out))

    def scaled(self, factor):
        return replace(self, terms={expo: factor * coef for expo, coef in self.terms.items()})

    def __neg__(self):
        return self.scaled(-1.0)

    def shift_kernel(self, du=0.0, dv=0.0, dw=0.0):
        """Multiply by exp(du |alpha|^2 + dv |beta|^2 + dw (alpha beta + alpha* beta*))"""

        u, v, w = self.kernel
        return replace(self, kernel=(u + du, v + dv, w + dw))

    def rebased(self, new_basis):
        """Same function, polynomial part expressed over the forms of new_basis"""

        new_basis = np.asarray(new_basis, dtype=float)
        if set(self.terms) <= {(0, 0, 0, 0)}:
            return replace(self, basis=new_basis)

        transform = self.basis_matrix() @ np.linalg.inv(new_basis)
        return replace(self, terms=_canonical(_expand_in_forms(self.terms, transform, 4)),
                       basis=new_basis)

    def with_coefficient(self, expo, value):
        terms = dict(self.terms)
        terms[tuple(expo)] = value
        return replace(self, terms=terms)

    def evaluate(self, alpha, beta, alpha_c=None, beta_c=None):
        """
        Purpose:
          Value at (alpha, alpha_c, beta, beta_c); the conjugate slots default
          to the complex conjugates of alpha and beta

        :return: complex
        """

        if alpha_c is None:
            alpha_c = np.conj(alpha)
        if beta_c is None:
            beta_c = np.conj(beta)

        z = np.array([alpha, alpha_c, beta, beta_c], dtype=complex)
        forms = self.basis_matrix() @ z

        u, v, w = self.kernel
        phi = u * z[0] * z[1] + v * z[2] * z[3] + w * (z[0] * z[2] + z[1] * z[3])

        if not self.terms:
            return 0j

        exponents = np.array(list(self.terms.keys()))
        coefs = np.array(list(self.terms.values()))
        monomials = np.prod(np.power(forms[np.newaxis, :], exponents), axis=1)

        return complex(np.dot(coefs, monomials) * np.exp(phi))


def tmsv_kernel(lam):
    """
    Purpose:
      Characteristic function of the two-mode squeezed vacuum,
      polynomial part 1 and kernel

        u = v = -(1 + lam^2) / (2 (1 - lam^2)),  w = lam / (1 - lam^2)

    :param lam: float in [0, 1)

    :return: GaussianPolynomial
    """

    if not 0.0 <= lam < 1.0:
        raise DomainError("lam must lie in [0, 1), got {}".format(lam))

    u = -(1.0 + lam**2) / (2.0 * (1.0 - lam**2))
    w = lam / (1.0 - lam**2)

    return GaussianPolynomial({(0, 0, 0, 0): 1.0}, (u, u, w))


def apply_lambda_ops(g, m, n):
    """
    Purpose:
      e^{-(|alpha|^2+|beta|^2)/2} Lambda^m(alpha) Lambda^n(beta) [e^{(|alpha|^2+|beta|^2)/2} g]

      The +1/2 is folded into the kernel, the polynomial is moved to the basis
      of folded-kernel gradients, the derivatives are applied, and the -1/2
      is restored.  Division by the normalization is left to the caller.

    :param g: GaussianPolynomial
    :param m: int photons subtracted from mode 1
    :param n: int photons subtracted from mode 2

    :return: GaussianPolynomial
    """

    if m < 0 or n < 0:
        raise DomainError("apply_lambda_ops requires m, n >= 0, got ({}, {})".format(m, n))
    if m == 0 and n == 0:
        return g

    folded = g.shift_kernel(0.5, 0.5)

    hessian = kernel_matrix(*folded.kernel)
    if abs(np.linalg.det(hessian)) > 0.0:
        folded = folded.rebased(hessian)

    result = folded
    for _ in range(m):
        result = result.derivative(ALPHA_C)
    for _ in range(m):
        result = -result.derivative(ALPHA)
    for _ in range(n):
        result = result.derivative(BETA_C)
    for _ in range(n):
        result = -result.derivative(BETA)

    log.debug("Lambda^{} Lambda^{}: {} terms, degree {}".format(
        m, n, len(result.terms), result.degree()))

    return result.shift_kernel(-0.5, -0.5)


@lru_cache(maxsize=256)
def _lambda_polynomial(m, n, lam):
    return apply_lambda_ops(tmsv_kernel(lam), m, n)


def lambda_polynomial(spec):
    """Unnormalized chi_12 of the resource as a GaussianPolynomial"""

    return _lambda_polynomial(spec.m, spec.n, spec.lam)


def chi12(spec, alpha, beta):
    """
    Purpose:
      Two-mode characteristic function <psi| D_1(alpha) D_2(beta) |psi>

    :param spec: SubtractionSpec
    :param alpha: complex
    :param beta: complex

    :return: complex
    """

    return lambda_polynomial(spec).evaluate(alpha, beta) / normalization(spec)


def coherent_log_chi(alpha, mu):
    """ln of the characteristic function of the coherent state |mu>"""

    return -abs(alpha)**2 / 2.0 + 2j * np.imag(alpha * np.conj(mu))


def coherent_input_product(alpha, mu):
    """chi_in(alpha) chi_in(-alpha) for the coherent input |mu>"""

    return np.exp(coherent_log_chi(alpha, mu) + coherent_log_chi(-alpha, mu))


@lru_cache(maxsize=1)
def _check_phase_cancellation():
    # chi_in(alpha) chi_in(-alpha) = exp(-|alpha|^2) for every input amplitude
    for alpha in [0.3 + 0.1j, -1.2 + 0.7j, 2.5j]:
        for mu in [0.0, 1.0 + 2.0j, -3.0j]:
            product = coherent_input_product(alpha, mu)
            if abs(product - np.exp(-abs(alpha)**2)) > 1e-14:
                raise DomainError("Coherent input phases do not cancel at alpha={}, "
                                  "mu={}".format(alpha, mu))
    return True


class GaussianMoments:
    """
    Moments E[alpha^a alpha*^b] of a centred complex Gaussian with
    E[alpha^2] = s_aa, E[alpha alpha*] = s_ab, E[alpha*^2] = s_bb, by Isserlis
    pairing of the first factor
    """

    def __init__(self, s_aa, s_ab, s_bb):
        self.s_aa = s_aa
        self.s_ab = s_ab
        self.s_bb = s_bb
        self.moment = lru_cache(maxsize=None)(self._moment)

    def _moment(self, a, b):
        if a < 0 or b < 0:
            return 0.0
        if a == 0 and b == 0:
            return 1.0
        if a > 0:
            return ((a - 1) * self.s_aa * self.moment(a - 2, b)
                    + b * self.s_ab * self.moment(a - 1, b - 1))
        return (b - 1) * self.s_bb * self.moment(a, b - 2)


def effective_quadratic_form(poly):
    """
    Purpose:
      Real 2x2 matrix Q with e^{-|alpha|^2} exp(phi) = exp(-(x, y) Q (x, y)^T / 2)
      at the fidelity substitution, alpha = x + i y

    :param poly: GaussianPolynomial

    :return q_matrix: 2x2 numpy array (complex dtype)
    """

    reduced = fidelity_substitution.T @ kernel_matrix(*poly.kernel) @ fidelity_substitution

    c0 = -1.0 + reduced[0, 1]
    c1 = reduced[0, 0] / 2.0
    c2 = reduced[1, 1] / 2.0

    return np.array([[-2.0 * (c0 + c1 + c2), -2j * (c1 - c2)],
                     [-2j * (c1 - c2), -2.0 * (c0 - c1 - c2)]])


def fidelity_from_polynomial(poly, norm):
    """
    Purpose:
      F = (1/pi) int d^2alpha e^{-|alpha|^2} chi_12(alpha*, alpha) for
      chi_12 = poly / norm, as a sum of Gaussian moments

    :param poly: GaussianPolynomial (unnormalized chi_12)
    :param norm: float normalization

    :return: float F
    """

    q_matrix = effective_quadratic_form(poly)
    if np.any(np.linalg.eigvalsh(q_matrix.real) <= 0.0):
        log.warning("!!! Effective quadratic form is not positive definite !!!")
        raise DomainError("Non-positive-definite effective quadratic form {}".format(q_matrix))

    sigma = np.linalg.inv(q_matrix)
    moments = GaussianMoments(sigma[0, 0] - sigma[1, 1] + 2j * sigma[0, 1],
                              sigma[0, 0] + sigma[1, 1],
                              sigma[0, 0] - sigma[1, 1] - 2j * sigma[0, 1])

    reduced = _expand_in_forms(poly.terms, poly.basis_matrix() @ fidelity_substitution, 2)

    total = 0j
    for (a, b), coef in sorted(reduced.items()):
        total += coef * moments.moment(a, b)

    value = 2.0 / np.sqrt(np.linalg.det(q_matrix)) * total / norm

    if abs(value.imag) > imag_residue_tol * max(1.0, abs(value.real)):
        log.warning("!!! Imaginary fidelity residue {} !!!".format(value.imag))
        raise DomainError("Fidelity has imaginary residue {}".format(value.imag))

    return float(value.real)


def fidelity_general(spec):
    """
    Purpose:
      Ideal teleportation fidelity of a coherent input with the resource
      described by spec, for any (m, n).

      With chi_out(alpha) = chi_in(alpha) chi_12(alpha*, alpha), the input
      phases cancel between chi_in(alpha) and chi_in(-alpha), leaving
      F = (1/pi) int e^{-|alpha|^2} chi_12(alpha*, alpha) d^2alpha.

    :param spec: SubtractionSpec

    :return: float F in (0, 1]
    """

    _check_phase_cancellation()

    value = fidelity_from_polynomial(lambda_polynomial(spec), normalization(spec))

    log.debug("engine F({}, {}, {}) = {:.15g}".format(spec.m, spec.n, spec.lam, value))

    return value


def fidelity_engine(m, n, lam):
    return fidelity_general(SubtractionSpec(m, n, lam))
