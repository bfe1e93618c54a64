import numpy as np
from scipy.special import comb, eval_jacobi, factorial as sp_factorial
from scipy.special import gammaln, xlogy

from . import entropy_clamp_tol
from .exceptions import DomainError
from .log_commons import get_logger

log = get_logger(__name__)

exact_max = 20


def _scalar_or_array(result, x):
    if np.ndim(x) == 0:
        return float(result)
    return result


def log_factorial(k):
    """
    Purpose:
      Natural logarithm of k!

    :param k: non-negative int

    :return: float ln(k!)

    >>> log_factorial(0)
    0.0
    """

    if k < 0:
        log.warning("!!! log_factorial: negative argument {} !!!".format(k))
        raise DomainError("log_factorial requires k >= 0, got {}".format(k))

    if k <= exact_max:
        return float(np.log(float(sp_factorial(k, exact=True))))

    return float(gammaln(k + 1))


def factorial(k):
    """
    Purpose:
      k! as a float; exact for k <= 20

    :param k: non-negative int

    :return: float k!
    """

    if k < 0:
        raise DomainError("factorial requires k >= 0, got {}".format(k))

    if k <= exact_max:
        return float(sp_factorial(k, exact=True))

    return float(np.exp(gammaln(k + 1)))


def binomial(n, k):
    """
    Purpose:
      Binomial coefficient C(n, k) for integer n, k.  Returns 0 when k < 0
      or k > n.

    :param n: int
    :param k: int

    :return: float C(n, k)

    >>> binomial(5, 2)
    10.0
    """

    if k < 0 or k > n:
        return 0.0

    if n <= exact_max:
        return float(comb(n, k, exact=True))

    value = np.exp(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))

    # integer-valued; rounding removes log-domain noise while it is exact
    if value < 2.0**53:
        value = np.rint(value)

    return float(value)


def jacobi_p(m, alpha, beta, x):
    """
    Purpose:
      Jacobi polynomial P_m^{(alpha, beta)}(x) from the finite sum

        P_m(x) = sum_k C(m+alpha, k) C(m+beta, m-k) ((x+1)/2)^k ((x-1)/2)^(m-k)

      which has no division and is exact at x = 1.  Every term carries the
      same sign for |x| >= 1, the regime of cosh(2r).  Inside (-1, 1), where
      the sum cancels, scipy's evaluation is used when alpha > -1.

    :param m: non-negative int degree
    :param alpha: int >= -m
    :param beta: non-negative int
    :param x: float or numpy array

    :return: float or numpy array

    >>> jacobi_p(1, 1, 0, 3.0)
    5.0
    """

    if m < 0:
        log.warning("!!! jacobi_p: negative degree {} !!!".format(m))
        raise DomainError("jacobi_p requires m >= 0, got {}".format(m))
    if alpha < -m:
        raise DomainError("jacobi_p requires alpha >= -m, got alpha={}, m={}".format(alpha, m))

    x_arr = np.asarray(x, dtype=float)

    half_plus = (x_arr + 1.0) / 2.0
    half_minus = (x_arr - 1.0) / 2.0

    total = np.zeros_like(x_arr)
    for k in range(m + 1):
        coeff = binomial(m + alpha, k) * binomial(m + beta, m - k)
        if coeff == 0.0:
            continue
        total = total + coeff * half_plus**k * half_minus**(m - k)

    if alpha > -1 and m > 0:
        inside = np.abs(x_arr) < 1.0
        if np.any(inside):
            total = np.where(inside, eval_jacobi(m, alpha, beta, x_arr), total)

    return _scalar_or_array(total, x)


def laguerre_table(n_max, k, x):
    """
    Purpose:
      Associated Laguerre polynomials L_0^{(k)}(x) ... L_{n_max}^{(k)}(x) by
      the three-term recurrence

        (i+1) L_{i+1} = (2i + 1 + k - x) L_i - (i + k) L_{i-1}

      which also holds for negative k.  k and x broadcast against each other.

    :param n_max: non-negative int, highest degree
    :param k: int, float or numpy array of orders
    :param x: float or numpy array of arguments

    :return table: numpy array of shape (n_max+1,) + broadcast(k, x).shape
    """

    if n_max < 0:
        raise DomainError("laguerre_table requires n_max >= 0, got {}".format(n_max))

    k_arr = np.asarray(k, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    shape = np.broadcast(k_arr, x_arr).shape

    table = np.empty((n_max + 1,) + shape)
    table[0] = 1.0
    if n_max >= 1:
        table[1] = 1.0 + k_arr - x_arr

    for i in range(1, n_max):
        table[i + 1] = ((2 * i + 1 + k_arr - x_arr) * table[i] - (i + k_arr) * table[i - 1]) / (i + 1)

    return table


def laguerre_assoc(n, k, x):
    """
    Purpose:
      Associated Laguerre polynomial L_n^{(k)}(x)

    :param n: non-negative int degree
    :param k: int order with n + k >= 0
    :param x: float or numpy array

    :return: float or numpy array

    >>> laguerre_assoc(1, 0, 2.0)
    -1.0
    """

    if n < 0 or n + k < 0:
        log.warning("!!! laguerre_assoc: invalid (n, k) = ({}, {}) !!!".format(n, k))
        raise DomainError("laguerre_assoc requires n >= 0 and n + k >= 0, "
                          "got n={}, k={}".format(n, k))

    value = laguerre_table(n, k, x)[n]

    return _scalar_or_array(value, x)


def h_entropy(x):
    """
    Purpose:
      Entropy function of a single-mode Gaussian state with symplectic
      eigenvalue x (vacuum variance 1/2):

        h(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2)

      Values below 1/2 by at most entropy_clamp_tol are clamped to 1/2.

    :param x: float or numpy array, >= 1/2

    :return: float or numpy array

    >>> h_entropy(0.5)
    0.0
    """

    x_arr = np.asarray(x, dtype=float)

    if np.any(x_arr < 0.5 - entropy_clamp_tol):
        log.warning("!!! h_entropy: argument below 1/2 !!!")
        raise DomainError("h_entropy requires x >= 1/2, got min {}".format(x_arr.min()))

    x_arr = np.maximum(x_arr, 0.5)
    value = xlogy(x_arr + 0.5, x_arr + 0.5) - xlogy(x_arr - 0.5, x_arr - 0.5)

    return _scalar_or_array(value, x)
