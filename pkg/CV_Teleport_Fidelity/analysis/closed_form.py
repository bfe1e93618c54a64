from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np
from scipy.optimize import bisect
from scipy.special import roots_genlaguerre

from ..exceptions import DomainError, UnsupportedOrderError
from ..log_commons import get_logger
from ..resource_state import SubtractionSpec, normalization
from ..special_functions import laguerre_assoc

log = get_logger(__name__)

max_closed_order = 5
corrected_table_version = '1.0'

# factor polynomials in n, highest power first
N = (1, 0)


def _lin(a, b):
    return (a, b)


N_M1, N_M2, N_M3, N_M4 = _lin(1, -1), _lin(1, -2), _lin(1, -3), _lin(1, -4)
N_P1, N_P2, N_P3, N_P4, N_P5 = _lin(1, 1), _lin(1, 2), _lin(1, 3), _lin(1, 4), _lin(1, 5)

F = Fraction

bracket_tables = {
    0: [(0, F(1), ())],
    1: [(0, F(4), (N,)),
        (1, F(-4), (N,)),
        (2, F(1), (N_P1,))],
    2: [(0, F(16, 2), (N, N_M1)),
        (1, F(-16), (N, N_M1)),
        (2, F(4), (N, _lin(3, -1))),
        (3, F(-4), (N, N_P1)),
        (4, F(1, 2), (N_P1, N_P2))],
    3: [(0, F(64, 6), (N, N_M1, N_M2)),
        (1, F(-64, 2), (N, N_M1, N_M2)),
        (2, F(8), (N, N_M1, _lin(5, -7))),
        (3, F(-16, 3), (N, N_M1, _lin(5, -1))),
        (4, F(2), (N, N_P1, _lin(5, -2))),
        (5, F(-2), (N, N_P1, N_P2)),
        (6, F(1, 6), (N_P1, N_P2, N_P3))],
    4: [(0, F(256, 24), (N, N_M1, N_M2, N_M3)),
        (1, F(-256, 6), (N, N_M1, N_M2, N_M3)),
        (2, F(32, 3), (N, N_M1, N_M2, _lin(7, -17))),
        (3, F(-32, 3), (N, N_M1, N_M2, _lin(7, -9))),
        (4, F(4, 3), (N, N_M1, (35, -55, 6))),
        (5, F(-8, 3), (N, N_M1, N_P1, _lin(7, -2))),
        (6, F(2, 3), (N, N_P1, N_P2, _lin(7, -3))),
        (7, F(-2, 3), (N, N_P1, N_P2, N_P3)),
        (8, F(1, 24), (N_P1, N_P2, N_P3, N_P4))],
    5: [(0, F(1024, 120), (N, N_M1, N_M2, N_M3, N_M4)),
        (1, F(-1024, 24), (N, N_M1, N_M2, N_M3, N_M4)),
        (2, F(32, 3), (N, N_M1, N_M2, N_M3, _lin(9, -31))),
        (3, F(-128, 9), (N, N_M1, N_M2, N_M3, _lin(9, -21))),
        (4, F(16, 3), (N, N_M1, N_M2, (21, -77, 62))),
        (5, F(-16, 15), (N, N_M1, N_M2, (63, -91, 6))),
        (6, F(4, 3), (N, N_M1, N_P1, (21, -35, 6))),
        (7, F(-8, 3), (N, N_P1, N_P2, N_M1, _lin(3, -1))),
        (8, F(1, 6), (N, N_P1, N_P2, N_P3, _lin(9, -4))),
        (9, F(-1, 6), (N, N_P1, N_P2, N_P3, N_P4)),
        (10, F(1, 120), (N_P1, N_P2, N_P3, N_P4, N_P5))],
}

# m = 3 exactly as printed: (n-3) in the first two terms, no lam power on the
# 4th and 5th terms, multiplied by f^{(2,n)}
printed_m3_table = [(0, F(64, 6), (N, N_M1, N_M3)),
                    (1, F(-64, 2), (N, N_M1, N_M3)),
                    (2, F(8), (N, N_M1, _lin(5, -7))),
                    (0, F(-16, 3), (N, N_M1, _lin(5, -1))),
                    (0, F(2), (N, N_P1, _lin(5, -2))),
                    (5, F(-2), (N, N_P1, N_P2)),
                    (6, F(1, 6), (N_P1, N_P2, N_P3))]
printed_m3_prefactor_order = 2


@dataclass(frozen=True)
class ClosedFormReport:
    value: float
    formula_id: str
    printed_formula_deviation: float = None


def _polyval_exact(coeffs, n):
    value = 0
    for c in coeffs:
        value = value * n + c
    return value


def bracket_coefficients(table, n):
    """
    Purpose:
      Exact coefficients of the bracket polynomial in lam at integer n

    :param table: list of (power, scale, factors)
    :param n: int

    :return coeffs: dict {power: Fraction}
    """

    coeffs = dict()
    for power, scale, factors in table:
        term = Fraction(scale)
        for factor in factors:
            term *= _polyval_exact(factor, n)
        coeffs[power] = coeffs.get(power, Fraction(0)) + term
    return coeffs


def bracket_value(table, n, lam):
    coeffs = bracket_coefficients(table, n)
    return sum(float(c) * lam**p for p, c in sorted(coeffs.items()))


def laguerre_bracket_coefficients(m, n):
    """
    Purpose:
      Exact bracket coefficients from the Laguerre integral,

        [lam^p] = 4^m m!/n! (-1)^p 2^{-p} (n-m+p)! sum_{i+j=p} b_i b_j,
        b_i = C(n, m-i) / i!

    :param m: int
    :param n: int >= m

    :return coeffs: dict {power: Fraction}
    """

    if not 0 <= m <= n:
        raise DomainError("Laguerre bracket needs 0 <= m <= n, got ({}, {})".format(m, n))

    b = [Fraction(comb(n, m - i), factorial(i)) for i in range(m + 1)]
    prefactor = Fraction(4**m * factorial(m), factorial(n))

    coeffs = dict()
    for p in range(2 * m + 1):
        pair_sum = sum(b[i] * b[p - i] for i in range(max(0, p - m), min(p, m) + 1))
        coeffs[p] = prefactor * (-1)**p * Fraction(1, 2**p) * factorial(n - m + p) * pair_sum
    return coeffs


def f_prefactor(m, n, lam):
    """
    Purpose:
      f^{(m,n)} = lam^{2n} m! n! (1 + lam) / (N_{r,m,n} 2^{m+n+1} (1 - lam)^{m+n}),
      modes exchanged first when m > n

    :param m: int
    :param n: int
    :param lam: float in [0, 1)

    :return: float
    """

    if m > n:
        m, n = n, m

    norm = normalization(SubtractionSpec(m, n, lam))

    return (lam**(2 * n) / norm * factorial(m) * factorial(n) * (1.0 + lam)
            / (2.0**(m + n + 1) * (1.0 - lam)**(m + n)))


def fidelity_closed(m, n, lam):
    """
    Purpose:
      Closed-form fidelity for min(m, n) <= 5

    :param m: int
    :param n: int
    :param lam: float in [0, 1)

    :return report: ClosedFormReport
    """

    if m > n:
        m, n = n, m

    if m > max_closed_order:
        log.warning("!!! No closed form for m = {} !!!".format(m))
        raise UnsupportedOrderError("Closed forms exist for min(m, n) <= {}, got {}; "
                                    "use the engine path".format(max_closed_order, m))

    value = bracket_value(bracket_tables[m], n, lam) * f_prefactor(m, n, lam)

    if m == 3:
        printed = (bracket_value(printed_m3_table, n, lam)
                   * f_prefactor(printed_m3_prefactor_order, n, lam))
        return ClosedFormReport(value, 'closed-m3-corrected-v' + corrected_table_version,
                                abs(printed - value))

    return ClosedFormReport(value, 'closed-m{}'.format(m))


def fidelity_laguerre(m, n, lam):
    """
    Purpose:
      Fidelity from the one-dimensional Laguerre integral, evaluated by
      Gauss-Laguerre quadrature with weight u^{n-m} e^{-u} (exact for the
      degree-2m integrand)

    :param m: int
    :param n: int
    :param lam: float in [0, 1)

    :return: float
    """

    if m > n:
        m, n = n, m

    nodes, weights = roots_genlaguerre(m + 1, n - m)
    integral = np.sum(weights * laguerre_assoc(m, n - m, lam * nodes / 2.0)**2)

    bracket = 4.0**m * factorial(m) / factorial(n) * integral

    return float(bracket * f_prefactor(m, n, lam))


def zero_squeezing_limit(m, n):
    """
    Purpose:
      One-sided limit of F^{(m,n)} as lam -> 0+: constant bracket term times
      lim f^{(m,n)} = 1 / (C(n, m) 2^{m+n+1})

    :param m: int
    :param n: int

    :return: float
    """

    if m > n:
        m, n = n, m

    constant = laguerre_bracket_coefficients(m, n)[0]
    return float(constant / (comb(n, m) * 2**(m + n + 1)))


def classical_crossing(m, n, fidelity=None, lo=1e-9, hi=1.0 - 1e-9, xtol=1e-12):
    """
    Purpose:
      Squeezing lam at which F^{(m,n)} crosses the classical limit 1/2,
      located by bisection

    :param m: int
    :param n: int
    :param fidelity: callable (m, n, lam) -> F. Default: closed form
    :param lo: float lower end of the bracket
    :param hi: float upper end of the bracket
    :param xtol: float

    :return: float lam, or None when F - 1/2 has the same sign at both ends
    """

    if fidelity is None:
        def fidelity(m0, n0, lam0):
            return fidelity_closed(m0, n0, lam0).value

    def excess(lam):
        return fidelity(m, n, lam) - 0.5

    if excess(lo) * excess(hi) > 0:
        return None

    return float(bisect(excess, lo, hi, xtol=xtol))


def _poly_str(coeffs):
    degree = len(coeffs) - 1
    out = ''
    for i, c in enumerate(coeffs):
        power = degree - i
        if c == 0:
            continue
        sign = '-' if c < 0 else ('+' if out else '')
        mag = abs(c)
        if power == 0:
            out += '{}{}'.format(sign, mag)
        else:
            num = '' if mag == 1 else str(mag)
            var = 'n' if power == 1 else 'n^{}'.format(power)
            out += '{}{}{}'.format(sign, num, var)
    return out


def _table_to_dict(table):
    return [{'lambda_power': power, 'scale': str(scale),
             'factors': [_poly_str(factor) for factor in factors]}
            for power, scale, factors in table]


def coefficient_table(m=None):
    """
    Purpose:
      JSON-ready export of the bracket tables, including the printed m = 3
      literal and its prefactor order

    :param m: int or None for all orders

    :return: dict
    """

    orders = range(max_closed_order + 1) if m is None else [m]

    export = {'version': corrected_table_version, 'orders': dict()}
    for order in orders:
        if order not in bracket_tables:
            raise UnsupportedOrderError("No coefficient table for m = {}".format(order))
        entry = {'prefactor_order': order, 'terms': _table_to_dict(bracket_tables[order])}
        if order == 3:
            entry['printed_literal'] = {'prefactor_order': printed_m3_prefactor_order,
                                        'terms': _table_to_dict(printed_m3_table)}
        export['orders'][str(order)] = entry

    return export
