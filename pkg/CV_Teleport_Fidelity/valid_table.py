from math import sqrt
from multiprocessing import Pool
from os.path import exists

import numpy as np
from astropy.io import ascii as asc
from astropy.table import Table

from . import get_jobs
from .column_names import filename_dict, valid_table_names0
from .log_commons import get_logger
from .resource_state import SubtractionSpec, normalization
from .analysis.closed_form import fidelity_closed, fidelity_laguerre, classical_crossing
from .analysis.gaussian_calculus import fidelity_general, fidelity_from_polynomial, lambda_polynomial
from .analysis.fock_oracle import fidelity_oracle

log = get_logger(__name__)

selfcheck_m = range(4)
selfcheck_n = range(5)
selfcheck_lam = [0.1, 0.3, 0.5, 0.7, 0.8]

closed_engine_tol = 1e-10
engine_oracle_tol = 1e-8
laguerre_tol = 1e-10
crossing_tol = 1e-6

status_names0 = ['PASS', 'FAIL', 'KNOWN-DEVIATION']


def engine_fidelity(m, n, lam):
    return fidelity_general(SubtractionSpec(m, n, lam))


def corrupted_engine(factor=1.01):
    """
    Purpose:
      Engine path with the largest polynomial coefficient scaled by factor;
      used to check that the self-check catches a wrong engine

    :param factor: float. Default: 1.01

    :return: callable (m, n, lam) -> F
    """

    def engine(m, n, lam):
        spec = SubtractionSpec(m, n, lam)
        poly = lambda_polynomial(spec)
        expo, coef = max(poly.terms.items(), key=lambda item: abs(item[1]))
        p, q, s, t = expo
        partner = (q, p, t, s)
        # keep conjugation symmetry so the value stays real
        poly = poly.with_coefficient(expo, coef * factor)
        if partner != expo:
            poly = poly.with_coefficient(partner, poly.coefficient(*partner) * factor)
        return fidelity_from_polynomial(poly, normalization(spec))

    return engine


def _row(check, m, n, lam, closed, engine, oracle, deviation, tolerance, status=None):
    if status is None:
        status = 'PASS' if deviation <= tolerance else 'FAIL'
    return [check, m, n, lam, closed, engine, oracle, deviation, tolerance, status]


def _oracle_task(task):
    m, n, lam = task
    return fidelity_oracle(SubtractionSpec(m, n, lam))


def _oracle_values(tasks, jobs):
    if jobs == 1:
        return [_oracle_task(task) for task in tasks]
    with Pool(min(jobs, len(tasks))) as pool:
        return pool.map(_oracle_task, tasks)


def make_validation_table(engine=None, with_oracle=True, jobs=None):
    """
    Purpose:
      This function runs the agreement matrix between the closed-form,
      engine and Fock-oracle fidelities over m <= 3, n <= 4 and
      lam in {0.1, 0.3, 0.5, 0.7, 0.8}, together with the Laguerre-integral
      cross-check, the Gaussian baseline, mode-swap symmetry and the
      (0, 1) classical crossing.  The printed m = 3 closed form is listed as
      KNOWN-DEVIATION with its recorded magnitude.

    Usage:
        tab = valid_table.make_validation_table()

    :param engine: callable (m, n, lam) -> F replacing the engine path. Default: None
    :param with_oracle: bool to include the oracle column. Default: True
    :param jobs: int or None for $CVTELEFI_JOBS

    :return tab: astropy Table with valid_table_names0 columns
    """

    if engine is None:
        engine = engine_fidelity

    grid = [(m, n, lam) for m in selfcheck_m for n in selfcheck_n for lam in selfcheck_lam]

    oracle = dict()
    if with_oracle:
        log.info("Running Fock oracle on {} points".format(len(grid)))
        oracle = dict(zip(grid, _oracle_values(grid, get_jobs(jobs))))

    rows = list()
    for m, n, lam in grid:
        report = fidelity_closed(m, n, lam)
        engine_value = engine(m, n, lam)

        rows.append(_row('closed-engine', m, n, lam, report.value, engine_value, np.nan,
                         abs(report.value - engine_value), closed_engine_tol))

        if with_oracle:
            rows.append(_row('engine-oracle', m, n, lam, report.value, engine_value,
                             oracle[(m, n, lam)], abs(engine_value - oracle[(m, n, lam)]),
                             engine_oracle_tol))

        laguerre = fidelity_laguerre(m, n, lam)
        rows.append(_row('laguerre-closed', m, n, lam, report.value, engine_value, np.nan,
                         abs(laguerre - report.value), laguerre_tol))

        if report.printed_formula_deviation is not None:
            rows.append(_row('printed-m3', m, n, lam, report.value, engine_value, np.nan,
                             report.printed_formula_deviation, closed_engine_tol,
                             status='KNOWN-DEVIATION'))

    for lam in selfcheck_lam:
        baseline = engine(0, 0, lam)
        rows.append(_row('gaussian-baseline', 0, 0, lam, (1.0 + lam) / 2.0, baseline, np.nan,
                         abs(baseline - (1.0 + lam) / 2.0), 1e-12))

        for m, n in [(0, 1), (1, 2), (1, 3), (2, 4)]:
            forward = engine(m, n, lam)
            swapped = engine(n, m, lam)
            rows.append(_row('mode-swap', m, n, lam, np.nan, forward, np.nan,
                             abs(forward - swapped), closed_engine_tol))

    crossing = classical_crossing(0, 1, fidelity=engine)
    expected = sqrt(2.0) - 1.0
    deviation = np.inf if crossing is None else abs(crossing - expected)
    rows.append(_row('crossing-0-1', 0, 1, expected, 0.5, np.nan, np.nan, deviation, crossing_tol))

    tab = Table(rows=rows, names=valid_table_names0)

    n_fail = int(np.sum(tab['status'] == 'FAIL'))
    if n_fail:
        log.warning("!!! {} self-check cell(s) FAILED !!!".format(n_fail))

    return tab


def selfcheck_passed(tab):
    return not np.any(tab['status'] == 'FAIL')


def write_validation_table(tab, outfile=None):
    """
    Purpose:
      Write the self-check table in fixed_width_two_line format

    :param tab: astropy Table from make_validation_table()
    :param outfile: str path. Default: filename_dict['selfcheck']
    """

    if outfile is None:
        outfile = filename_dict['selfcheck']

    if exists(outfile):
        log.info("Overwriting : " + outfile)
    else:
        log.info("Writing : " + outfile)
    asc.write(tab, outfile, format='fixed_width_two_line', overwrite=True)
