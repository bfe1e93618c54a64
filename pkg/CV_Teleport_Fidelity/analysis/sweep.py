from dataclasses import dataclass, asdict
from functools import partial
from math import atanh
from multiprocessing import Pool
from os.path import exists
import json
import sys

import numpy as np
from astropy.io import ascii as asc
from astropy.table import Table, MaskedColumn

from .. import get_jobs
from ..column_names import sweep_names0, compare_names0, path_names0, \
    compare_table_names, merge_column_names
from ..exceptions import DomainError, GridError, UnsupportedOrderError
from ..log_commons import get_logger
from ..resource_state import SubtractionSpec, covariance_matrix
from .closed_form import fidelity_closed, max_closed_order, zero_squeezing_limit
from .fock_oracle import QuadratureScheme, fidelity_oracle, cm_oracle
from .gaussian_calculus import fidelity_general
from .non_gaussianity import non_gaussianity_from_cm, zero_squeezing_non_gaussianity

log = get_logger(__name__)

float_format = '%.15g'


@dataclass(frozen=True)
class SweepRecord:
    """One output row"""
    m: int
    n: int
    lam: float
    r: float
    fidelity: float
    ng: float = None
    path: str = 'closed'
    limit_flag: bool = False

    def as_dict(self):
        return asdict(self)


def parse_grid(text):
    """
    Purpose:
      Parse a squeezing grid given as 'start:stop:count' (inclusive ends,
      evenly spaced) or as a single value

    :param text: str

    :return grid: numpy array, strictly increasing within (0, 1)
    """

    fields = str(text).split(':')
    if len(fields) not in [1, 3]:
        raise GridError("Grid '{}' is not of the form start:stop:count".format(text))

    try:
        values = [float(v) for v in fields[:2]]
        count = int(fields[2]) if len(fields) == 3 else 1
    except ValueError:
        log.warning("!!! Unreadable grid '{}' !!!".format(text))
        raise GridError("Grid '{}' is not of the form start:stop:count".format(text))

    if count < 1:
        raise GridError("Grid count must be positive in '{}'".format(text))
    grid = np.linspace(values[0], values[-1], count)

    if np.any(grid <= 0.0) or np.any(grid >= 1.0):
        log.warning("!!! Grid '{}' leaves (0, 1) !!!".format(text))
        raise GridError("Grid values must lie in (0, 1), got '{}'".format(text))
    if np.any(np.diff(grid) <= 0.0):
        raise GridError("Grid '{}' is not strictly increasing".format(text))

    return grid


def parse_pairs(text):
    """
    Purpose:
      Parse '0,1;1,1' (or '0,1 1,1') into [(0, 1), (1, 1)]

    :param text: str

    :return: list of (m, n) tuples
    """

    pairs = list()
    for item in text.replace(';', ' ').split():
        try:
            m, n = [int(v) for v in item.split(',')]
        except ValueError:
            raise DomainError("Pair '{}' is not of the form m,n".format(item))
        pairs.append((m, n))

    if not pairs:
        raise DomainError("No (m, n) pairs given")
    return pairs


def resolve_path(m, n, path='auto'):
    if path == 'auto':
        return 'closed' if min(m, n) <= max_closed_order else 'engine'
    if path not in path_names0:
        raise DomainError("Unknown path '{}'; choose from {} or auto".format(path, path_names0))
    return path


def evaluate_point(m, n, lam, path='auto', with_ng=False, tail_eps=None, scheme=None, mu=0j):
    """
    Purpose:
      Fidelity (and non-Gaussianity) of one resource state.  At lam = 0 with
      m + n > 0 the one-sided lam -> 0+ limits are reported and limit_flag is set.

    :param m: int
    :param n: int
    :param lam: float in [0, 1)
    :param path: str one of 'closed', 'engine', 'oracle', 'auto'
    :param with_ng: bool to compute delta. Default: False
    :param tail_eps: float Fock tail tolerance for the oracle path
    :param scheme: QuadratureScheme for the oracle path
    :param mu: complex coherent input amplitude for the oracle path. Default: 0

    :return record: SweepRecord
    """

    path = resolve_path(m, n, path)
    lam = float(lam)

    if path == 'closed' and min(m, n) > max_closed_order:
        log.warning("!!! No closed form for min(m, n) = {} !!!".format(min(m, n)))
        raise UnsupportedOrderError("Closed forms exist for min(m, n) <= {}, got ({}, {}); "
                                    "use the engine path".format(max_closed_order, m, n))

    if lam == 0.0 and m + n > 0:
        # validates m and n
        SubtractionSpec(m, n, 0.5)
        log.info("Reporting lam -> 0+ limit for (m, n) = ({}, {})".format(m, n))
        ng = zero_squeezing_non_gaussianity(m, n) if with_ng else None
        return SweepRecord(m, n, lam, 0.0, zero_squeezing_limit(m, n), ng, path, True)

    spec = SubtractionSpec(m, n, lam)

    if path == 'closed':
        fidelity = fidelity_closed(m, n, lam).value
    elif path == 'engine':
        fidelity = fidelity_general(spec)
    else:
        if scheme is None:
            scheme = QuadratureScheme.for_spec(m, n)
        fidelity = fidelity_oracle(spec, mu=mu, scheme=scheme, tail_eps=tail_eps)

    ng = None
    if with_ng:
        cm = cm_oracle(spec, tail_eps=tail_eps) if path == 'oracle' else covariance_matrix(spec)
        ng = non_gaussianity_from_cm(cm)

    return SweepRecord(m, n, lam, atanh(lam), fidelity, ng, path, False)


def _evaluate_task(task, **kwargs):
    m, n, lam = task
    return evaluate_point(m, n, lam, **kwargs)


def run_sweep(pairs, lam_grid, path='auto', with_ng=False, tail_eps=None, scheme=None,
              jobs=None):
    """
    Purpose:
      Evaluate every (m, n) in pairs at every lam of the grid on a worker
      pool.  Records come back in canonical order (m, n, then lam) whatever
      the number of workers.

    :param pairs: list of (m, n)
    :param lam_grid: iterable of floats
    :param path: str. Default: 'auto'
    :param with_ng: bool. Default: False
    :param tail_eps: float. Default: package default
    :param scheme: QuadratureScheme or None
    :param jobs: int or None for $CVTELEFI_JOBS

    :return records: list of SweepRecord
    """

    tasks = [(m, n, float(lam)) for m, n in sorted(set(pairs)) for lam in sorted(lam_grid)]
    worker = partial(_evaluate_task, path=path, with_ng=with_ng, tail_eps=tail_eps, scheme=scheme)

    jobs = get_jobs(jobs)
    log.info("Evaluating {} grid points on {} worker(s)".format(len(tasks), jobs))

    if jobs == 1 or len(tasks) < 2:
        return [worker(task) for task in tasks]

    with Pool(min(jobs, len(tasks))) as pool:
        return pool.map(worker, tasks)


def compare_splits(total_c, lam_grid, path='auto', jobs=None):
    """
    Purpose:
      Fidelity of every split (m, C - m), m <= C/2, of a fixed subtraction
      budget, with the best split at each lam

    :param total_c: int >= 1
    :param lam_grid: iterable of floats
    :param path: str. Default: 'auto'
    :param jobs: int or None

    :return: list of (SweepRecord, best_m, best_n)
    """

    if int(total_c) != total_c or total_c < 1:
        log.warning("!!! Invalid budget C = {} !!!".format(total_c))
        raise DomainError("Total subtraction budget must be a positive integer, got {}".format(total_c))

    pairs = [(m, total_c - m) for m in range(total_c // 2 + 1)]
    records = run_sweep(pairs, lam_grid, path=path, jobs=jobs)

    best = dict()
    for rec in records:
        if rec.lam not in best or rec.fidelity > best[rec.lam].fidelity:
            best[rec.lam] = rec

    return [(rec, best[rec.lam].m, best[rec.lam].n) for rec in records]


def records_to_table(records, extra=None, names=None):
    """
    Purpose:
      astropy Table in the sweep schema; missing ng values are masked

    :param records: list of SweepRecord
    :param extra: dict {column name: list} appended after the sweep columns
    :param names: list of SweepRecord fields to keep. Default: sweep_names0

    :return tab: astropy.table.Table
    """

    if names is None:
        names = sweep_names0

    columns = list()
    for name in names:
        values = [getattr(rec, name) for rec in records]
        if name == 'ng':
            mask = [v is None for v in values]
            data = [np.nan if v is None else v for v in values]
            columns.append(MaskedColumn(np.array(data, dtype=float), name=name, mask=mask))
        elif name == 'path':
            columns.append(np.array(values, dtype=str))
        else:
            columns.append(np.array(values))

    extra_names = list()
    if extra:
        for name, values in extra.items():
            columns.append(np.array(values))
            extra_names.append(name)

    tab = Table(columns, names=merge_column_names(names, extra_names), masked=True)

    return tab


def compare_to_table(rows):
    records = [row[0] for row in rows]
    extra = dict(zip(compare_names0, [[rec.m + rec.n for rec in records],
                                      [row[1] for row in rows],
                                      [row[2] for row in rows]]))
    return records_to_table(records, extra=extra)[compare_table_names()]


def table_to_json(tab):
    rows = list()
    for row in tab:
        entry = dict()
        for name in tab.colnames:
            value = row[name]
            if np.ma.is_masked(value):
                entry[name] = None
            elif isinstance(value, (np.bool_, bool)):
                entry[name] = bool(value)
            elif isinstance(value, (np.integer,)):
                entry[name] = int(value)
            elif isinstance(value, (np.floating, float)):
                entry[name] = float(value)
            else:
                entry[name] = str(value)
        rows.append(entry)
    return json.dumps(rows, indent=1)


def write_table(tab, out=None, fmt='csv'):
    """
    Purpose:
      Write a sweep table as CSV (masked cells empty, floats as %.15g) or
      JSON, to a file or standard output

    :param tab: astropy.table.Table
    :param out: str file path or None for stdout
    :param fmt: str 'csv' or 'json'. Default: 'csv'
    """

    if fmt not in ['csv', 'json']:
        raise DomainError("Unknown output format '{}'".format(fmt))

    if out is not None:
        if exists(out):
            log.info("Overwriting : " + out)
        else:
            log.info("Writing : " + out)

    if fmt == 'json':
        text = table_to_json(tab) + '\n'
        if out is None:
            sys.stdout.write(text)
        else:
            with open(out, 'w') as fh:
                fh.write(text)
        return

    formats = {name: float_format for name in tab.colnames
               if tab[name].dtype.kind == 'f'}
    if out is None:
        asc.write(tab, sys.stdout, format='csv', formats=formats)
    else:
        asc.write(tab, out, format='csv', formats=formats, overwrite=True)
