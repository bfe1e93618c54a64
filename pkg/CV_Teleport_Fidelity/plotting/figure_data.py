from os.path import basename, join, exists
import os

import numpy as np

from .. import figure_lam_grid, figure_r_grid, dir_date
from ..column_names import figure_panels, figure_names0, filename_dict, sweep_names0, \
    fidelity_only_names
from ..exceptions import DomainError
from ..log_commons import get_logger
from ..analysis.sweep import run_sweep, records_to_table, write_table

log = get_logger(__name__)

# 1a-1d fixed m, 2a-2d fixed budget C, 3 and 4c symmetric m = n, 4d (delta, fidelity) pairs
panel_fix_m = {'1a': 0, '1b': 1, '1c': 2, '1d': 5}
panel_budget = {'2a': 2, '2b': 3, '2c': 4, '2d': 10}
family_width = 5
ng_panels = ['4a', '4b', '4c', '4d']


def fidelity_panel_pairs(which, n_span=family_width):
    """
    Purpose:
      (m, n) curve families of a fidelity panel

    :param which: str panel name
    :param n_span: int, n runs over m ... m + n_span for panels 1a-1d

    :return: list of (m, n)
    """

    if which in panel_fix_m:
        m = panel_fix_m[which]
        return [(0, 0)] + [(m, n) for n in range(m, m + n_span + 1) if (m, n) != (0, 0)]
    if which in panel_budget:
        total_c = panel_budget[which]
        return [(m, total_c - m) for m in range(total_c // 2 + 1)]
    if which == '3':
        return [(k, k) for k in range(6)]
    if which == '4a':
        return [(m, m + d) for d in range(3) for m in range(4)]
    if which == '4b':
        return [(m, 10 - m) for m in range(6)]
    if which in ['4c', '4d']:
        return [(k, k) for k in range(1, 6)]

    raise DomainError("Unknown figure panel '{}'; choose from {}".format(which, figure_panels))


def r_grid_to_lam(r_grid):
    return np.tanh(np.asarray(r_grid, dtype=float))


def _parse_r_grid(text):
    start, stop, count = text.split(':')
    return np.linspace(float(start), float(stop), int(count))


def panel_records(which, lam_grid=None, r_grid=None, n_span=family_width, jobs=None):
    """
    Purpose:
      Evaluate the curves of one panel.  Panels 1-3 and 4d run on the lam grid,
      4a-4c on the r grid (lam = tanh r).

    :param which: str panel name
    :param lam_grid: array. Default: figure_lam_grid
    :param r_grid: array. Default: figure_r_grid
    :param n_span: int
    :param jobs: int or None

    :return records: list of SweepRecord
    """

    pairs = fidelity_panel_pairs(which, n_span=n_span)

    if which in ['4a', '4b', '4c']:
        if r_grid is None:
            r_grid = _parse_r_grid(figure_r_grid)
        grid = r_grid_to_lam(r_grid)
    else:
        if lam_grid is None:
            start, stop, count = figure_lam_grid.split(':')
            lam_grid = np.linspace(float(start), float(stop), int(count))
        grid = np.asarray(lam_grid, dtype=float)

    with_ng = which in ng_panels

    log.info("Figure panel {}: {} curves".format(which, len(pairs)))
    return run_sweep(pairs, grid, path='auto', with_ng=with_ng, jobs=jobs)


def panel_table(which, records):
    # fidelity panels carry no ng column
    names = sweep_names0 if which in ng_panels else fidelity_only_names()
    return records_to_table(records, extra={figure_names0[0]: [which] * len(records)},
                            names=names)


def initial_slope(records, m, n):
    """
    Purpose:
      Discrete slope dF/d(delta) between the two smallest-delta points of
      the (m, n) curve

    :param records: list of SweepRecord carrying ng
    :param m: int
    :param n: int

    :return: float
    """

    curve = sorted([rec for rec in records if (rec.m, rec.n) == (m, n)], key=lambda rec: rec.ng)
    if len(curve) < 2:
        raise DomainError("Need two points of ({}, {}) for a slope".format(m, n))

    first, second = curve[0], curve[1]
    return (second.fidelity - first.fidelity) / (second.ng - first.ng)


def gnuplot_stub(which, csv_name, pairs):
    """Script text plotting each (m, n) curve of a panel from its CSV"""

    if which in ['4a', '4b', '4c']:
        xcol, ycol, xlabel, ylabel = 4, 6, 'r', 'delta'
    elif which == '4d':
        xcol, ycol, xlabel, ylabel = 6, 5, 'delta', 'F'
    else:
        xcol, ycol, xlabel, ylabel = 3, 5, 'lambda', 'F'

    lines = ["set datafile separator ','",
             "set key outside",
             "set xlabel '{}'".format(xlabel),
             "set ylabel '{}'".format(ylabel)]

    plots = ["'{}' every ::1 using (${}=={} && ${}=={} ? ${} : 1/0):{} with lines "
             "title '({},{})'".format(csv_name, 1, m, 2, n, xcol, ycol, m, n)
             for m, n in pairs]
    lines.append('plot ' + ', \\\n     '.join(plots))

    return '\n'.join(lines) + '\n'


def write_panel(which, outdir=None, out=None, gnuplot=False, jobs=None, **kwargs):
    """
    Purpose:
      Write the CSV of one panel (and its gnuplot stub)

    :param which: str panel name
    :param outdir: str directory, file name from filename_dict
    :param out: str explicit file path, or None with outdir None for stdout
    :param gnuplot: bool to also write the script stub
    :param jobs: int or None

    :return tab: astropy.table.Table
    """

    gp_file = None
    if out is None and outdir is not None:
        out = join(outdir, filename_dict['fig' + which])
        gp_file = join(outdir, filename_dict['fig' + which + '_gnuplot'])

    if gnuplot and out is None:
        raise DomainError('--gnuplot needs an output file for the CSV')

    records = panel_records(which, jobs=jobs, **kwargs)
    tab = panel_table(which, records)

    write_table(tab, out=out, fmt='csv')

    if gnuplot:
        if gp_file is None:
            gp_file = out.rsplit('.', 1)[0] + '.gp'
        if exists(gp_file):
            log.info("Overwriting : " + gp_file)
        else:
            log.info("Writing : " + gp_file)
        with open(gp_file, 'w') as fh:
            pairs = fidelity_panel_pairs(which, kwargs.get('n_span', family_width))
            fh.write(gnuplot_stub(which, basename(out), pairs))

    return tab


def write_all_panels(outdir=None, gnuplot=False, jobs=None):
    """
    Purpose:
      Write every panel into outdir, a dated directory under figure_data/ by default

    :param outdir: str or None
    :param gnuplot: bool
    :param jobs: int or None

    :return outdir: str
    """

    if outdir is None:
        os.makedirs('figure_data', exist_ok=True)
        outdir = dir_date('figure_data', year=True)

    for which in figure_panels:
        write_panel(which, outdir=outdir, gnuplot=gnuplot, jobs=jobs)

    return outdir
