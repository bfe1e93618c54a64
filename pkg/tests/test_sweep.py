import json
from math import atanh, sqrt

import numpy as np
import pytest
from astropy.io import ascii as asc

from CV_Teleport_Fidelity.column_names import sweep_names0, compare_table_names
from CV_Teleport_Fidelity.analysis import sweep
from CV_Teleport_Fidelity.analysis.closed_form import zero_squeezing_limit
from CV_Teleport_Fidelity.exceptions import GridError, DomainError, UnsupportedOrderError


def test_parse_grid():

    np.testing.assert_allclose(sweep.parse_grid('0.1:0.9:9'), np.linspace(0.1, 0.9, 9))
    np.testing.assert_allclose(sweep.parse_grid('0.5'), [0.5])

    for text in ['0:0.5:3', '0.2:1.0:3', '0.5:0.2:4', '0.1:0.5', 'a:b:c', '0.1:0.5:0',
                 '0.3:0.3:2']:
        with pytest.raises(GridError):
            sweep.parse_grid(text)


def test_parse_pairs():

    assert sweep.parse_pairs('0,1;1,1') == [(0, 1), (1, 1)]
    assert sweep.parse_pairs('2,3 0,0') == [(2, 3), (0, 0)]

    for text in ['', '1', '1,2,3']:
        with pytest.raises(DomainError):
            sweep.parse_pairs(text)


def test_resolve_path():

    assert sweep.resolve_path(1, 7, 'auto') == 'closed'
    assert sweep.resolve_path(6, 7, 'auto') == 'engine'
    assert sweep.resolve_path(6, 7, 'oracle') == 'oracle'

    with pytest.raises(DomainError):
        sweep.resolve_path(0, 0, 'magic')


def test_evaluate_point():

    rec = sweep.evaluate_point(1, 1, 0.5, with_ng=True)
    assert rec.fidelity == pytest.approx(0.84375, abs=1e-12)
    assert rec.r == pytest.approx(atanh(0.5), abs=1e-12)
    assert rec.ng == pytest.approx(0.541130, abs=1e-5)
    assert rec.path == 'closed'
    assert not rec.limit_flag

    rec = sweep.evaluate_point(0, 0, 0.5, path='engine')
    assert rec.fidelity == pytest.approx(0.75, abs=1e-12)
    assert rec.ng is None

    rec = sweep.evaluate_point(1, 0, 0.5, path='oracle', mu=1.0 + 1.0j)
    assert rec.fidelity == pytest.approx(0.5625, abs=1e-8)

    with pytest.raises(UnsupportedOrderError):
        sweep.evaluate_point(6, 6, 0.5, path='closed')


def test_evaluate_point_zero_squeezing():

    rec = sweep.evaluate_point(1, 2, 0.0, with_ng=True)
    assert rec.limit_flag
    assert rec.fidelity == pytest.approx(0.25)
    assert rec.ng == pytest.approx(2 * np.log(2), rel=1e-12)
    assert rec.r == 0.0

    rec = sweep.evaluate_point(0, 0, 0.0)
    assert not rec.limit_flag
    assert rec.fidelity == pytest.approx(0.5, abs=1e-15)

    # closed forms stop at min(m, n) = 5, also for the limit
    with pytest.raises(UnsupportedOrderError):
        sweep.evaluate_point(6, 7, 0.0, path='closed')

    rec = sweep.evaluate_point(6, 7, 0.0)
    assert rec.path == 'engine'
    assert rec.limit_flag
    assert rec.fidelity == pytest.approx(zero_squeezing_limit(6, 7), rel=1e-12)


def test_run_sweep_order_and_jobs():

    grid = sweep.parse_grid('0.4:0.43:4')
    serial = sweep.run_sweep([(1, 1), (0, 1)], grid, jobs=1)
    parallel = sweep.run_sweep([(1, 1), (0, 1)], grid, jobs=2)

    assert [(rec.m, rec.n) for rec in serial] == [(0, 1)] * 4 + [(1, 1)] * 4
    assert serial == parallel

    # the (0, 1) curve crosses 1/2 between 0.41 and 0.42
    fid = [rec.fidelity for rec in serial[:4]]
    assert fid[1] < 0.5 < fid[2]
    assert grid[1] < sqrt(2) - 1 < grid[2]


def test_compare_splits():

    rows = sweep.compare_splits(2, [0.5])
    assert [(rec.m, rec.n) for rec, _, _ in rows] == [(0, 2), (1, 1)]
    assert rows[0][0].fidelity == pytest.approx(0.421875, abs=1e-12)
    assert rows[1][0].fidelity == pytest.approx(0.84375, abs=1e-12)
    assert all((best_m, best_n) == (1, 1) for _, best_m, best_n in rows)

    rows = sweep.compare_splits(1, [0.3, 0.6])
    assert len(rows) == 2
    assert all((best_m, best_n) == (0, 1) for _, best_m, best_n in rows)

    with pytest.raises(DomainError):
        sweep.compare_splits(0, [0.5])


def test_write_table_csv(tmp_path):

    records = sweep.run_sweep([(0, 0), (1, 1)], [0.3, 0.5])
    records.append(sweep.evaluate_point(1, 1, 0.5, with_ng=True))
    tab = sweep.records_to_table(records)
    assert tab.colnames == sweep_names0

    outfile = str(tmp_path / 'sweep.csv')
    sweep.write_table(tab, out=outfile)
    with open(outfile) as fh:
        lines = fh.read().splitlines()

    assert lines[0] == ','.join(sweep_names0)
    assert len(lines) == 6
    # missing ng is an empty field
    assert lines[1].split(',')[5] == ''
    assert lines[-1].split(',')[5] != ''

    back = asc.read(outfile, format='csv')
    assert back['fidelity'][0] == pytest.approx(0.65, abs=1e-14)

    # deterministic bytes
    first = open(outfile).read()
    sweep.write_table(tab, out=outfile)
    assert open(outfile).read() == first


def test_write_table_json(tmp_path):

    rows = sweep.compare_splits(3, [0.5])
    tab = sweep.compare_to_table(rows)
    assert tab.colnames == compare_table_names()

    outfile = str(tmp_path / 'compare.json')
    sweep.write_table(tab, out=outfile, fmt='json')
    with open(outfile) as fh:
        data = json.load(fh)

    assert len(data) == 2
    assert data[0]['ng'] is None
    assert data[0]['C'] == 3
    assert (data[0]['best_m'], data[0]['best_n']) == (1, 2)
    assert data[1]['limit_flag'] is False

    with pytest.raises(DomainError):
        sweep.write_table(tab, fmt='xml')
