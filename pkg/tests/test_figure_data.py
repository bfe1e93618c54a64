from os.path import exists, join

import numpy as np
import pytest
from astropy.io import ascii as asc

from CV_Teleport_Fidelity.column_names import figure_panels, filename_dict, sweep_names0, \
    fidelity_only_names
from CV_Teleport_Fidelity.plotting import figure_data as fd
from CV_Teleport_Fidelity.exceptions import DomainError


def test_fidelity_panel_pairs():

    assert fd.fidelity_panel_pairs('1a') == [(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]
    assert fd.fidelity_panel_pairs('1d')[0] == (0, 0)
    assert fd.fidelity_panel_pairs('1d')[1:] == [(5, n) for n in range(5, 11)]
    assert fd.fidelity_panel_pairs('1b', n_span=2) == [(0, 0), (1, 1), (1, 2), (1, 3)]
    assert fd.fidelity_panel_pairs('2d') == [(m, 10 - m) for m in range(6)]
    assert fd.fidelity_panel_pairs('3') == [(k, k) for k in range(6)]
    assert len(fd.fidelity_panel_pairs('4a')) == 12
    assert fd.fidelity_panel_pairs('4d') == [(k, k) for k in range(1, 6)]

    for which in figure_panels:
        assert len(fd.fidelity_panel_pairs(which)) > 0

    with pytest.raises(DomainError):
        fd.fidelity_panel_pairs('5a')


def test_panel_3_above_baseline():

    records = fd.panel_records('3', lam_grid=np.linspace(0.05, 0.95, 10))
    baseline = {rec.lam: rec.fidelity for rec in records if rec.m == 0}
    for rec in records:
        if rec.m > 0:
            assert rec.fidelity > baseline[rec.lam]


def test_panel_4a_small_r():

    records = fd.panel_records('4a', r_grid=[1e-3, 0.5, 1.0])
    for d in range(3):
        small = [rec.ng for rec in records if rec.n - rec.m == d and rec.r < 0.01]
        assert len(small) == 4
        assert max(small) - min(small) < 1e-3

    assert all(rec.ng is not None for rec in records)
    assert all(rec.r == pytest.approx(r) for rec, r in zip(records[:3], [1e-3, 0.5, 1.0]))


def test_panel_4d_initial_slope():

    records = fd.panel_records('4d')
    slopes = {k: fd.initial_slope(records, k, k) for k in range(1, 6)}
    assert max(slopes, key=slopes.get) == 1
    assert all(slope > 0 for slope in slopes.values())

    with pytest.raises(DomainError):
        fd.initial_slope(records, 0, 0)


def test_write_panel(tmp_path):

    outdir = str(tmp_path)
    tab = fd.write_panel('2a', outdir=outdir, gnuplot=True, lam_grid=[0.2, 0.5])

    csv_file = join(outdir, filename_dict['fig2a'])
    gp_file = join(outdir, filename_dict['fig2a_gnuplot'])
    assert exists(csv_file)
    assert exists(gp_file)

    back = asc.read(csv_file, format='csv')
    assert back.colnames == fidelity_only_names() + ['panel']
    assert len(back) == len(tab) == 4
    assert np.all(back['panel'] == '2a')

    with open(gp_file) as fh:
        script = fh.read()
    assert "set datafile separator ','" in script
    assert 'figure_2a.csv' in script

    with pytest.raises(DomainError):
        fd.write_panel('2a', gnuplot=True, lam_grid=[0.5])


def test_write_all_panels(tmp_path, monkeypatch):

    # restrict the grids so that all thirteen panels stay quick
    monkeypatch.setattr(fd, 'figure_lam_grid', '0.1:0.9:3')
    monkeypatch.setattr(fd, 'figure_r_grid', '0.1:1.5:3')

    outdir = fd.write_all_panels(outdir=str(tmp_path))
    for which in figure_panels:
        csv_file = join(outdir, filename_dict['fig' + which])
        back = asc.read(csv_file, format='csv')
        names = sweep_names0 if which in fd.ng_panels else fidelity_only_names()
        assert back.colnames == names + ['panel']
        assert np.all(back['fidelity'] > 0) and np.all(back['fidelity'] <= 1)


def test_panel_table_columns():

    records = fd.panel_records('4c', r_grid=[0.5])
    tab = fd.panel_table('4c', records)
    assert tab.colnames == sweep_names0 + ['panel']
    assert not np.any(tab['ng'].mask)

    records = fd.panel_records('3', lam_grid=[0.5])
    tab = fd.panel_table('3', records)
    assert tab.colnames == fidelity_only_names() + ['panel']
