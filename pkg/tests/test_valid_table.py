from os.path import exists, join

import numpy as np
from astropy.io import ascii as asc

from CV_Teleport_Fidelity import valid_table
from CV_Teleport_Fidelity.column_names import valid_table_names0


def test_make_validation_table():

    tab = valid_table.make_validation_table(with_oracle=False, jobs=1)

    assert tab.colnames == valid_table_names0
    assert valid_table.selfcheck_passed(tab)
    assert 'engine-oracle' not in set(tab['check'])

    closed_engine = tab[tab['check'] == 'closed-engine']
    assert len(closed_engine) == 100
    assert np.all(closed_engine['status'] == 'PASS')

    known = tab[tab['status'] == 'KNOWN-DEVIATION']
    assert len(known) > 0
    assert np.all(known['check'] == 'printed-m3')
    assert np.all(known['m'] == 3)
    assert np.max(known['deviation']) > 1e-6

    crossing = tab[tab['check'] == 'crossing-0-1']
    assert len(crossing) == 1
    assert crossing['status'][0] == 'PASS'


def test_corrupted_engine_fails():

    engine = valid_table.corrupted_engine(factor=1.01)
    assert abs(engine(1, 1, 0.5) - valid_table.engine_fidelity(1, 1, 0.5)) > 1e-6

    tab = valid_table.make_validation_table(engine=engine, with_oracle=False, jobs=1)
    assert not valid_table.selfcheck_passed(tab)
    assert np.sum(tab['status'] == 'FAIL') > 0


def test_write_validation_table(tmp_path):

    tab = valid_table.make_validation_table(with_oracle=False, jobs=1)
    outfile = join(str(tmp_path), 'selfcheck.tbl')
    valid_table.write_validation_table(tab, outfile=outfile)

    assert exists(outfile)
    back = asc.read(outfile, format='fixed_width_two_line')
    assert back.colnames == valid_table_names0
    assert len(back) == len(tab)


def test_make_validation_table_with_oracle():

    tab = valid_table.make_validation_table(with_oracle=True, jobs=2)
    assert valid_table.selfcheck_passed(tab)

    engine_oracle = tab[tab['check'] == 'engine-oracle']
    assert len(engine_oracle) == 100
    assert np.all(engine_oracle['status'] == 'PASS')
    assert np.max(engine_oracle['deviation']) < 1e-8
    assert np.all(np.isfinite(engine_oracle['oracle']))
