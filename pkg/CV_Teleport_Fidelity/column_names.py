# These are common/general column names

# Column names for one sweep record (one resource state at one squeezing value)
sweep_names0 = ['m', 'n', 'lam', 'r', 'fidelity', 'ng', 'path', 'limit_flag']

# Additional columns for constant-budget arrangement comparisons
compare_names0 = ['C', 'best_m', 'best_n']

# Additional column identifying the figure panel a row belongs to
figure_names0 = ['panel']

# Symplectic spectrum of the resource covariance matrix
symplectic_names0 = ['a_diag', 'b_diag', 'c_diag', 'd_plus', 'd_minus']

# Self-check (validation) table
valid_table_names0 = ['check', 'm', 'n', 'lam', 'closed', 'engine', 'oracle',
                      'deviation', 'tolerance', 'status']

# Allowed values for the path column
path_names0 = ['closed', 'engine', 'oracle']

# Figure panels
figure_panels = ['1a', '1b', '1c', '1d', '2a', '2b', '2c', '2d', '3',
                 '4a', '4b', '4c', '4d']

# Dictionary containing filenames
filename_dict = dict()

# Figure-panel data files
for panel in figure_panels:
    filename_dict['fig'+panel] = 'figure_{}.csv'.format(panel)
    filename_dict['fig'+panel+'_gnuplot'] = 'figure_{}.gp'.format(panel)

# Closed-form bracket coefficients and self-check table
filename_dict['coefficients'] = 'closed_form_coefficients.json'
filename_dict['selfcheck'] = 'selfcheck.tbl'


def merge_column_names(*args):
    """
    Purpose:
      Merges multiple lists containing column names.

    Usage:
      column_names = merge_column_names(sweep_names0, compare_names0)

    :param args: An undefined number of lists
    :return merge_list:
    """

    merge_list = list()

    arg_count = len(args)
    if arg_count > 0:
        for elem in args:
            merge_list += elem

    return merge_list


def remove_from_list(list0, remove_entries):
    """
    Purpose:
      Remove entries from list

    :param list0: list of column names
    :param remove_entries: list of column names to remove
    """

    dup_list0 = list0.copy()

    for entry in remove_entries:
        dup_list0.remove(entry)

    return dup_list0


def fidelity_only_names():
    """
    Purpose:
      Use remove_from_list() to provide the sweep columns without the
      non-Gaussianity column

    :return: list of sweep column names without 'ng'
    """

    return remove_from_list(sweep_names0, ['ng'])


def compare_table_names():
    """
    Purpose:
      Column names of a constant-budget comparison table

    :return: list of sweep column names followed by comparison columns
    """

    return merge_column_names(sweep_names0, compare_names0)
