from datetime import date
import os

from .exceptions import DomainError
from .log_commons import get_logger

version = "1.0.0"

log = get_logger(__name__)

# Truncation of the Fock expansion of the resource state
tail_eps = 1e-14
oracle_tail_eps = 1e-16
truncation_cap = 4096
truncation_margin = 10

# Largest number of photons subtracted from a single mode
max_subtraction = 12

# Numerical tolerances
entropy_clamp_tol = 1e-10   # symplectic eigenvalues below 1/2 by this much are clamped
unphysical_tol = 1e-6       # larger undershoot of 1/2 is an unphysical covariance matrix
drop_ratio = 1e-30          # relative size below which polynomial terms are dropped
imag_residue_tol = 1e-10
refine_tol = 1e-8

# Quadrature defaults for the Fock-space oracle
radial_nodes = 64
angular_nodes = 48

# Environment variable holding the default number of worker processes
jobs_env = 'CVTELEFI_JOBS'

# Default squeezing grid (start:stop:count) for sweeps and figures
default_lam_grid = '0.1:0.9:9'
figure_lam_grid = '0.02:0.98:49'
figure_r_grid = '0.02:2.0:100'


def dir_date(org_name, path_init='', year=False):
    """
    Purpose:
        This function finds and returns the path to a directory named after the
        current date (MMDDYYYY). If the directory doesn't exist yet, it creates
        a new directory named after the current date in the provided org_name
        directory.

    Usage:
        outpath = dir_date(org_name, path_init='', year=True)

    :param org_name: str of the directory that the date subdirectory will be in
    :param path_init: str prefix for org_name. Default: ''
    :param year: bool to append the year to the directory name. Default: False

    :return outpath: str path to the date directory
    """

    today = date.today()

    list_path = [path_init, org_name, "%02i%02i" % (today.month, today.day), '']
    if year:
        list_path[-2] += "%02i" % today.year

    outpath = os.path.join(*list_path)
    try:
        os.mkdir(outpath)
    except FileExistsError:
        log.info("Path already exists : " + outpath)

    return outpath


def get_jobs(jobs=None):
    """
    Purpose:
      Number of worker processes, taken from the argument, then from the
      CVTELEFI_JOBS environment variable, else 1

    :param jobs: int or None

    :return jobs: int >= 1
    """

    if jobs is None:
        jobs = os.environ.get(jobs_env, '').strip() or 1

    try:
        jobs = int(jobs)
    except ValueError:
        log.warning("!!! Invalid worker count '{}' !!!".format(jobs))
        raise DomainError("Worker count must be an integer, got '{}' (from {} or "
                          "--jobs)".format(jobs, jobs_env))

    return max(1, jobs)
