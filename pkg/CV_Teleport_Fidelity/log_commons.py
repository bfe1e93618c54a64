import logging
import sys

package_name = 'CV_Teleport_Fidelity'

log_format = '%(asctime)s %(levelname)-7s [%(name)s] %(message)s'
date_format = '%Y-%m-%d %H:%M:%S'


def get_logger(name=package_name):
    """
    Purpose:
      Return the logger for a module of this package

    :param name: str, typically __name__ of the calling module

    :return log: logging.Logger
    """

    return logging.getLogger(name)


def setup_logging(verbose=False, stream=None):
    """
    Purpose:
      Attach a single stream handler to the package logger.  Called once by
      the command-line tool; library users configure logging themselves.

    :param verbose: bool to log DEBUG messages. Default: False (INFO)
    :param stream: file-like object. Default: sys.stderr

    :return log: package logger
    """

    log = logging.getLogger(package_name)

    if stream is None:
        stream = sys.stderr

    for handler in list(log.handlers):
        if getattr(handler, '_cvtelefi', False):
            log.removeHandler(handler)

    handler = logging.StreamHandler(stream)
    handler.setFormatter(logging.Formatter(log_format, datefmt=date_format))
    handler._cvtelefi = True
    log.addHandler(handler)

    log.setLevel(logging.DEBUG if verbose else logging.INFO)
    log.propagate = False

    return log
