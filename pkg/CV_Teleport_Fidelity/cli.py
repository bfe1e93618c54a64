from argparse import ArgumentParser, ArgumentDefaultsHelpFormatter
import json
import sys

from . import version, default_lam_grid
from .column_names import figure_panels, symplectic_names0
from .exceptions import CVTeleFiError, to_error_dict
from .log_commons import setup_logging, get_logger
from .resource_state import SubtractionSpec, covariance_matrix
from .analysis.closed_form import coefficient_table
from .analysis.fock_oracle import QuadratureScheme, cm_oracle
from .analysis.non_gaussianity import symplectic_eigenvalues, non_gaussianity_from_cm, \
    zero_squeezing_non_gaussianity
from .analysis.sweep import evaluate_point, parse_grid, parse_pairs, run_sweep, \
    compare_splits, records_to_table, compare_to_table, write_table
from .plotting.figure_data import write_panel, write_all_panels
from .valid_table import make_validation_table, selfcheck_passed, write_validation_table

log = get_logger(__name__)

path_choices = ['auto', 'closed', 'engine', 'oracle']


def _add_numeric_flags(parser):
    parser.add_argument('--tail-eps', type=float, default=None,
                        help='Fock tail tolerance of the oracle path. Default: 1e-16')
    parser.add_argument('--radial-nodes', type=int, default=None,
                        help='Gauss-Laguerre nodes of the oracle quadrature')
    parser.add_argument('--angular-nodes', type=int, default=None,
                        help='Phase nodes of the oracle quadrature')


def _add_output_flags(parser, json_default=False):
    parser.add_argument('--out', default=None, help='Output file. Default: stdout')
    parser.add_argument('--format', dest='fmt', choices=['csv', 'json'],
                        default='json' if json_default else 'csv')


def build_parser():
    parser = ArgumentParser(prog='cvtelefi', formatter_class=ArgumentDefaultsHelpFormatter,
                            description='Teleportation fidelity and non-Gaussianity of '
                                        'photon-subtracted two-mode squeezed vacuum resources')
    parser.add_argument('--version', action='version', version='%(prog)s ' + version)

    common = ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true', help='DEBUG logging on stderr')
    common.add_argument('--jobs', type=int, default=None,
                        help='Worker processes. Default: $CVTELEFI_JOBS, else 1')

    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p_fid = sub.add_parser('fidelity', parents=[common], help='Fidelity of one resource state')
    p_fid.add_argument('--m', type=int, required=True)
    p_fid.add_argument('--n', type=int, required=True)
    p_fid.add_argument('--lam', type=float, required=True)
    p_fid.add_argument('--path', choices=path_choices, default='auto')
    p_fid.add_argument('--with-ng', action='store_true')
    p_fid.add_argument('--mu', type=complex, default=0j,
                       help='Coherent input amplitude for the oracle path')
    _add_numeric_flags(p_fid)

    p_ng = sub.add_parser('ng', parents=[common],
                          help='Non-Gaussianity of one resource state')
    p_ng.add_argument('--m', type=int, required=True)
    p_ng.add_argument('--n', type=int, required=True)
    p_ng.add_argument('--lam', type=float, required=True)
    p_ng.add_argument('--path', choices=['closed', 'oracle'], default='closed',
                      help='Covariance matrix from the closed form or from Fock moments')
    _add_numeric_flags(p_ng)

    p_sweep = sub.add_parser('sweep', parents=[common], help='Fidelity over a lam grid')
    p_sweep.add_argument('--pairs', required=True, help="(m, n) pairs, e.g. '0,1;1,1'")
    p_sweep.add_argument('--lam', default=default_lam_grid, help='start:stop:count')
    p_sweep.add_argument('--path', choices=path_choices, default='auto')
    p_sweep.add_argument('--with-ng', action='store_true')
    _add_numeric_flags(p_sweep)
    _add_output_flags(p_sweep)

    p_cmp = sub.add_parser('compare', parents=[common],
                           help='All splits of a subtraction budget')
    p_cmp.add_argument('--total-c', type=int, required=True)
    p_cmp.add_argument('--lam', default=default_lam_grid, help='start:stop:count')
    p_cmp.add_argument('--path', choices=path_choices, default='auto')
    _add_output_flags(p_cmp)

    p_fig = sub.add_parser('figure', parents=[common], help='Figure-panel data')
    p_fig.add_argument('which', nargs='?', choices=figure_panels)
    p_fig.add_argument('--all', action='store_true', help='Every panel into --outdir')
    p_fig.add_argument('--outdir', default=None)
    p_fig.add_argument('--out', default=None)
    p_fig.add_argument('--n-span', type=int, default=5,
                       help='Panels 1a-1d: n runs over m ... m + n_span')
    p_fig.add_argument('--gnuplot', action='store_true', help='Also write a gnuplot stub')

    p_chk = sub.add_parser('selfcheck', parents=[common],
                           help='Closed / engine / oracle agreement')
    p_chk.add_argument('--no-oracle', action='store_true', help='Skip the Fock-oracle column')
    p_chk.add_argument('--out', default=None, help='Also write the table to this file')

    p_coef = sub.add_parser('coefficients', parents=[common],
                            help='Closed-form bracket coefficients')
    p_coef.add_argument('--m', type=int, default=None)
    p_coef.add_argument('--out', default=None)

    return parser


def _scheme(args):
    return QuadratureScheme.for_spec(args.m, args.n, radial_nodes=args.radial_nodes,
                                     angular_nodes=args.angular_nodes)


def _emit_json(obj, out=None):
    text = json.dumps(obj, indent=1) + '\n'
    if out is None:
        sys.stdout.write(text)
    else:
        log.info("Writing : " + out)
        with open(out, 'w') as fh:
            fh.write(text)


def cmd_fidelity(args):
    scheme = _scheme(args) if args.path == 'oracle' else None
    record = evaluate_point(args.m, args.n, args.lam, path=args.path, with_ng=args.with_ng,
                            tail_eps=args.tail_eps, scheme=scheme, mu=args.mu)
    _emit_json(record.as_dict())
    return 0


def cmd_ng(args):
    if args.lam == 0.0 and args.m + args.n > 0:
        _emit_json({'m': args.m, 'n': args.n, 'lam': 0.0, 'r': 0.0,
                    'ng': zero_squeezing_non_gaussianity(args.m, args.n), 'limit_flag': True})
        return 0

    spec = SubtractionSpec(args.m, args.n, args.lam)
    if args.path == 'oracle':
        cm = cm_oracle(spec, tail_eps=args.tail_eps)
    else:
        cm = covariance_matrix(spec)
    spectrum = symplectic_eigenvalues(cm)

    out = {'m': spec.m, 'n': spec.n, 'lam': spec.lam, 'r': spec.r,
           'ng': non_gaussianity_from_cm(cm), 'limit_flag': False}
    if args.verbose:
        out.update(zip(symplectic_names0, [cm.a_diag, cm.b_diag, cm.c_diag,
                                           spectrum.d_plus, spectrum.d_minus]))
    _emit_json(out)
    return 0


def cmd_sweep(args):
    scheme = None
    if args.path == 'oracle' and (args.radial_nodes or args.angular_nodes):
        pairs = parse_pairs(args.pairs)
        high = max(m + n for m, n in pairs)
        scheme = QuadratureScheme.for_spec(0, high, radial_nodes=args.radial_nodes,
                                           angular_nodes=args.angular_nodes)

    records = run_sweep(parse_pairs(args.pairs), parse_grid(args.lam), path=args.path,
                        with_ng=args.with_ng, tail_eps=args.tail_eps, scheme=scheme,
                        jobs=args.jobs)
    write_table(records_to_table(records), out=args.out, fmt=args.fmt)
    return 0


def cmd_compare(args):
    rows = compare_splits(args.total_c, parse_grid(args.lam), path=args.path, jobs=args.jobs)
    write_table(compare_to_table(rows), out=args.out, fmt=args.fmt)
    return 0


def cmd_figure(args):
    if args.all:
        outdir = write_all_panels(outdir=args.outdir, gnuplot=args.gnuplot, jobs=args.jobs)
        log.info("Figure data in : " + outdir)
        return 0

    if args.which is None:
        raise CVTeleFiError("figure needs a panel name or --all")

    write_panel(args.which, outdir=args.outdir, out=args.out, gnuplot=args.gnuplot,
                jobs=args.jobs, n_span=args.n_span)
    return 0


def cmd_selfcheck(args):
    tab = make_validation_table(with_oracle=not args.no_oracle, jobs=args.jobs)
    tab.pprint_all()
    if args.out is not None:
        write_validation_table(tab, outfile=args.out)

    if selfcheck_passed(tab):
        print('SELFCHECK PASSED')
        return 0
    print('SELFCHECK FAILED')
    return 1


def cmd_coefficients(args):
    _emit_json(coefficient_table(args.m), out=args.out)
    return 0


commands = {'fidelity': cmd_fidelity, 'ng': cmd_ng, 'sweep': cmd_sweep,
            'compare': cmd_compare, 'figure': cmd_figure, 'selfcheck': cmd_selfcheck,
            'coefficients': cmd_coefficients}


def main(argv=None):
    """
    Purpose:
      Entry point of the cvtelefi command

    :param argv: list of str. Default: sys.argv[1:]

    :return: int exit code (0 success, 1 self-check failure, 2 usage or domain error)
    """

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 0 if err.code == 0 else 2

    setup_logging(verbose=args.verbose)

    try:
        return commands[args.command](args)
    except CVTeleFiError as err:
        log.error("!!! {}: {} !!!".format(type(err).__name__, err))
        _emit_json(to_error_dict(err))
        return 2


if __name__ == '__main__':
    sys.exit(main())
