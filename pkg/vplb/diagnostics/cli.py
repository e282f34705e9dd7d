import argparse
import logging
import sys
import vplb.errors as er
from vplb.diagnostics.config import ALIASES, TYPES, RunConfig, read_config_file
from vplb.diagnostics.runner import run
from vplb.systems.problems import PROBLEMS
from vplb.core.tableau import TABLEAUS


def build_parser():
    parser = argparse.ArgumentParser(
        prog='vplb',
        description='DG-IMEX direct and micro-macro solvers for Vlasov-Poisson-Lenard-Bernstein')
    parser.add_argument('--config', help='key = value file; flags given here take precedence')
    parser.add_argument('--problem', choices=sorted(PROBLEMS))
    parser.add_argument('--method', choices=['direct', 'mm'])
    parser.add_argument('--nu', type=float)
    parser.add_argument('--nx', type=int)
    parser.add_argument('--nv', type=int)
    parser.add_argument('--p', type=int)
    parser.add_argument('--cfl', type=float, help='CFL number (default 0.75)')
    parser.add_argument('--dt', type=float, help='fixed time step instead of the CFL rule')
    parser.add_argument('--t-end', type=float)
    parser.add_argument('--tableau', choices=sorted(TABLEAUS))
    for flag in ('clean', 'extended-cells', 'inconsistent-quadrature', 'field-free', 'advection'):
        parser.add_argument('--' + flag, choices=['on', 'off'])
    parser.add_argument('--xmin', type=float)
    parser.add_argument('--xmax', type=float)
    parser.add_argument('--vmin', type=float)
    parser.add_argument('--vmax', type=float)
    parser.add_argument('--out', help='output directory for diagnostics.csv, snapshots and summary.txt')
    parser.add_argument('--snapshot-every', type=int)
    parser.add_argument('--diagnostics-every', type=int)
    parser.add_argument('--damping-window', type=float, nargs=2, metavar=('T_A', 'T_B'))
    parser.add_argument('--log-level', default='INFO',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    return parser


def config_from_args(args):
    """RunConfig from parsed arguments: problem defaults < config file < flags."""
    values = {}
    if args.config is not None:
        values.update(read_config_file(args.config))
    for key, value in vars(args).items():
        if key in ('config', 'log_level') or value is None:
            continue
        key = ALIASES.get(key, key)
        values[key] = TYPES[key](value)
    problem = values.pop('problem', 'landau')
    return RunConfig(problem, **values)


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level),
                        format='%(asctime)s %(levelname)s %(message)s')
    try:
        config = config_from_args(args)
        result = run(config)
    except er.UsageError as exc:
        logging.error('Configuration error: %s' % exc)
        return 2
    except er.RunAborted as exc:
        logging.error(str(exc))
        return 1

    for key in sorted(result.summary):
        logging.info('%s: %s' % (key, result.summary[key]))
    return 0


if __name__ == '__main__':
    sys.exit(main())
