import argparse as ap
import json
import logging
import os
import os.path as path
import sys
import time
from qrevsim.Errors import QRevError, InvalidParameter
from qrevsim.Options import Options
from qrevsim.coherent.ModelParams import ModelParams
from qrevsim.engine.script import observer_probe
from qrevsim.protocol.ProtocolConfig import ProtocolConfig
from qrevsim.protocol.Protocol import Protocol
from qrevsim.protocol.RunRecord import RunRecord
from qrevsim.figures.tables import write_figures, sweep_table, SCHEMA_VERSION
from qrevsim.verify.CheckResult import CheckResult
from qrevsim.verify.Verifier import Verifier, load_grids

Z_LIMIT = 4.0
_quiet = False


def info(message: str):
    """Informational chatter, silenced by -v. Reports are printed directly."""
    if not _quiet:
        print(message)


def build_parser() -> ap.ArgumentParser:
    parser = ap.ArgumentParser(prog='qrevsim',
                               description='Reliability versus reversibility of a reversible quantum measurement')
    parser.add_argument('-c', '--options_file', type=str, help='File with options in json format')
    parser.add_argument('-o', '--output_dir', type=str, help='Directory for output files')
    parser.add_argument('-s', '--seed', type=int, help='Master seed of the random streams')
    parser.add_argument('-v', '--verbose', action="store_true", help='Remove informational prints in stdout')
    parser.add_argument('-x', '--extra', type=str, action="append", help='Add arbitrary entries to configuration')
    commands = parser.add_subparsers(dest='command', required=True)

    figures = commands.add_parser('figures', help='Write the tradeoff, fine and information curves as CSV')
    figures.add_argument('-g', '--grid', type=int, default=201, help='Number of d_rel grid points')
    figures.set_defaults(handler=cmd_figures)

    simulate = commands.add_parser('simulate', help='Monte Carlo of the Alice and Bob protocol')
    simulate.add_argument('--n', type=int, default=2, help='Number of detector qutrits')
    simulate.add_argument('--epsilon', type=float, default=0.5, help='Counter displacement per qutrit')
    simulate.add_argument('--eta', type=float, default=0.5, help="Bob's measurement strength")
    simulate.add_argument('--observers', type=str, default='',
                          help='Comma separated strengths of silent observers, optionally label:eta')
    simulate.add_argument('--runs', type=int, default=10000, help='Number of runs')
    simulate.add_argument('--seed', type=int, dest='run_seed', help='Master seed, same as the global -s')
    output = simulate.add_mutually_exclusive_group()
    output.add_argument('--json', action='store_true', help='Print the report as json')
    output.add_argument('--csv', action='store_true', help='Print the report as csv')
    simulate.set_defaults(handler=cmd_simulate)

    sweep = commands.add_parser('sweep', help='Tabulate the tradeoff over the measurement strength')
    sweep.add_argument('--c0', type=float, help='Overlap c0 of the counter states')
    sweep.add_argument('--n', type=int, help='Number of detector qutrits, with --epsilon instead of --c0')
    sweep.add_argument('--epsilon', type=float, help='Counter displacement per qutrit')
    sweep.add_argument('-g', '--grid', type=int, default=101, help='Number of eta grid points')
    sweep.add_argument('--include_optimum', action='store_true', help='Add the optimal strength to the grid')
    sweep.add_argument('--output', type=str, help='CSV file, sweep.csv in the output directory by default')
    sweep.set_defaults(handler=cmd_sweep)

    verify = commands.add_parser('verify', help='Compare the branch engine with the dense oracle')
    verify.add_argument('--grid_name', type=str, default='default', help='Grid of the library to run')
    verify.add_argument('--grid_file', type=str, help='File with additional grids')
    verify.add_argument('--inject-fault', dest='inject_fault', action='store_true', help=ap.SUPPRESS)
    verify.set_defaults(handler=cmd_verify)
    return parser


def _parse_value(value: str):
    try:
        return json.loads(value)
    except ValueError:
        return value


def configure(args) -> dict:
    """Defaults, then the options file, then command line flags, then -x overrides."""
    options = Options().reset()
    if args.options_file:
        info(f'Loading options from {args.options_file}')
        with open(args.options_file, 'r') as in_f:
            options.update(json.load(in_f))
    if args.output_dir:
        options['output_dir'] = args.output_dir
    if args.seed is not None:
        options['seed'] = args.seed
    if getattr(args, 'run_seed', None) is not None:
        options['seed'] = args.run_seed
    for extra in args.extra or []:
        if '=' not in extra:
            raise InvalidParameter(f"Extra option '{extra}' must have the form key=value")
        keys, value = extra.split('=', 1)
        dictionary = options
        parts = keys.split('.')
        for part in parts[:-1]:
            dictionary = dictionary.setdefault(part, {})
        dictionary[parts[-1]] = _parse_value(value)
    return options


def parse_observers(text: str) -> tuple:
    """'0.1,eve:0.2' -> (('observer2', 'eve'), (0.1, 0.2))."""
    labels, etas = [], []
    for k, item in enumerate([item.strip() for item in text.split(',') if item.strip()], start=2):
        label, _, value = item.rpartition(':')
        try:
            eta = float(value)
        except ValueError:
            raise InvalidParameter(f"Observer strength '{value}' is not a number")
        labels.append(label or observer_probe(k))
        etas.append(eta)
    if len(set(labels)) != len(labels):
        raise InvalidParameter(f"Observer labels must be unique, got {labels}")
    return tuple(labels), tuple(etas)


def cmd_figures(args, options: dict) -> int:
    for file_name in write_figures(options['output_dir'], args.grid):
        info(f'Wrote {file_name}')
    return 0


def _format(value) -> str:
    return "nan" if value is None else format(value, '.17g')


def cmd_simulate(args, options: dict) -> int:
    labels, etas = parse_observers(args.observers)
    params = ModelParams(args.n, args.epsilon, bob_eta=args.eta, other_etas=etas)
    config = ProtocolConfig.from_options(params, args.runs, options, labels)
    if etas:
        info("Silent observers assume 1/c0 >> 1, i.e. N*epsilon >> 1")
    stats = Protocol(config).run_multi_observer()
    report = stats.to_dict()
    if args.json:
        print(json.dumps({'schema_version': SCHEMA_VERSION, **report}, indent=4, sort_keys=True))
    elif args.csv:
        print("quantity,empirical,half_width,expected,z")
        for row in stats.rows():
            print(row[0] + "," + ",".join(_format(value) for value in row[1:]))
    else:
        print(f"N={params.n_qutrits} epsilon={params.epsilon!r} c0={params.c0:.6g} eta={params.bob_eta!r} "
              f"eta_tilde={params.eta_tilde!r} runs={config.n_runs} seed={config.master_seed}")
        for name, empirical, half_width, expected, z in stats.rows():
            print(f"{name:>18}: {empirical:.6f} +- {half_width:.6f}  closed form {expected:.6f}  z={z:.3f}")
        print(f"{'cost_fine':>18}: {stats.cost_fine:.6f}  closed form {stats.expected_cost_fine:.6f}")
        print(f"{'tradeoff':>18}: K d_rev^2 + d_rel^2 - 1 = {stats.tradeoff_residual:.6f} "
              f"+- {stats.tradeoff_sigma:.6f} (K={stats.k:.6g})")
        for label, observer in stats.observer_reliability.items():
            print(f"{label:>18}: eta={observer['eta']!r} d_rel={observer['d_rel']:.6f} "
                  f"closed form {observer['expected_d_rel']:.6f}")
    return 0 if stats.max_z < Z_LIMIT else 1


def cmd_sweep(args, options: dict) -> int:
    if args.c0 is not None:
        if args.n is not None or args.epsilon is not None:
            raise InvalidParameter("Give either --c0 or --n with --epsilon, not both")
        c0 = args.c0
    elif args.n is not None and args.epsilon is not None:
        c0 = ModelParams(args.n, args.epsilon).c0
    else:
        raise InvalidParameter("sweep needs --c0 or both --n and --epsilon")
    if not 0.0 < c0 < 1.0:
        raise InvalidParameter(f"c0 must lie in (0,1), got {c0!r}")
    if args.grid < 1:
        raise InvalidParameter(f"Grid size must be positive, got {args.grid}")
    table = sweep_table(c0, args.grid, args.include_optimum)
    file_name = args.output or path.join(options['output_dir'], 'sweep.csv')
    table.write_csv(file_name)
    info(f'Wrote {len(table)} rows to {file_name}')
    return 0


def cmd_verify(args, options: dict) -> int:
    grids = load_grids(options['grid_library_path'], args.grid_file)
    if args.grid_name not in grids:
        raise InvalidParameter(f"Unknown grid {args.grid_name}, available grids are {sorted(grids)}")
    verifier = Verifier(grids[args.grid_name], inject_fault=args.inject_fault)
    for check in verifier.run():
        print(f"{'PASS' if check.passed else 'FAIL'} {check.name} ({check.deviation:.3e} <= {check.tolerance:.0e})"
              + (f" {check.detail}" if check.detail else ""))
    failed = sum(1 for check in verifier.results if not check.passed)
    print(f"{len(verifier.results) - failed} of {len(verifier.results)} checks passed")
    return 0 if verifier.all_passed else 1


def _file_logger(name: str, file_name: str, level: int, header: str = None) -> logging.Logger:
    logger = logging.getLogger(name)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    handler = logging.FileHandler(file_name, mode="w")
    logger.setLevel(level)
    logger.addHandler(handler)
    logger.propagate = False
    if header:
        logger.info(header)
    return logger


def start_logging():
    options = Options().get()
    levels = {'DEBUG': logging.DEBUG, 'INFO': logging.INFO}
    if options['log_level'] not in levels:
        raise InvalidParameter(f"log_level must be one of {list(levels)}, got {options['log_level']!r}")
    os.makedirs(options['output_dir'], exist_ok=True)
    _file_logger("qrevsim", path.join(options['output_dir'], "qrevsim.log"), levels[options['log_level']])
    _file_logger("runs", path.join(options['output_dir'], "runs.log"), logging.INFO, RunRecord.header())
    _file_logger("checks", path.join(options['output_dir'], "checks.log"), logging.INFO, CheckResult.header())


def main(argv: list = None) -> int:
    global _quiet
    start_time = time.time()
    args = build_parser().parse_args(argv)
    _quiet = args.verbose
    try:
        options = configure(args)
        start_logging()
        status = args.handler(args, options)
    except (QRevError, OSError) as error:
        print(f"qrevsim: {error}", file=sys.stderr)
        return 2
    logging.getLogger("qrevsim").info("Execution time %s seconds", time.time() - start_time)
    return status


def launch() -> None:
    sys.exit(main())
