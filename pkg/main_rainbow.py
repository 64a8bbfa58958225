"""
Rainbow H-decomposition experiments.

    python main_rainbow.py decompose --graph complete:4 --pattern K3
    python main_rainbow.py extremal -c config/extremal_k3.py --n 5
    python main_rainbow.py edk --n 6 --r 3 --m 1-3 --out edk.csv

Exit codes: 0 success, 2 budget exceeded, 3 parse / domain / usage error,
4 invariant violation (including a failed verification flag).
"""
import argparse
import os
import sys
from pathlib import Path

from util.errors import DomainError, InvariantViolation, RainbowError
from util.logger import setup_logger
from util.misc import get_sha
from util.registry import COMMANDS
from util.slconfig import DictAction, SLConfig
from util.slio import sldump

import engine

DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'config', 'rainbow_base.py')
EXIT_IO = 3


def get_args_parser():
    parser = argparse.ArgumentParser('Rainbow decomposition experiments', add_help=False)
    parser.add_argument('command', choices=COMMANDS.keys())
    parser.add_argument('--config_file', '-c', type=str, default=DEFAULT_CONFIG)
    parser.add_argument('--options',
        nargs='+',
        action=DictAction,
        help='override some settings in the used config, the key-value pair '
        'in xxx=yyy format will be merged into config file.')

    # inputs
    parser.add_argument('--graph', type=str, help='graph6 line, graph6 file or generator spec such as turan:8:2')
    parser.add_argument('--pattern', type=str, help='K3, C5, P4, S3 or any graph spec')
    parser.add_argument('--coloring', type=str,
                        help='greedy | vizing | all-distinct | enumerate | path to a JSON colouring')
    parser.add_argument('--mode', type=str, help='rainbow/uncolored (extremal), exact/heuristic (stability)')

    # sizes
    parser.add_argument('--n', type=str, help='vertex count, list 3,4,5 or range 3-7')
    parser.add_argument('--r', type=int, help='clique order')
    parser.add_argument('--m', type=str, help='edge surplus list or range')
    parser.add_argument('--k', type=int, help='part count')
    parser.add_argument('--part-size', dest='part_size', type=int)
    parser.add_argument('--internal-edge', dest='internal_edge', action='store_true', default=None)
    parser.add_argument('--parts', type=str, help='part sizes, e.g. 40,40,40')
    parser.add_argument('--densities', type=str)
    parser.add_argument('--probabilities', type=str)

    # budgets and randomness
    parser.add_argument('--trials', type=int)
    parser.add_argument('--seed', type=int)
    parser.add_argument('--eta', type=float)
    parser.add_argument('--budget-nodes', dest='budget_nodes', type=int)
    parser.add_argument('--budget-partitions', dest='budget_partitions', type=int)
    parser.add_argument('--workers', type=int)

    # output
    parser.add_argument('--out', type=str, help='report path; stdout when empty')
    parser.add_argument('--output_dir', default=None,
                        help='where to save config dumps and the log, empty for no saving')
    parser.add_argument('--no-color', dest='color', action='store_false', default=True)
    return parser


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with the parse-error code, not argparse's 2 (budget exceeded here)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(DomainError.exit_code, f'{self.prog}: error: {message}\n')


def build_parser():
    return ArgumentParser('Rainbow decomposition experiments', parents=[get_args_parser()])


def load_config(args):
    """flags > --options > config file > its _base_ files."""
    cfg = SLConfig.fromfile(args.config_file)
    if args.options is not None:
        cfg.merge_from_dict(args.options)
    cfg.merge_args(args, skip=('config_file', 'options', 'color'))
    cfg.check_budgets()
    return cfg


def write_output(payload, fmt, out):
    if fmt == 'json':
        text = sldump(payload, file_format='json')
    else:
        text = payload
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def main(args):
    out = args.out
    try:
        cfg = load_config(args)
        logger = setup_logger(output=args.output_dir, color=args.color, name='rainbow')
        logger.info("git:\n  {}\n".format(get_sha()))
        logger.info("Command: " + ' '.join(sys.argv))
        if args.output_dir:
            os.makedirs(args.output_dir, exist_ok=True)
            cfg.dump(os.path.join(args.output_dir, 'config_cfg.py'))
            sldump(vars(args), os.path.join(args.output_dir, 'config_args_raw.json'))
            logger.info("Full config saved to {}".format(args.output_dir))

        payload, fmt = engine.run_command(cfg)
        write_output(payload, fmt, out)
        if fmt == 'json':
            failed = sorted(k for k, ok in payload.get('verification', {}).items() if not ok)
            if failed:
                logger.error(f'verification failed: {", ".join(failed)}')
                return InvariantViolation.exit_code
        return 0
    except RainbowError as e:
        write_output(e.to_json(), 'json', out)
        return e.exit_code
    except OSError as e:
        write_output({'error': 'io', 'message': str(e)}, 'json', out)
        return EXIT_IO


if __name__ == '__main__':
    args = build_parser().parse_args()
    if args.output_dir:
        Path(args.output_dir).mkdir(parents=True, exist_ok=True)
    sys.exit(main(args))
