#!/usr/bin/env python3
"""
Perforated Surfaces Toolkit

This script classifies perforated surfaces, certifies non-Hopfian lifts and
fractal retractions, and builds covering graphs. Every command prints a JSON
report on standard output.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from command_runner import Command, CommandRunner
from config_manager import LOG_LEVELS, ConfigurationManager
from errors import ToolkitError
from fs_manager import FileSystemManager
from template_renderer import TemplateRenderer

DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Perforated surfaces toolkit')
    parser.add_argument('--config', help='Path to configuration file (JSON or YAML)')
    parser.add_argument('--output', help='Write the report to this file instead of standard output')
    parser.add_argument('--summary', action='store_true', default=None, help='Print a human-readable summary')
    parser.add_argument('--log-level', choices=LOG_LEVELS, type=str.upper, help='Logging level')
    commands = parser.add_subparsers(dest='command', required=True)

    classify = commands.add_parser('classify', help='Normalize a surface descriptor to its perforated class')
    source = classify.add_mutually_exclusive_group(required=True)
    source.add_argument('descriptor', nargs='?', help='Descriptor file')
    source.add_argument('--preset', help='Named surface, e.g. loch_ness_monster')

    compare = commands.add_parser('compare', help='Compare two perforated surfaces')
    compare.add_argument('first', help='Descriptor file or preset:<name>')
    compare.add_argument('second', help='Descriptor file or preset:<name>')

    family = commands.add_parser('family', help='Emit or check the rank-subset family')
    family.add_argument('m', type=int)
    family.add_argument('mode', choices=('emit', 'check'), nargs='?', default='check')

    rank = commands.add_parser('rank', help='Cantor-Bendixson rank of an end-space term')
    rank.add_argument('expr', help='Term, e.g. "scat(w,1,np)"')

    lift = commands.add_parser('lift', help='Lift a loop through the folding map')
    target = lift.add_mutually_exclusive_group(required=True)
    target.add_argument('loop', nargs='?', help='Loop file')
    target.add_argument('--suite', action='store_true', default=None, help='Lift a seeded batch of random loops')
    target.add_argument('--witness', action='store_true', default=None, help='Report the kernel witness loop')
    lift.add_argument('-D', '--denominator', type=int, help='Winding profile denominator bound')
    lift.add_argument('--count', type=int, help='Suite size')
    lift.add_argument('--seed', type=int, help='Suite seed')

    fractal = commands.add_parser('fractal', help='Membership, retraction and witness loops of fractals')
    fractal.add_argument('which', choices=('carpet', 'gasket', 'menger'))
    fractal.add_argument('op', choices=('member', 'retract', 'rho', 'witness', 'sweep'))
    fractal.add_argument('point', nargs='*', help='Rational coordinates such as 1/3')
    fractal.add_argument('--no-member-check', action='store_true', default=None,
                         help='Retract points outside the fractal too')
    fractal.add_argument('--count', type=int, help='Sweep sample count')
    fractal.add_argument('--seed', type=int, help='Sweep seed')

    cover = commands.add_parser('cover', help='Build and verify a covering graph')
    group = cover.add_mutually_exclusive_group(required=True)
    group.add_argument('--group', help='Group spec file')
    group.add_argument('--catalog', help='Catalog group such as S3 or Z/5')

    obstruction = commands.add_parser('obstruction', help='Index-p obstruction for the Hawaiian earring')
    obstruction.add_argument('p', type=int)
    obstruction.add_argument('m', type=int)
    return parser


def to_command(args: argparse.Namespace) -> Command:
    options = {key: value for key, value in vars(args).items()
               if key not in ('command', 'config', 'output', 'summary', 'log_level')}
    if args.command == 'fractal' and not options.get('point'):
        options.pop('point', None)
    return Command(args.command, options)


def load_config(path: Optional[str]) -> ConfigurationManager:
    config = ConfigurationManager()
    if path:
        config.load_from_file(path)
    elif os.path.exists(DEFAULT_CONFIG):
        config.load_from_file(DEFAULT_CONFIG)
    config.apply_env()
    return config


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the toolkit"""
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args.config)
    except ToolkitError as e:
        print(f"Error: {str(e)}", file=sys.stderr)
        return 1
    if args.log_level:
        config.set("logging", "level", args.log_level)
    logging.basicConfig(level=config.get("logging", "level"), stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')

    fs_manager = FileSystemManager()
    runner = CommandRunner(config_manager=config, fs_manager=fs_manager)
    report, code = runner.run(to_command(args))
    if code:
        print(f"Error: {report['error']}", file=sys.stderr)
        return code

    try:
        if args.output:
            fs_manager.write_report(args.output, report)
            print(f"Report written to {args.output}")
        else:
            print(fs_manager.dumps_json(report))
    except ToolkitError as e:
        print(f"Error: {str(e)}", file=sys.stderr)
        return 1

    summary = config.get("output", "summary") if args.summary is None else args.summary
    if summary:
        print(TemplateRenderer().render_summary(args.command, report), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
