#!/usr/bin/env python3
"""
TelaGen CLI - Main Entry Point
"""

import argparse
import logging
import sys
from pathlib import Path

# Add TelaGen to path when run as a script: python CLI/main.py
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from CLI import __version__
from CLI.commands.bench_cmd import BENCH_TABLES, LITERATURE_TABLE, run_bench_command
from CLI.commands.check_cmd import run_check_command
from CLI.commands.pattern_cmd import run_pattern_command
from CLI.commands.translate_cmd import run_translate_command
from Patterns import PATTERNS


def create_parser():
    """Create the main argument parser with subcommands."""
    parser = argparse.ArgumentParser(
        prog='tela_gen',
        description='TelaGen - LTL to deterministic Emerson-Lei automata',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  tela_gen translate --formula "G F (a1 & X a2) & F (b1 & F b2)" --stats
  tela_gen translate --file spec.ltl --standard -o out.hoa
  tela_gen check --formula "F a" --hoa out.hoa
  tela_gen pattern history 3
  tela_gen bench rabin-acc --max-n 7
  tela_gen bench literature

For more help on a specific command:
  tela_gen <command> --help
        """
    )

    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='Enable verbose output')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')
    subparsers.required = True

    # Translate command
    translate_parser = subparsers.add_parser('translate', help='Translate an LTL formula to HOA')
    source = translate_parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--formula', help='LTL formula text')
    source.add_argument('--file', help='File holding the LTL formula')
    construction = translate_parser.add_mutually_exclusive_group()
    construction.add_argument('--standard', action='store_true', help='Use the standard product')
    construction.add_argument('--enhanced', action='store_true', help='Use the enhanced product (default)')
    translate_parser.add_argument('--no-global-history', action='store_true',
                                  help='Give every fairness component its own buffer')
    translate_parser.add_argument('--piggyback', action='store_true',
                                  help='Fold (co)safety components into fairness marks')
    translate_parser.add_argument('--fallback-cmd', default=None,
                                  help='External translator command with %%f for the formula')
    translate_parser.add_argument('--syntax', choices=['infix', 'spin'], default=None,
                                  help='Formula syntax passed to the external translator')
    translate_parser.add_argument('--fallback-timeout', type=float, default=None,
                                  help='Seconds before the external translator is abandoned')
    translate_parser.add_argument('--state-bound', type=int, default=None,
                                  help='Maximum number of states per construction')
    translate_parser.add_argument('--config', help='Translation options file (.json)')
    translate_parser.add_argument('--stats', action='store_true',
                                  help='Print "states=N acc_sets=K acc_size=L" to stderr')
    translate_parser.add_argument('-o', '--output', help='Output file for the HOA (default: stdout)')

    # Check command
    check_parser = subparsers.add_parser('check', help='Compare a formula with an automaton on bounded lassos')
    check_parser.add_argument('--formula', required=True, help='LTL formula text')
    check_parser.add_argument('--hoa', help='HOA file (default: translate the formula)')
    check_parser.add_argument('--complement', action='store_true', help='Check against the complement')
    check_parser.add_argument('--stem-max', type=int, default=2, help='Maximum stem length')
    check_parser.add_argument('--loop-max', type=int, default=3, help='Maximum loop length')
    check_parser.add_argument('--samples', type=int, default=10000,
                              help='Sampled lassos when more than three propositions occur')
    check_parser.add_argument('--seed', type=int, default=0, help='Sampling seed')

    # Pattern command
    pattern_parser = subparsers.add_parser('pattern', help='Print a benchmark formula')
    pattern_parser.add_argument('kind', choices=sorted(PATTERNS), help='Pattern family')
    pattern_parser.add_argument('n', type=int, help='Pattern index')
    pattern_parser.add_argument('--syntax', choices=['infix', 'spin'], default='infix')

    # Bench command
    bench_parser = subparsers.add_parser('bench', help='Print automaton sizes for a benchmark family')
    bench_parser.add_argument('table', choices=sorted([*BENCH_TABLES, LITERATURE_TABLE]), help='Benchmark table')
    bench_parser.add_argument('--max-n', type=int, default=7, help='Largest pattern index (ignored by literature)')

    return parser


def main(argv=None):
    """Main CLI entry point."""
    parser = create_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        logging.basicConfig(level=logging.INFO, format='%(levelname)s: %(message)s')

    try:
        if args.command == 'translate':
            return run_translate_command(args, verbose=args.verbose)
        elif args.command == 'check':
            return run_check_command(args, verbose=args.verbose)
        elif args.command == 'pattern':
            return run_pattern_command(args, verbose=args.verbose)
        elif args.command == 'bench':
            return run_bench_command(args, verbose=args.verbose)
        else:
            parser.error(f"Unknown command: {args.command}")

    except KeyboardInterrupt:
        print("\nOperation cancelled by user", file=sys.stderr)
        return 1
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        if args.verbose:
            import traceback
            traceback.print_exc()
        return 1

    return 0


if __name__ == '__main__':
    sys.exit(main())
