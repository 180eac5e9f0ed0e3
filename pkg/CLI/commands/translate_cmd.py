#!/usr/bin/env python3
"""
TelaGen CLI - Translate Command Implementation
"""

import sys
from pathlib import Path

# Add TelaGen to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from Automata import acceptance_size
from Automata.hoa import serialize_hoa
from Logic import to_string
from Logic.parse_ltl import LTLSyntaxError, parse
from Logic.skeleton import SkeletonTooLarge
from Translation.fallback import FallbackError, FallbackRequired
from Translation.options import StateBoundExceeded, TranslationOptions, load_options, options_from_environment
from Translation.pipeline import translate

EXIT_PARSE_ERROR = 2
EXIT_FALLBACK_REQUIRED = 3
EXIT_STATE_BOUND = 4


def read_formula_text(args):
    if getattr(args, "file", None):
        return Path(args.file).read_text().strip()
    return args.formula


def resolve_options(args):
    """CLI flags over the --config file over DELAG_FALLBACK_CMD over defaults."""
    options = load_options(args.config) if getattr(args, "config", None) else TranslationOptions()
    construction = None
    if args.standard:
        construction = "standard"
    elif args.enhanced:
        construction = "enhanced"
    options = options.updated(
        construction=construction,
        global_history=False if args.no_global_history else None,
        piggyback=True if args.piggyback else None,
        fallback_command=args.fallback_cmd,
        fallback_syntax=args.syntax,
        fallback_timeout=args.fallback_timeout,
        state_bound=args.state_bound,
    )
    return options_from_environment(options)


def format_stats(automaton):
    return f"states={automaton.num_states} acc_sets={automaton.mark_count} acc_size={acceptance_size(automaton)}"


def run_translate_command(args, verbose=False):
    """
    Translate one LTL formula and write the automaton as HOA.

    Args:
        args: Argparse namespace with formula/file, construction flags, fallback settings, stats, output
        verbose: Enable verbose output
    """
    try:
        text = read_formula_text(args)
        phi = parse(text)
    except LTLSyntaxError as e:
        print(f"Parse error: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR

    try:
        options = resolve_options(args)
        if verbose:
            print(f"Translating {to_string(phi)} ({options.construction} product)", file=sys.stderr)
        automaton = translate(phi, options).canonical()
    except FallbackRequired as e:
        print(f"Error: {e} (set --fallback-cmd or DELAG_FALLBACK_CMD)", file=sys.stderr)
        return EXIT_FALLBACK_REQUIRED
    except (StateBoundExceeded, SkeletonTooLarge) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_STATE_BOUND
    except FallbackError as e:
        print(f"External translator failed: {e}", file=sys.stderr)
        if e.stderr:
            print(e.stderr.rstrip(), file=sys.stderr)
        return 1
    except Exception as e:
        print(f"Translation failed: {e}", file=sys.stderr)
        if verbose:
            import traceback
            traceback.print_exc()
        return 1

    hoa = serialize_hoa(automaton, name=to_string(phi))
    if args.output:
        output_path = Path(args.output)
        output_path.write_text(hoa)
        if verbose:
            print(f"   HOA written to {output_path}", file=sys.stderr)
    else:
        sys.stdout.write(hoa)

    if args.stats:
        print(format_stats(automaton), file=sys.stderr)
    return 0
