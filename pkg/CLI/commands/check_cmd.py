#!/usr/bin/env python3
"""
TelaGen CLI - Check Command Implementation
"""

import sys
from pathlib import Path

# Add TelaGen to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from Automata import accepts_lasso, complement
from Automata.hoa import HOAFormatError, parse_hoa
from Logic.parse_ltl import LTLSyntaxError, parse
from Oracle import equiv_on_lassos, ltl_sat_lasso
from Translation.options import options_from_environment
from Translation.pipeline import translate


def run_check_command(args, verbose=False):
    """
    Compare a formula with an automaton on all lassos within bounds.

    The automaton comes from --hoa, or from translating the formula itself.
    Exit status 0 means no counterexample was found.
    """
    try:
        phi = parse(args.formula)
    except LTLSyntaxError as e:
        print(f"Parse error: {e}", file=sys.stderr)
        return 2

    try:
        if args.hoa:
            automaton = parse_hoa(Path(args.hoa).read_text(), complete=True)
            source = args.hoa
        else:
            automaton = translate(phi, options_from_environment())
            source = "own translation"
        if args.complement:
            automaton = complement(automaton)
        if verbose:
            print(f"Checking against {source}: {automaton.num_states} states", file=sys.stderr)
        witness = equiv_on_lassos(
            phi, automaton, args.stem_max, args.loop_max, samples=args.samples, seed=args.seed
        )
    except (HOAFormatError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except Exception as e:
        print(f"Check failed: {e}", file=sys.stderr)
        if verbose:
            import traceback
            traceback.print_exc()
        return 1

    if witness is None:
        print("equivalent within bounds")
        return 0
    print(f"counterexample: {witness}")
    print(f"   formula: {ltl_sat_lasso(phi, witness)}, automaton: {accepts_lasso(automaton, witness)}")
    return 1
