#!/usr/bin/env python3
"""
TelaGen CLI - Pattern Command Implementation
"""

import sys
from pathlib import Path

# Add TelaGen to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from Logic import to_string
from Patterns import PATTERNS


def run_pattern_command(args, verbose=False):
    """Print one member of a benchmark family in the input grammar."""
    try:
        phi = PATTERNS[args.kind](args.n)
    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    if verbose:
        print(f"{args.kind} pattern, n={args.n}: size {phi.size()}", file=sys.stderr)
    print(to_string(phi, args.syntax))
    return 0
