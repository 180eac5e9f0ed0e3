#!/usr/bin/env python3
"""Stand-in external translator for the fallback tests.

Prints the deterministic Buchi automaton for G (d1 -> F d2) whatever formula
it is given. STUB_MODE=fail|garbage|nondet|slow selects a misbehaviour.
"""

import os
import sys
import time
from pathlib import Path

DATA = Path(__file__).parent


def main():
    mode = os.environ.get("STUB_MODE", "")
    if mode == "fail":
        print(f"cannot translate {sys.argv[1:]}", file=sys.stderr)
        return 1
    if mode == "garbage":
        print("this is not HOA")
        return 0
    if mode == "nondet":
        print((DATA / "nondeterministic.hoa").read_text(), end="")
        return 0
    if mode == "slow":
        time.sleep(30)
    print((DATA / "response_d1_d2.hoa").read_text(), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
