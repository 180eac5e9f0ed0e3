#!/usr/bin/env python3
"""
TelaGen CLI - Bench Command Implementation
"""

import sys
import time
from collections import Counter
from pathlib import Path

# Add TelaGen to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from Automata import acceptance_size
from Patterns import LITERATURE, literature_corpus, phi_H, phi_R
from Translation.options import TranslationOptions
from Translation.pipeline import external_leaves, translate

BENCH_TABLES = {
    "rabin-acc": phi_R,
    "history": phi_H,
}
LITERATURE_TABLE = "literature"

COLUMNS = ("n", "formula-size", "states", "acc_sets", "acc_size")
LITERATURE_COLUMNS = ("family", "n", "route", "states", "acc_size")


def bench_rows(table, max_n, options=None):
    """One (n, formula size, states, marks, acceptance size) tuple per pattern index."""
    options = options or TranslationOptions()
    pattern = BENCH_TABLES[table]
    rows = []
    for n in range(max_n + 1):
        phi = pattern(n)
        automaton = translate(phi, options)
        rows.append((n, phi.size(), automaton.num_states, automaton.mark_count, acceptance_size(automaton)))
    return rows


def literature_rows(options=None):
    """One (family, n, route, states, acceptance size) tuple per literature formula.

    Formulas with a leaf outside the native fragments are reported as
    ``fallback`` and not translated.
    """
    options = options or TranslationOptions()
    rows = []
    for family, n, phi in literature_corpus():
        if external_leaves(phi):
            rows.append((family, n, "fallback", "-", "-"))
            continue
        automaton = translate(phi, options)
        rows.append((family, n, "native", automaton.num_states, acceptance_size(automaton)))
    return rows


def literature_summary(rows):
    """Native count and total per family, then over all families."""
    native = Counter(row[0] for row in rows if row[2] == "native")
    total = Counter(row[0] for row in rows)
    lines = [f"{family}: {native[family]}/{total[family]} native" for family in LITERATURE]
    lines.append(f"total: {sum(native.values())}/{sum(total.values())} native")
    return "\n".join(lines)


def format_table(rows, columns=COLUMNS):
    widths = [max(len(columns[i]), *(len(str(r[i])) for r in rows)) for i in range(len(columns))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    for row in rows:
        lines.append("  ".join(str(v).rjust(w) for v, w in zip(row, widths)))
    return "\n".join(lines)


def run_bench_command(args, verbose=False):
    """Translate a benchmark family for n = 0..max_n, or the literature set, and print the size table."""
    if args.max_n < 0:
        print("Error: --max-n must be non-negative", file=sys.stderr)
        return 1
    try:
        start = time.perf_counter()
        if args.table == LITERATURE_TABLE:
            rows = literature_rows()
            report = f"{format_table(rows, LITERATURE_COLUMNS)}\n\n{literature_summary(rows)}"
        else:
            rows = bench_rows(args.table, args.max_n)
            report = format_table(rows)
        elapsed = time.perf_counter() - start
    except Exception as e:
        print(f"Benchmark failed: {e}", file=sys.stderr)
        if verbose:
            import traceback
            traceback.print_exc()
        return 1
    print(report)
    if verbose:
        print(f"   {len(rows)} translations in {elapsed:.2f}s", file=sys.stderr)
    return 0
