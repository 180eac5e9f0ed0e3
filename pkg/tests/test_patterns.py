#!/usr/bin/env python3
"""
Unit tests for the benchmark formula families

Tests cover:
- Shapes of the Rabin-like, Streett-like and history patterns
- Good leaf sets of fairness combinations
- Automaton sizes of the benchmark tables
- Literature formula sets and their native/fallback split
"""

import os
import sys

import pytest

# Add TelaGen to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from CLI.commands.bench_cmd import bench_rows, format_table, literature_rows, literature_summary
from Logic import atom, neg_atom, negate, to_string
from Logic.fragments import Fragment, FragmentError, classify
from Logic.parse_ltl import parse
from Logic.skeleton import substitute_map
from Oracle import equiv_on_lassos, find_disagreement
from Patterns import (
    LITERATURE, PATTERNS, good_leaf_sets, literature_corpus, literature_formula, phi_H, phi_R, phi_S,
)
from Translation.options import TranslationOptions
from Translation.pipeline import external_leaves, translate


class TestShapes:
    """Pattern formulas"""

    def test_base_cases(self):
        assert phi_R(0) == parse("F G a0 & G F b0")
        assert phi_S(0) == parse("F G a0 | G F b0")
        assert phi_H(0) == parse("F G (a | b)")

    def test_alternation(self):
        assert phi_R(1) == parse("(F G a1 & G F b1) | F G a0 | G F b0")
        assert phi_S(1) == parse("(F G a1 | G F b1) & F G a0 & G F b0")
        assert phi_H(2) == parse("F G (a | b) | F G (!a | X b) | F G (a | X X b)")

    @pytest.mark.parametrize("kind", ["history", "rabin", "streett"])
    def test_round_trip_and_fragment(self, kind):
        for n in range(4):
            phi = PATTERNS[kind](n)
            assert parse(to_string(phi)) == phi
            assert classify(phi) in (Fragment.FAIRNESS_BOOLEAN, Fragment.FAIRNESS_FG)

    @pytest.mark.parametrize("kind", sorted(PATTERNS))
    def test_negative_index(self, kind):
        with pytest.raises(ValueError):
            PATTERNS[kind](-1)

    @pytest.mark.parametrize("n", range(6))
    def test_streett_is_dual_of_rabin(self, n):
        renaming = {}
        for k in range(n + 1):
            renaming[atom(f"a{k}")] = neg_atom(f"b{k}")
            renaming[atom(f"b{k}")] = neg_atom(f"a{k}")
        dual = substitute_map(negate(phi_R(n)), renaming)
        assert dual == phi_S(n)
        if n <= 1:
            assert find_disagreement(dual, phi_S(n), samples=2000) is None


class TestGoodLeafSets:
    """Minimal satisfying leaf sets"""

    def test_small_cases(self):
        assert good_leaf_sets(phi_R(0)) == {frozenset({parse("F G a0"), parse("G F b0")})}
        assert good_leaf_sets(phi_S(0)) == {frozenset({parse("F G a0")}), frozenset({parse("G F b0")})}

    def test_counts_follow_alternation(self):
        assert [len(good_leaf_sets(phi_R(n))) for n in range(4)] == [1, 3, 3, 7]
        assert [len(good_leaf_sets(phi_S(n))) for n in range(4)] == [2, 2, 6, 6]

    @pytest.mark.parametrize("n", range(9))
    def test_rabin_leaf_sets_grow_exponentially(self, n):
        assert len(good_leaf_sets(phi_R(n))) >= 2 ** (n // 2)

    def test_history_sets_are_singletons(self):
        sets = good_leaf_sets(phi_H(3))
        assert len(sets) == 4
        assert all(len(s) == 1 for s in sets)

    def test_rejects_other_leaves(self):
        with pytest.raises(FragmentError):
            good_leaf_sets(parse("F a & G F b"))


class TestBenchmarkSizes:
    """Sizes of the translated families"""

    @pytest.mark.parametrize("n", range(8))
    def test_rabin_and_streett_are_single_state(self, n):
        for pattern in (phi_R, phi_S):
            automaton = translate(pattern(n))
            assert automaton.num_states == 1
            assert automaton.acceptance.size() == 2 * (n + 1)

    @pytest.mark.parametrize("construction", ["enhanced", "standard"])
    def test_rabin_beyond_truth_table_limit(self, construction):
        automaton = translate(phi_R(10), TranslationOptions(construction=construction))
        assert automaton.num_states == 1
        assert automaton.acceptance.size() == 22

    @pytest.mark.parametrize("n", range(8))
    def test_history_grows_with_window(self, n):
        automaton = translate(phi_H(n))
        assert automaton.num_states == 2 ** n
        assert automaton.acceptance.size() == n + 1

    @pytest.mark.parametrize("n", range(3))
    def test_history_language(self, n):
        assert equiv_on_lassos(phi_H(n), translate(phi_H(n))) is None

    def test_rabin_language(self):
        assert equiv_on_lassos(phi_R(1), translate(phi_R(1)), samples=3000) is None

    def test_bench_rows(self):
        rows = bench_rows("history", 7)
        assert [(n, states, size) for n, _, states, _, size in rows] == [(n, 2 ** n, n + 1) for n in range(8)]
        rows = bench_rows("rabin-acc", 7)
        assert [(n, states, size) for n, _, states, _, size in rows] == [(n, 1, 2 * (n + 1)) for n in range(8)]

    def test_format_table(self):
        text = format_table([(0, 5, 1, 2, 2), (10, 123, 1, 22, 22)])
        lines = text.splitlines()
        assert lines[0].split() == ["n", "formula-size", "states", "acc_sets", "acc_size"]
        assert lines[2].split() == ["10", "123", "1", "22", "22"]
        assert len({len(line) for line in lines}) == 1


class TestLiterature:
    """Formula sets from the model checking literature"""

    def test_family_sizes(self):
        assert {family: len(texts) for family, texts in LITERATURE.items()} == {
            "dwyer": 55, "etessami-holzmann": 12, "somenzi-bloem": 27,
        }
        assert len(literature_corpus()) == 94

    def test_every_formula_round_trips(self):
        for family, n, phi in literature_corpus():
            assert parse(to_string(phi)) == phi, (family, n)

    def test_indexing(self):
        assert literature_formula("dwyer", 0) == parse("G !p")
        assert PATTERNS["somenzi-bloem"](26) == parse("p0 | (p1 U p0)")
        with pytest.raises(ValueError, match="0..11"):
            literature_formula("etessami-holzmann", 12)

    @pytest.mark.parametrize("text, native", [
        ("G !p", True),
        ("F p", True),
        ("!p W s", True),
        ("F G p0 | G F p1", True),
        ("G F p0 -> G F p1", True),
        ("G (p -> F s)", False),
    ])
    def test_routes(self, text, native):
        assert (external_leaves(parse(text)) == []) is native

    @pytest.mark.parametrize("family, n", [
        ("dwyer", 0),
        ("dwyer", 5),
        ("dwyer", 15),
        ("dwyer", 20),
        ("etessami-holzmann", 6),
        ("somenzi-bloem", 0),
        ("somenzi-bloem", 9),
    ])
    def test_native_formulas_agree_with_semantics(self, family, n):
        phi = literature_formula(family, n)
        assert external_leaves(phi) == []
        assert equiv_on_lassos(phi, translate(phi), samples=2000) is None

    def test_literature_rows(self):
        rows = literature_rows()
        assert len(rows) == 94
        corpus = literature_corpus()
        for (family, n, phi), (row_family, row_n, route, states, size) in zip(corpus, rows):
            assert (family, n) == (row_family, row_n)
            assert route == ("fallback" if external_leaves(phi) else "native")
            if route == "native":
                assert states >= 1 and size >= 0
            else:
                assert states == size == "-"
        assert rows[25][2] == "fallback"
        native = sum(row[2] == "native" for row in rows)
        summary = literature_summary(rows).splitlines()
        assert summary[-1] == f"total: {native}/94 native"
        assert summary[0].startswith("dwyer: ") and summary[0].endswith("/55 native")
