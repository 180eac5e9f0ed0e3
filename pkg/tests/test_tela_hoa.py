#!/usr/bin/env python3
"""
Unit tests for the TELA model, acceptance formulas and HOA I/O

Tests cover:
- Acceptance formula evaluation, witnesses, duals and printing
- Tela validation, lasso acceptance, complement and canonical numbering
- HOA serialization against golden files
- HOA parsing: comments, implicit labels, state-based marks, completion, errors
"""

import os
import sys
from pathlib import Path

import numpy as np
import pytest

# Add TelaGen to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from Automata import (
    Lasso, Tela, TelaError, acceptance_size, accepts_lasso, complement, letter_of, projection_table, state_count,
)
from Automata.acceptance import AccKind, acc_and, acc_false, acc_or, acc_true, fin, inf
from Automata.hoa import (
    HOAFormatError, IncompleteAutomatonError, NondeterminismError, cube_cover, parse_acceptance, parse_hoa,
    serialize_hoa,
)
from Logic.parse_ltl import parse
from Oracle import equiv_on_lassos, find_disagreement

DATA = Path(__file__).parent / "data"


def lasso(stem, loop):
    return Lasso(tuple(frozenset(x) for x in stem), tuple(frozenset(x) for x in loop))


def read(name):
    return (DATA / name).read_text()


class TestAcceptance:
    """Fin/Inf Boolean formulas"""

    def test_evaluate(self):
        acc = acc_and(inf(0), fin(1))
        assert acc.evaluate(0b01)
        assert not acc.evaluate(0b11)
        assert not acc.evaluate(0b00)
        assert acc_true().evaluate(0)
        assert not acc_false().evaluate(0b1)

    def test_evaluate_array_matches_scalar(self):
        acc = acc_or(acc_and(inf(0), fin(1)), inf(2))
        masks = np.arange(8, dtype=np.int64)
        assert acc.evaluate_array(masks).tolist() == [acc.evaluate(int(m)) for m in masks]

    def test_witness(self):
        acc = acc_and(inf(0), fin(1))
        assert acc.witness(True) == 0b01
        assert acc.witness(False) == 0
        assert acc_true().witness(False) is None
        assert fin(3).witness(False) == 0b1000

    def test_dual(self):
        assert acc_and(fin(0), inf(1)).dual() == acc_or(inf(0), fin(1))
        assert acc_true().dual() == acc_false()

    def test_size_and_marks(self):
        acc = acc_or(acc_and(inf(0), fin(1)), inf(0))
        assert acc.size() == 3
        assert acc.marks() == {0, 1}

    def test_constant_folding(self):
        assert acc_and(acc_true(), inf(0)) == inf(0)
        assert acc_or(acc_true(), inf(0)) == acc_true()
        assert acc_and() == acc_true()

    def test_shift_and_replace(self):
        acc = acc_and(inf(0), fin(1))
        assert acc.shift(2) == acc_and(inf(2), fin(3))
        assert acc.replace_marks([0], True) == fin(1)
        assert acc.replace_marks([1], False) == acc_false()

    @pytest.mark.parametrize("text", [
        "Inf(0)",
        "Fin(0) & (Inf(1) | Fin(2))",
        "Inf(0) | Fin(1) & Inf(2)",
        "t",
        "f",
    ])
    def test_hoa_round_trip(self, text):
        assert parse_acceptance(text).to_hoa() == text

    def test_unknown_primitive(self):
        with pytest.raises(HOAFormatError):
            parse_acceptance("Foo(0)")

    def test_fin_needs_a_mark(self):
        with pytest.raises(ValueError):
            fin(-1)
        assert inf(0).kind is AccKind.INF


class TestTela:
    """The deterministic automaton model"""

    def gf_automaton(self):
        return parse_hoa(read("gf_a1_xa2.hoa"))

    def test_letters_and_projection(self):
        assert letter_of({"a2"}, ("a1", "a2")) == 2
        assert letter_of({"zz"}, ("a1",)) == 0
        assert projection_table(("a", "b", "c"), ("c", "a")).tolist() == [0, 2, 0, 2, 1, 3, 1, 3]

    def test_validation(self):
        with pytest.raises(TelaError):
            Tela(("a",), np.zeros((1, 1)), np.zeros((1, 1)), 0, acc_true(), 0)
        with pytest.raises(TelaError):
            Tela(("a",), np.array([[0, 1]]), np.zeros((1, 2)), 0, acc_true(), 0)
        with pytest.raises(TelaError):
            Tela(("a",), np.zeros((1, 2)), np.array([[0, 2]]), 0, inf(0), 1)
        with pytest.raises(TelaError):
            Tela(("a",), np.zeros((1, 2)), np.zeros((1, 2)), 0, inf(1), 1)

    def test_tables_are_read_only(self):
        automaton = self.gf_automaton()
        with pytest.raises(ValueError):
            automaton.successors[0, 0] = 1

    def test_accepts_lasso(self):
        automaton = self.gf_automaton()
        assert accepts_lasso(automaton, lasso([], [{"a1"}, {"a2"}]))
        assert not accepts_lasso(automaton, lasso([], [{"a1"}]))
        assert accepts_lasso(automaton, lasso([{"a2"}, set()], [{"a1", "a2"}]))

    def test_rotation_invariance(self):
        automaton = self.gf_automaton()
        word = lasso([{"a2"}], [{"a1"}, {"a2"}, set()])
        assert accepts_lasso(automaton, word) == accepts_lasso(automaton, word.rotate())

    def test_complement_partitions_lassos(self):
        automaton = self.gf_automaton()
        dual = complement(automaton)
        assert find_disagreement(automaton, dual, stem_max=1, loop_max=2) is not None
        for stem in ([], [{"a1"}]):
            for loop in ([set()], [{"a1"}, {"a2"}], [{"a1", "a2"}]):
                word = lasso(stem, loop)
                assert accepts_lasso(automaton, word) != accepts_lasso(dual, word)

    def test_true_acceptance_accepts_everything(self):
        automaton = Tela(("a",), np.zeros((1, 2)), np.zeros((1, 2)), 0, acc_true(), 0)
        assert equiv_on_lassos(parse("true"), automaton) is None

    def test_canonical_drops_unreachable_states(self):
        successors = np.array([[2, 2], [1, 1], [0, 2]])
        automaton = Tela(("a",), successors, np.zeros((3, 2)), 0, acc_true(), 0,
                         metadata={"state_labels": ["x", "dead", "y"]})
        assert automaton.reachable() == {0, 2}
        canonical = automaton.canonical()
        assert canonical.num_states == 2
        assert canonical.successors.tolist() == [[1, 1], [0, 1]]
        assert canonical.metadata["state_labels"] == ["x", "y"]

    def test_metrics(self):
        automaton = self.gf_automaton()
        assert state_count(automaton) == 2
        assert acceptance_size(automaton) == 1


class TestSerialization:
    """HOA output"""

    @pytest.mark.parametrize("name", ["gf_a1_xa2.hoa", "f_b1_fb2.hoa"])
    def test_golden_round_trip(self, name):
        text = read(name)
        assert serialize_hoa(parse_hoa(text)) == text

    def test_name_header_is_quoted(self):
        text = serialize_hoa(parse_hoa(read("gf_a1_xa2.hoa")), name='say "hi"')
        assert 'name: "say \\"hi\\""' in text.splitlines()

    def test_acc_name_only_for_named_conditions(self):
        automaton = Tela(("a",), np.zeros((1, 2)), np.array([[0, 3]]), 0, acc_and(inf(0), fin(1)), 2)
        text = serialize_hoa(automaton)
        assert "acc-name" not in text
        assert "Acceptance: 2 Inf(0) & Fin(1)" in text
        assert "[0] 0 {0 1}" in text

    def test_constant_automaton(self):
        automaton = Tela((), np.zeros((1, 1)), np.zeros((1, 1)), 0, acc_true(), 0)
        lines = serialize_hoa(automaton).splitlines()
        assert "AP: 0" in lines
        assert "acc-name: all" in lines
        assert "Acceptance: 0 t" in lines
        assert "[t] 0" in lines

    def test_cube_cover(self):
        assert cube_cover(frozenset({1, 3}), (0, 1)) == [((0, True),)]
        assert cube_cover(frozenset({0, 1, 2, 3}), (0, 1)) == [()]
        assert cube_cover(frozenset(), (0, 1)) == []
        cubes = cube_cover(frozenset({0, 3}), (0, 1))
        assert sorted(cubes) == sorted([((0, True), (1, True)), ((0, False), (1, False))])


class TestParsing:
    """HOA input"""

    def test_comments_and_disjunctive_labels(self):
        automaton = parse_hoa(read("response_d1_d2.hoa"))
        assert automaton.ap == ("d1", "d2")
        assert automaton.num_states == 2
        assert equiv_on_lassos(parse("G (d1 -> F d2)"), automaton) is None

    def test_implicit_labels_and_state_marks(self):
        automaton = parse_hoa(read("implicit_state_marks.hoa"))
        assert automaton.marks[1].tolist() == [1, 1]
        assert equiv_on_lassos(parse("G F a"), automaton) is None

    def test_incomplete_rejected(self):
        with pytest.raises(IncompleteAutomatonError):
            parse_hoa(read("partial_a.hoa"))

    def test_completion_with_rejecting_sink(self):
        automaton = parse_hoa(read("partial_a.hoa"), complete=True)
        assert automaton.num_states == 3
        assert equiv_on_lassos(parse("a"), automaton) is None

    def test_completion_adds_fin_when_nothing_falsifies(self):
        automaton = parse_hoa(read("partial_ga.hoa"), complete=True)
        assert automaton.acceptance == fin(0)
        assert automaton.mark_count == 1
        assert equiv_on_lassos(parse("G a"), automaton) is None

    def test_nondeterminism(self):
        with pytest.raises(NondeterminismError):
            parse_hoa(read("nondeterministic.hoa"))

    @pytest.mark.parametrize("text", [
        "HOA: v1\nStates: 1\nStart: 0\nAcceptance: 0 t\n",
        "HOA: v2\nStates: 1\nStart: 0\nAcceptance: 0 t\n--BODY--\nState: 0\n[t] 0\n--END--\n",
        "HOA: v1\nStates: 1\nStart: 0\nAP: 0\n--BODY--\nState: 0\n[t] 0\n--END--\n",
        "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"a\"\nAlias: @x 0\nAcceptance: 0 t\n--BODY--\nState: 0\n[@x] 0\n--END--\n",
        "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 1 Foo(0)\n--BODY--\nState: 0\n[t] 0\n--END--\n",
        "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 0 t\n--BODY--\nState: 0\n[t] 3\n--END--\n",
    ])
    def test_malformed(self, text):
        with pytest.raises(HOAFormatError):
            parse_hoa(text)

    def test_multiple_start_states(self):
        text = "HOA: v1\nStates: 2\nStart: 0\nStart: 1\nAP: 0\nAcceptance: 0 t\n--BODY--\nState: 0\n[t] 0\nState: 1\n[t] 1\n--END--\n"
        with pytest.raises(NondeterminismError):
            parse_hoa(text)

    def test_missing_start_is_a_format_error(self):
        text = "HOA: v1\nStates: 1\nAP: 0\nAcceptance: 0 t\n--BODY--\nState: 0\n[t] 0\n--END--\n"
        with pytest.raises(HOAFormatError, match="missing Start") as info:
            parse_hoa(text)
        assert not isinstance(info.value, NondeterminismError)
