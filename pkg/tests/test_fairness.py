#!/usr/bin/env python3
"""
Unit tests for TelaGen fairness buffer automata

Tests cover:
- Relevant history masks and their pointwise operations
- Padded finite-word evaluation and the masking lemma
- Buffer specs, shared global-history masks
- GF/FG buffer automata against golden HOA and the lasso oracle
"""

import os
import sys
from pathlib import Path

import numpy as np
import pytest

# Add TelaGen to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from Automata import complement
from Automata.acceptance import fin, inf
from Automata.hoa import serialize_hoa
from Logic import atom, conj, disj, neg_atom, negate, nxt
from Logic.fragments import FragmentError
from Logic.parse_ltl import parse
from Oracle import equiv_on_lassos, find_disagreement
from Translation.fairness import (
    BufferSpec, global_history_mask, holds_on_padded, mask_closure, mask_drop, mask_join, relevant_history,
    translate_fg, translate_gf, word_meet,
)
from Translation.options import StateBoundExceeded

DATA = Path(__file__).parent / "data"
EMPTY = frozenset()


def letters(*names):
    return tuple(frozenset(n) for n in names)


def random_ltl_x(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        name = ("a", "b", "c")[int(rng.integers(3))]
        return atom(name) if rng.random() < 0.6 else neg_atom(name)
    choice = int(rng.integers(3))
    if choice == 0:
        return nxt(random_ltl_x(rng, depth - 1))
    if choice == 1:
        return conj(random_ltl_x(rng, depth - 1), random_ltl_x(rng, depth - 1))
    return disj(random_ltl_x(rng, depth - 1), random_ltl_x(rng, depth - 1))


class TestMasks:
    """Relevant history and mask operations"""

    def test_relevant_history(self):
        assert relevant_history(parse("a1 & X a2")) == letters({"a1"}, {"a2"})
        assert relevant_history(parse("a | X X !b")) == letters({"a"}, (), {"b"})
        assert relevant_history(parse("true")) == ()

    def test_relevant_history_outside_ltl_x(self):
        with pytest.raises(FragmentError):
            relevant_history(parse("F a"))

    def test_pointwise_operations(self):
        mask = letters({"a"}, (), {"b"})
        assert mask_closure(mask) == letters({"a"}, {"a"}, {"a", "b"})
        assert mask_drop(mask) == letters({"a"}, ())
        assert mask_join(letters({"a"}), letters((), {"b"})) == letters({"a"}, {"b"})
        assert word_meet(letters({"a", "c"}), letters({"a"}, {"b"})) == letters({"a"}, ())


class TestPaddedEvaluation:
    """Finite words padded with empty letters"""

    def test_holds_on_padded(self):
        phi = parse("a1 & X a2")
        assert holds_on_padded(phi, letters({"a1"}, {"a2"}))
        assert not holds_on_padded(phi, letters({"a1"}))
        assert holds_on_padded(parse("X X X !a"), letters({"a"}, {"a"}))
        assert not holds_on_padded(parse("X X a"), letters({"a"}))

    def test_masking_lemma(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            phi = random_ltl_x(rng, 3)
            history = relevant_history(phi)
            word = tuple(
                frozenset(n for n in ("a", "b", "c") if rng.random() < 0.5)
                for _ in range(len(history) + 2)
            )
            assert holds_on_padded(phi, word) == holds_on_padded(phi, word_meet(word, history)), phi


class TestBufferSpec:
    """Per-component buffer data"""

    def test_spec_for_fig_formula(self):
        spec = BufferSpec.for_formula("GF", parse("a1 & X a2"))
        assert spec.ap == ("a1", "a2")
        assert spec.mask == (1,)
        assert spec.length == 1
        assert spec.initial == (0,)
        assert spec.verdicts((1,)).tolist() == [False, False, True, True]
        assert spec.verdicts((0,)).tolist() == [False, False, False, False]
        assert spec.acceptance(3) == inf(3)

    def test_fg_marks_are_complemented(self):
        spec = BufferSpec.for_formula("FG", parse("a"))
        assert spec.length == 0
        assert spec.marked(()).tolist() == [True, False]
        assert spec.acceptance(0) == fin(0)

    def test_shift_masks_new_letter(self):
        spec = BufferSpec.for_formula("GF", parse("a & X X b"))
        assert spec.ap == ("a", "b")
        assert spec.mask == (1, 1)
        assert spec.shift((1, 0), 3) == (0, 1)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            BufferSpec.for_formula("GG", parse("a"))

    def test_global_history_mask_is_right_aligned(self):
        specs = [
            BufferSpec.for_formula("FG", parse("a | X b")),
            BufferSpec.for_formula("FG", parse("!a | X X b")),
            BufferSpec.for_formula("GF", parse("c")),
        ]
        assert [s.length for s in specs] == [1, 2, 0]
        assert global_history_mask(specs, ("a", "b", "c")) == (1, 1)
        assert global_history_mask([], ("a",)) == ()

    def test_window_from_product(self):
        spec = BufferSpec.for_formula("GF", parse("a1 & X a2"))
        projection = np.arange(4)
        assert spec.window_from_product((0, 3), projection) == (1,)


class TestBufferAutomata:
    """GF/FG translations"""

    def test_fig_golden(self):
        automaton = translate_gf(parse("a1 & X a2"))
        assert automaton.num_states == 2
        assert automaton.mark_count == 1
        assert automaton.acceptance == inf(0)
        assert serialize_hoa(automaton) == (DATA / "gf_a1_xa2.hoa").read_text()

    def test_accepting_transitions(self):
        automaton = translate_gf(parse("a1 & X a2"))
        assert automaton.marks.tolist() == [[0, 0, 0, 0], [0, 0, 1, 1]]
        assert automaton.metadata["windows"] == [(0,), (1,)]

    def test_state_count_follows_mask(self):
        assert translate_gf(parse("a & X X b")).num_states == 4
        assert translate_fg(parse("a")).num_states == 1
        assert translate_fg(parse("X X X a")).num_states == 1

    @pytest.mark.parametrize("text", ["a", "a1 & X a2", "a | X X !b", "X (a & !b)", "!a & X a", "(a | X b) & X X !a"])
    def test_oracle_agreement(self, text):
        phi = parse(text)
        assert equiv_on_lassos(parse(f"G F ({text})"), translate_gf(phi)) is None
        assert equiv_on_lassos(parse(f"F G ({text})"), translate_fg(phi)) is None

    def test_random_corpus(self):
        rng = np.random.default_rng(11)
        for _ in range(15):
            phi = random_ltl_x(rng, 3)
            gf = parse(f"G F ({phi})")
            assert equiv_on_lassos(gf, translate_gf(phi), stem_max=1, loop_max=3) is None, phi

    def test_fg_is_complement_of_gf_of_negation(self):
        rng = np.random.default_rng(23)
        for _ in range(15):
            phi = random_ltl_x(rng, 3)
            dual = complement(translate_gf(negate(phi)))
            assert find_disagreement(translate_fg(phi), dual, stem_max=1, loop_max=3) is None, phi

    def test_state_bound(self):
        with pytest.raises(StateBoundExceeded):
            translate_gf(parse("a & X X X b"), state_bound=3)
        with pytest.raises(StateBoundExceeded):
            translate_fg(parse("a | X X X b"), state_bound=3)
        assert translate_gf(parse("a & X X X b"), state_bound=8).num_states == 8
