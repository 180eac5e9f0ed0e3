#!/usr/bin/env python3
"""
Unit tests for TelaGen cosafety and safety automata

Tests cover:
- The after-function on single letters
- Derivative automata against golden HOA and sink bookkeeping
- Fragment checks and the state bound
- Agreement with the lasso oracle
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
from Logic import FALSE, TRUE, always, atom, conj, disj, neg_atom, negate, nxt, release
from Logic.fragments import FragmentError
from Logic.parse_ltl import parse
from Oracle import equiv_on_lassos, find_disagreement
from Translation.options import StateBoundExceeded
from Translation.safety import af_step, translate_cosafety, translate_safety

DATA = Path(__file__).parent / "data"


def random_safety(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        name = ("a", "b")[int(rng.integers(2))]
        return atom(name) if rng.random() < 0.6 else neg_atom(name)
    choice = int(rng.integers(5))
    if choice == 0:
        return nxt(random_safety(rng, depth - 1))
    if choice == 1:
        return always(random_safety(rng, depth - 1))
    left, right = random_safety(rng, depth - 1), random_safety(rng, depth - 1)
    return (release, conj, disj)[choice - 2](left, right)


class TestAfterFunction:
    """One-letter derivatives"""

    def test_until(self):
        f = parse("a U b")
        assert af_step(f, {"a"}) == f
        assert af_step(f, {"b"}) == TRUE
        assert af_step(f, set()) == FALSE

    def test_release(self):
        f = parse("G a")
        assert af_step(f, {"a"}) == f
        assert af_step(f, set()) == FALSE

    def test_next_unwraps(self):
        assert af_step(parse("X a"), set()) == atom("a")
        assert af_step(parse("X X a"), {"a"}) == parse("X a")

    def test_residual_is_subsumed(self):
        f = parse("F (b1 & F b2)")
        assert af_step(f, {"b1"}) == parse("F b2")
        assert af_step(f, {"b1", "b2"}) == TRUE
        assert af_step(f, {"b2"}) == f


class TestCosafety:
    """Automata with an accepting trap"""

    def test_golden(self):
        automaton = translate_cosafety(parse("F (b1 & F b2)"))
        assert automaton.num_states == 3
        assert automaton.acceptance == inf(0)
        assert serialize_hoa(automaton) == (DATA / "f_b1_fb2.hoa").read_text()

    def test_sinks(self):
        automaton = translate_cosafety(parse("F (b1 & F b2)"))
        assert automaton.metadata["accepting_sink"] == 2
        assert automaton.metadata["rejecting_sink"] is None
        assert automaton.metadata["state_labels"][2] == "q_acc"
        assert automaton.marks[2].tolist() == [1, 1, 1, 1]

    def test_atom_has_both_sinks(self):
        automaton = translate_cosafety(parse("a"))
        assert automaton.num_states == 3
        assert automaton.metadata["accepting_sink"] is not None
        assert automaton.metadata["rejecting_sink"] is not None

    def test_rejects_non_cosafety(self):
        with pytest.raises(FragmentError):
            translate_cosafety(parse("G a"))

    def test_state_bound(self):
        with pytest.raises(StateBoundExceeded):
            translate_cosafety(parse("F (a & X X X b)"), state_bound=2)

    @pytest.mark.parametrize("text", [
        "F (b1 & F b2)",
        "a U (b & X c)",
        "F a & F b",
        "X X a | F (a & X b)",
        "(a U b) U c",
    ])
    def test_oracle_agreement(self, text):
        phi = parse(text)
        assert equiv_on_lassos(phi, translate_cosafety(phi)) is None


class TestSafety:
    """Automata with a rejecting trap"""

    def test_always(self):
        automaton = translate_safety(parse("G a"))
        assert automaton.num_states == 2
        assert automaton.acceptance == fin(0)
        assert automaton.metadata["rejecting_sink"] == 1
        assert automaton.metadata["accepting_sink"] is None
        assert automaton.marks.tolist() == [[0, 0], [1, 1]]

    def test_rejects_non_safety(self):
        with pytest.raises(FragmentError):
            translate_safety(parse("F a"))

    @pytest.mark.parametrize("text", [
        "G a",
        "G (a | X b)",
        "a R b",
        "G a | G b",
        "X G (!a | X a)",
    ])
    def test_oracle_agreement(self, text):
        phi = parse(text)
        assert equiv_on_lassos(phi, translate_safety(phi)) is None

    def test_complement_of_cosafety_negation(self):
        rng = np.random.default_rng(29)
        checked = 0
        while checked < 20:
            phi = random_safety(rng, 3)
            if phi.is_constant:
                continue
            dual = complement(translate_cosafety(negate(phi)))
            assert find_disagreement(translate_safety(phi), dual) is None, phi
            checked += 1
