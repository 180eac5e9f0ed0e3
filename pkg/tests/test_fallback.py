#!/usr/bin/env python3
"""
Unit tests for the external translator fallback

Tests cover:
- Command templates and formula syntax
- Translation of unsupported leaves through a stub translator
- Products mixing native and external components
- Failure modes: missing command, non-zero exit, bad HOA, nondeterminism, timeout
"""

import os
import shlex
import sys
from pathlib import Path

import pytest

# Add TelaGen to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from Logic import to_string
from Logic.parse_ltl import parse
from Oracle import equiv_on_lassos
from Translation.fallback import FallbackError, FallbackRequired, build_command, translate_external
from Translation.options import FALLBACK_ENV, TranslationOptions
from Translation.pipeline import translate

STUB = Path(__file__).parent / "data" / "stub_translator.py"
STUB_COMMAND = f"{shlex.quote(sys.executable)} {shlex.quote(str(STUB))} %f"
RESPONSE = "G (d1 -> F d2)"


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    monkeypatch.delenv(FALLBACK_ENV, raising=False)
    monkeypatch.delenv("STUB_MODE", raising=False)


class TestBuildCommand:
    """Command templates"""

    def test_placeholder_is_one_argument(self):
        phi = parse(RESPONSE)
        assert build_command("ltl2x --deterministic -f %f", phi) == [
            "ltl2x", "--deterministic", "-f", to_string(phi),
        ]

    def test_spin_syntax(self):
        phi = parse(RESPONSE)
        assert build_command("ltl2x %f", phi, "spin") == ["ltl2x", to_string(phi, "spin")]

    def test_missing_placeholder(self):
        with pytest.raises(ValueError):
            build_command("ltl2x -f", parse(RESPONSE))


class TestExternalTranslation:
    """Running the stub translator"""

    def test_translate_external(self):
        automaton = translate_external(parse(RESPONSE), STUB_COMMAND)
        assert automaton.ap == ("d1", "d2")
        assert automaton.num_states == 2
        assert equiv_on_lassos(parse(RESPONSE), automaton) is None

    def test_pipeline_uses_fallback(self):
        options = TranslationOptions(fallback_command=STUB_COMMAND)
        automaton = translate(parse(RESPONSE), options)
        assert equiv_on_lassos(parse(RESPONSE), automaton) is None

    def test_mixed_product(self):
        phi = parse(f"F a & {RESPONSE}")
        automaton = translate(phi, TranslationOptions(fallback_command=STUB_COMMAND))
        external = [c for c in automaton.metadata["components"] if c.external]
        assert [c.formula for c in external] == [parse(RESPONSE)]
        assert equiv_on_lassos(phi, automaton) is None

    def test_mixed_standard_product(self):
        phi = parse(f"G F a | {RESPONSE}")
        options = TranslationOptions(fallback_command=STUB_COMMAND, construction="standard")
        assert equiv_on_lassos(phi, translate(phi, options)) is None

    def test_command_from_environment(self, monkeypatch):
        monkeypatch.setenv(FALLBACK_ENV, STUB_COMMAND)
        automaton = translate(parse(RESPONSE))
        assert automaton.num_states == 2


class TestFailures:
    """Unusable external translators"""

    def test_no_command_configured(self):
        with pytest.raises(FallbackRequired) as info:
            translate(parse(RESPONSE))
        assert info.value.formula == parse(RESPONSE)

    def test_nonzero_exit(self, monkeypatch):
        monkeypatch.setenv("STUB_MODE", "fail")
        with pytest.raises(FallbackError) as info:
            translate_external(parse(RESPONSE), STUB_COMMAND)
        assert "cannot translate" in info.value.stderr

    def test_garbage_output(self, monkeypatch):
        monkeypatch.setenv("STUB_MODE", "garbage")
        with pytest.raises(FallbackError):
            translate_external(parse(RESPONSE), STUB_COMMAND)

    def test_nondeterministic_output(self, monkeypatch):
        monkeypatch.setenv("STUB_MODE", "nondet")
        with pytest.raises(FallbackError):
            translate_external(parse(RESPONSE), STUB_COMMAND)

    def test_timeout(self, monkeypatch):
        monkeypatch.setenv("STUB_MODE", "slow")
        with pytest.raises(FallbackError):
            translate_external(parse(RESPONSE), STUB_COMMAND, timeout=0.5)

    def test_missing_executable(self):
        with pytest.raises(FallbackError):
            translate_external(parse(RESPONSE), "/nonexistent/translator %f")
