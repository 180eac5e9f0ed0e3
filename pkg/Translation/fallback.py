"""TelaGen - external translator fallback.

Subformulas outside every supported fragment are handed to an external
LTL-to-deterministic-automaton tool. The command template names the formula
with ``%f``; it is split with shlex and run without a shell.
"""

from __future__ import annotations

import logging
import os
import shlex
import subprocess

from Automata import Tela
from Automata.hoa import HOAFormatError, parse_hoa
from Logic import Formula, atoms, to_string

__all__ = ["PLACEHOLDER", "FallbackRequired", "FallbackError", "build_command", "translate_external"]

logger = logging.getLogger(__name__)

PLACEHOLDER = "%f"


class FallbackRequired(RuntimeError):
    """A subformula needs the external translator but none is configured."""

    def __init__(self, formula: Formula):
        super().__init__(f"unsupported subformula needs an external translator: {formula}")
        self.formula = formula


class FallbackError(RuntimeError):
    """The external translator failed or produced unusable output."""

    def __init__(self, message: str, stderr: str = ""):
        super().__init__(message)
        self.stderr = stderr


def build_command(template: str, formula: Formula, syntax: str = "infix") -> list[str]:
    if PLACEHOLDER not in template:
        raise ValueError(f"fallback command template lacks the {PLACEHOLDER} placeholder: {template!r}")
    text = to_string(formula, syntax)
    return [part.replace(PLACEHOLDER, text) for part in shlex.split(template)]


def translate_external(
    formula: Formula,
    command_template: str,
    syntax: str = "infix",
    timeout: float = 60.0,
) -> Tela:
    command = build_command(command_template, formula, syntax)
    logger.info("running external translator: %s", shlex.join(command))
    try:
        completed = subprocess.run(
            command,
            capture_output=True,
            text=True,
            timeout=timeout,
            env=os.environ.copy(),
            check=False,
        )
    except subprocess.TimeoutExpired as err:
        stderr = err.stderr.decode(errors="replace") if isinstance(err.stderr, bytes) else (err.stderr or "")
        raise FallbackError(f"external translator timed out after {timeout:g}s", stderr=stderr) from err
    except OSError as err:
        raise FallbackError(f"cannot run external translator: {err}") from err

    if completed.returncode != 0:
        raise FallbackError(
            f"external translator exited with status {completed.returncode}", stderr=completed.stderr
        )
    try:
        automaton = parse_hoa(completed.stdout, complete=True)
    except HOAFormatError as err:
        raise FallbackError(f"unusable HOA from external translator: {err}", stderr=completed.stderr) from err

    extra = set(automaton.ap) - atoms(formula)
    if extra:
        logger.warning("external automaton uses propositions outside the formula: %s", ", ".join(sorted(extra)))
    logger.info("external automaton for %s: %d states", formula, automaton.num_states)
    return automaton
