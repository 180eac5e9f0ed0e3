"""TelaGen - LTL concrete syntax parser.

Grammar (tightest binding first): unary ``!``, ``X``, ``F``, ``G``; binary
``U``/``R``/``W`` (right-associative); ``&``; ``|``; ``->``/``<->``. Negations are
pushed to the atoms while parsing, so every result is in NNF. A run such
as ``GF`` or ``XXF`` in front of an operand reads as separate operators;
anywhere else it is an atom name.
"""

from __future__ import annotations

import logging
import sys
from typing import List

import pyparsing as pp

from . import (
    FALSE,
    TRUE,
    Formula,
    always,
    atom,
    conj,
    disj,
    eventually,
    iff,
    implies,
    negate,
    nxt,
    release,
    until,
    weak_until,
)

__all__ = ["LTLSyntaxError", "parse"]

logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()
# infix_notation recurses several frames per nesting level
sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


class LTLSyntaxError(ValueError):
    """Raised for malformed formula text; carries 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


_KEYWORDS = ("X", "F", "G", "U", "R", "W", "true", "false", "tt", "ff")


def _unary(tokens) -> Formula:
    group = tokens[0]
    operand = group[-1]
    for op in reversed(group[:-1]):
        if op == "!":
            operand = negate(operand)
        elif op == "X":
            operand = nxt(operand)
        elif op == "F":
            operand = eventually(operand)
        else:
            operand = always(operand)
    return operand


def _right_fold(items: List, combine) -> Formula:
    result = items[-1]
    for index in range(len(items) - 2, 0, -2):
        result = combine(items[index], items[index - 1], result)
    return result


_TEMPORAL_BINARY = {"U": until, "R": release, "W": weak_until}


def _temporal_binary(tokens) -> Formula:
    return _right_fold(
        list(tokens[0]),
        lambda op, left, right: _TEMPORAL_BINARY[op](left, right),
    )


def _and(tokens) -> Formula:
    return conj(*tokens[0][::2])


def _or(tokens) -> Formula:
    return disj(*tokens[0][::2])


def _implication(tokens) -> Formula:
    return _right_fold(
        list(tokens[0]),
        lambda op, left, right: implies(left, right) if op == "->" else iff(left, right),
    )


def _build_grammar() -> pp.ParserElement:
    reserved = pp.MatchFirst([pp.Keyword(k) for k in _KEYWORDS] + [pp.Keyword("1"), pp.Keyword("0")])
    true_const = (pp.Keyword("true") | pp.Keyword("tt") | pp.Keyword("1")).set_parse_action(lambda: TRUE)
    false_const = (pp.Keyword("false") | pp.Keyword("ff") | pp.Keyword("0")).set_parse_action(lambda: FALSE)
    identifier = (~reserved + pp.Regex(r"[a-zA-Z_][a-zA-Z0-9_]*")).set_parse_action(lambda t: atom(t[0]))
    operand = true_const | false_const | identifier
    operand.set_name("atom or constant")

    # "GF a", "FG(a)": a run of unary letters directly in front of an operand
    operator_run = pp.Regex(r"[FGX]{2,}\b(?=\s*(?:[(!]|(?!(?:U|R|W)\b)\w))").set_parse_action(lambda t: list(t[0]))
    unary_op = pp.Literal("!") | operator_run | pp.Keyword("X") | pp.Keyword("F") | pp.Keyword("G")
    temporal_op = pp.Keyword("U") | pp.Keyword("R") | pp.Keyword("W")
    implication_op = pp.Literal("<->") | pp.Literal("->")

    return pp.infix_notation(
        operand,
        [
            (unary_op, 1, pp.OpAssoc.RIGHT, _unary),
            (temporal_op, 2, pp.OpAssoc.RIGHT, _temporal_binary),
            (pp.Literal("&"), 2, pp.OpAssoc.LEFT, _and),
            (pp.Literal("|"), 2, pp.OpAssoc.LEFT, _or),
            (implication_op, 2, pp.OpAssoc.RIGHT, _implication),
        ],
    )


_GRAMMAR = _build_grammar()


def parse(text: str) -> Formula:
    """Parse formula text into its canonical NNF Formula."""
    try:
        result = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as err:
        raise LTLSyntaxError(f"cannot parse formula: {err.msg}", err.lineno, err.col) from err
    formula = result[0]
    logger.debug("parsed %r as %s", text, formula)
    return formula
