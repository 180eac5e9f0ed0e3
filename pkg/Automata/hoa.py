"""TelaGen - HOA v1 serialization and parsing.

Only deterministic automata with transition-based marks are produced.
The parser also ingests implicit labels and state-based marks, and can
complete partial automata with a rejecting sink.
"""

from __future__ import annotations

import logging
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
import pyparsing as pp

from . import Tela, mask_marks
from .acceptance import AcceptanceFormula, acc_and, acc_false, acc_or, acc_true, fin, inf

__all__ = [
    "HOAFormatError",
    "NondeterminismError",
    "IncompleteAutomatonError",
    "serialize_hoa",
    "parse_hoa",
    "parse_acceptance",
    "cube_cover",
]

logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()

TOOL_NAME = "tela_gen"


class HOAFormatError(ValueError):
    """Malformed or unsupported HOA input."""


class NondeterminismError(HOAFormatError):
    """Two different transitions leave one state on the same letter."""


class IncompleteAutomatonError(HOAFormatError):
    """Some state has no transition for some letter."""


# ---------------------------------------------------------------------------
#  Serialization
# ---------------------------------------------------------------------------

Cube = Tuple[Tuple[int, bool], ...]


def cube_cover(letters: FrozenSet[int], variables: Sequence[int]) -> List[Cube]:
    """Cubes whose union is exactly ``letters`` (Shannon split, lowest variable first)."""
    if not letters:
        return []
    if len(letters) == 1 << len(variables):
        return [()]
    v, rest = variables[0], variables[1:]
    bit = 1 << v
    high = frozenset(letter & ~bit for letter in letters if letter & bit)
    low = frozenset(letter for letter in letters if not letter & bit)
    if high == low:
        return cube_cover(low, rest)
    both = high & low
    cubes = list(cube_cover(both, rest))
    cubes += [((v, True),) + c for c in cube_cover(high - both, rest)]
    cubes += [((v, False),) + c for c in cube_cover(low - both, rest)]
    return cubes


def _label(letters: FrozenSet[int], ap_count: int) -> str:
    cubes = cube_cover(letters, tuple(range(ap_count)))
    texts = []
    for cube in cubes:
        if not cube:
            texts.append("t")
        else:
            texts.append("&".join(str(v) if positive else f"!{v}" for v, positive in cube))
    return " | ".join(texts)


def _acc_name(acceptance: AcceptanceFormula, mark_count: int) -> Optional[str]:
    text = acceptance.to_hoa()
    named = {(0, "t"): "all", (0, "f"): "none", (1, "Inf(0)"): "Buchi", (1, "Fin(0)"): "co-Buchi"}
    return named.get((mark_count, text))


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def serialize_hoa(automaton: Tela, name: Optional[str] = None) -> str:
    automaton = automaton.canonical()
    lines = ["HOA: v1", f"tool: {_quote(TOOL_NAME)}"]
    if name is not None:
        lines.append(f"name: {_quote(name)}")
    lines.append(f"States: {automaton.num_states}")
    lines.append(f"Start: {automaton.initial}")
    lines.append(" ".join([f"AP: {len(automaton.ap)}"] + [_quote(p) for p in automaton.ap]))
    acc_name = _acc_name(automaton.acceptance, automaton.mark_count)
    if acc_name is not None:
        lines.append(f"acc-name: {acc_name}")
    lines.append(f"Acceptance: {automaton.mark_count} {automaton.acceptance.to_hoa()}")
    lines.append("properties: trans-labels explicit-labels trans-acc deterministic complete")
    lines.append("--BODY--")
    for q in range(automaton.num_states):
        lines.append(f"State: {q}")
        groups: Dict[Tuple[int, int], List[int]] = {}
        for letter in range(automaton.num_letters):
            key = (int(automaton.successors[q, letter]), int(automaton.marks[q, letter]))
            groups.setdefault(key, []).append(letter)
        for (target, marks), letters in groups.items():
            line = f"[{_label(frozenset(letters), len(automaton.ap))}] {target}"
            if marks:
                line += " {" + " ".join(str(m) for m in mask_marks(marks)) + "}"
            lines.append(line)
    lines.append("--END--")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
#  Parsing
# ---------------------------------------------------------------------------

def _integer() -> pp.ParserElement:
    return pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))


def _acceptance_grammar() -> pp.ParserElement:
    number = _integer()
    lpar, rpar = pp.Suppress("("), pp.Suppress(")")
    leaf = (
        (pp.Keyword("Fin") + lpar + number + rpar).set_parse_action(lambda t: fin(t[1]))
        | (pp.Keyword("Inf") + lpar + number + rpar).set_parse_action(lambda t: inf(t[1]))
        | pp.Keyword("t").set_parse_action(lambda: acc_true())
        | pp.Keyword("f").set_parse_action(lambda: acc_false())
    )
    return pp.infix_notation(
        leaf,
        [
            (pp.Literal("&"), 2, pp.OpAssoc.LEFT, lambda t: acc_and(*t[0][::2])),
            (pp.Literal("|"), 2, pp.OpAssoc.LEFT, lambda t: acc_or(*t[0][::2])),
        ],
    )


def _negate_label(tokens):
    group = tokens[0]
    operand = group[-1]
    for _ in group[:-1]:
        operand = (lambda f: lambda letters: ~f(letters))(operand)
    return operand


def _junction_label(reduce):
    def action(tokens):
        parts = list(tokens[0][::2])
        return lambda letters: reduce([p(letters) for p in parts])

    return action


def _label_grammar() -> pp.ParserElement:
    def variable(tokens):
        index = int(tokens[0])
        return lambda letters: (letters >> index) & 1 == 1

    leaf = (
        pp.Word(pp.nums).set_parse_action(variable)
        | pp.Keyword("t").set_parse_action(lambda: lambda letters: np.ones(letters.shape, dtype=bool))
        | pp.Keyword("f").set_parse_action(lambda: lambda letters: np.zeros(letters.shape, dtype=bool))
    )
    return pp.infix_notation(
        leaf,
        [
            (pp.Literal("!"), 1, pp.OpAssoc.RIGHT, _negate_label),
            (pp.Literal("&"), 2, pp.OpAssoc.LEFT, _junction_label(np.logical_and.reduce)),
            (pp.Literal("|"), 2, pp.OpAssoc.LEFT, _junction_label(np.logical_or.reduce)),
        ],
    )


def _body_grammar() -> pp.ParserElement:
    number = _integer()
    label = (pp.Suppress("[") + _label_grammar() + pp.Suppress("]")).add_parse_action(lambda t: t[0])
    marks = pp.Group(pp.Suppress("{") + pp.ZeroOrMore(_integer()) + pp.Suppress("}"))
    edge = pp.Group(pp.Optional(label("label")) + number("target") + pp.Optional(marks("marks")))
    state = pp.Group(
        pp.Suppress(pp.Literal("State:"))
        + pp.Optional(label("state_label"))
        + number("index")
        + pp.Optional(pp.QuotedString('"', esc_char="\\"))("name")
        + pp.Optional(marks("marks"))
        + pp.Group(pp.ZeroOrMore(edge))("edges")
    )
    return pp.ZeroOrMore(state)


_ACCEPTANCE = _acceptance_grammar()
_AP = _integer() + pp.ZeroOrMore(pp.QuotedString('"', esc_char="\\"))
_BODY = _body_grammar()


def parse_acceptance(text: str) -> AcceptanceFormula:
    try:
        return _ACCEPTANCE.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as err:
        raise HOAFormatError(f"unknown acceptance primitive in {text!r}") from err


def _mask(values) -> int:
    mask = 0
    for m in values or ():
        mask |= 1 << int(m)
    return mask


def _parse_header(text: str) -> Dict[str, List[str]]:
    items: Dict[str, List[str]] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise HOAFormatError(f"malformed header line: {line!r}")
        items.setdefault(key.strip(), []).append(value.strip())
    return items


def parse_hoa(text: str, complete: bool = False) -> Tela:
    """Parse one deterministic HOA automaton into a Tela.

    With ``complete`` missing transitions go to a fresh sink whose
    self-loop marks falsify the acceptance condition.
    """
    text = pp.c_style_comment.suppress().transform_string(text)
    head, sep, rest = text.partition("--BODY--")
    if not sep:
        raise HOAFormatError("missing --BODY--")
    body_text, sep, _ = rest.partition("--END--")
    if not sep:
        raise HOAFormatError("missing --END--")

    header = _parse_header(head)
    if header.get("HOA") != ["v1"]:
        raise HOAFormatError("expected 'HOA: v1' header")
    if "Acceptance" not in header:
        raise HOAFormatError("missing Acceptance header")
    if "Alias" in header:
        raise HOAFormatError("label aliases are not supported")

    starts = header.get("Start", [])
    if not starts:
        raise HOAFormatError("missing Start header")
    if len(starts) > 1:
        raise NondeterminismError(f"expected exactly one initial state, got {len(starts)}")
    if "&" in starts[0]:
        raise HOAFormatError("alternating initial states are not supported")
    try:
        initial = int(starts[0])
    except ValueError as err:
        raise HOAFormatError(f"malformed Start header: {starts[0]!r}") from err

    ap: Tuple[str, ...] = ()
    if "AP" in header:
        try:
            ap_tokens = _AP.parse_string(header["AP"][0], parse_all=True)
        except pp.ParseBaseException as err:
            raise HOAFormatError(f"malformed AP header: {header['AP'][0]!r}") from err
        ap = tuple(ap_tokens[1:])
        if len(ap) != ap_tokens[0]:
            raise HOAFormatError(f"AP header announces {ap_tokens[0]} propositions, lists {len(ap)}")

    count_text, _, condition = header["Acceptance"][0].partition(" ")
    try:
        mark_count = int(count_text)
    except ValueError as err:
        raise HOAFormatError(f"malformed Acceptance header: {header['Acceptance'][0]!r}") from err
    acceptance = parse_acceptance(condition.strip())

    try:
        states = _BODY.parse_string(body_text, parse_all=True)
    except pp.ParseBaseException as err:
        raise HOAFormatError(f"malformed body: {err.msg} (line {err.lineno})") from err

    indices = [s["index"] for s in states] + [e["target"] for s in states for e in s["edges"]] + [initial]
    declared = int(header["States"][0]) if "States" in header else max(indices) + 1
    if max(indices) >= declared:
        raise HOAFormatError(f"state index {max(indices)} exceeds the declared {declared} states")

    letters = np.arange(1 << len(ap), dtype=np.int64)
    successors = np.full((declared, letters.size), -1, dtype=np.int64)
    marks = np.zeros((declared, letters.size), dtype=np.int64)
    for state in states:
        q = state["index"]
        if "state_label" in state:
            raise HOAFormatError(f"state {q}: state labels are not supported")
        state_marks = _mask(state.get("marks"))
        edges = list(state["edges"])
        labelled = ["label" in e for e in edges]
        if any(labelled) and not all(labelled):
            raise HOAFormatError(f"state {q} mixes labelled and implicit edges")
        if edges and not labelled[0] and len(edges) != letters.size:
            raise HOAFormatError(f"state {q} has {len(edges)} implicit edges, expected {letters.size}")
        for position, e in enumerate(edges):
            if "label" in e:
                selected = np.asarray(e["label"](letters), dtype=bool)
            else:
                selected = letters == position
            target, mask = e["target"], _mask(e.get("marks")) | state_marks
            if mask >= 1 << mark_count:
                raise HOAFormatError(f"state {q}: mark outside the {mark_count} declared sets")
            taken = successors[q] >= 0
            clash = selected & taken & ((successors[q] != target) | (marks[q] != mask))
            if clash.any():
                letter = int(np.flatnonzero(clash)[0])
                raise NondeterminismError(f"state {q} has two transitions on letter {letter}")
            successors[q, selected] = target
            marks[q, selected] = mask

    missing = successors < 0
    if missing.any():
        if not complete:
            q, letter = (int(v) for v in np.argwhere(missing)[0])
            raise IncompleteAutomatonError(f"state {q} has no transition on letter {letter}")
        falsifying = acceptance.witness(False)
        if falsifying is None:
            acceptance = acc_and(acceptance, fin(mark_count))
            falsifying = 1 << mark_count
            mark_count += 1
        sink = declared
        successors[missing] = sink
        successors = np.vstack([successors, np.full((1, letters.size), sink, dtype=np.int64)])
        marks = np.vstack([marks, np.full((1, letters.size), falsifying, dtype=np.int64)])
        logger.info("completed automaton with a rejecting sink (%d missing transitions)", int(missing.sum()))

    metadata = {}
    for key in ("name", "tool"):
        if key in header:
            metadata[key] = header[key][0]
    automaton = Tela(
        ap=ap,
        successors=successors,
        marks=marks,
        initial=initial,
        acceptance=acceptance,
        mark_count=mark_count,
        metadata=metadata,
    )
    return automaton.canonical()
