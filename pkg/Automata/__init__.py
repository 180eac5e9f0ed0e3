"""TELA data model: deterministic, complete transition-based Emerson-Lei automata.

Transitions are stored per letter: ``successors[q, letter]`` is the target
state and ``marks[q, letter]`` the bitmask of acceptance marks, where bit
``i`` of ``letter`` is the truth of ``ap[i]``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx
import numpy as np

from .acceptance import AcceptanceFormula

__all__ = [
    "MAX_MARKS",
    "TelaError",
    "Tela",
    "Lasso",
    "letter_of",
    "letter_names",
    "mask_marks",
    "projection_table",
    "accepts_lasso",
    "complement",
    "acceptance_size",
    "state_count",
]

logger = logging.getLogger(__name__)

MAX_MARKS = 63


class TelaError(ValueError):
    """Violation of a Tela invariant."""


def letter_of(names: Iterable[str], ap: Sequence[str]) -> int:
    """Bit encoding of a set of proposition names; names outside ``ap`` are ignored."""
    present = set(names)
    return sum(1 << i for i, p in enumerate(ap) if p in present)


def letter_names(letter: int, ap: Sequence[str]) -> FrozenSet[str]:
    return frozenset(p for i, p in enumerate(ap) if letter >> i & 1)


def mask_marks(mask: int) -> Tuple[int, ...]:
    return tuple(i for i in range(MAX_MARKS + 1) if mask >> i & 1)


def projection_table(source_ap: Sequence[str], target_ap: Sequence[str]) -> np.ndarray:
    """For every letter over ``source_ap`` the letter over ``target_ap`` it projects to."""
    letters = np.arange(1 << len(source_ap), dtype=np.int64)
    projected = np.zeros(letters.shape, dtype=np.int64)
    position = {p: i for i, p in enumerate(source_ap)}
    for j, p in enumerate(target_ap):
        if p in position:
            projected |= ((letters >> position[p]) & 1) << j
    return projected


@dataclass(frozen=True, eq=False)
class Tela:
    ap: Tuple[str, ...]
    successors: np.ndarray
    marks: np.ndarray
    initial: int
    acceptance: AcceptanceFormula
    mark_count: int
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "ap", tuple(self.ap))
        successors = np.array(self.successors, dtype=np.int64)
        marks = np.array(self.marks, dtype=np.int64)
        letters = 1 << len(self.ap)
        if successors.ndim != 2 or successors.shape[1] != letters:
            raise TelaError(f"successor table must have shape (states, {letters}), got {successors.shape}")
        if marks.shape != successors.shape:
            raise TelaError(f"mark table shape {marks.shape} differs from {successors.shape}")
        states = successors.shape[0]
        if states == 0:
            raise TelaError("automaton without states")
        if successors.min() < 0 or successors.max() >= states:
            raise TelaError("transition target out of range")
        if not 0 <= self.initial < states:
            raise TelaError(f"initial state {self.initial} out of range")
        if not 0 <= self.mark_count <= MAX_MARKS:
            raise TelaError(f"{self.mark_count} acceptance marks exceed the budget of {MAX_MARKS}")
        if int(marks.min()) < 0 or int(marks.max()) >= (1 << self.mark_count):
            raise TelaError("transition mark index not below mark_count")
        if any(m >= self.mark_count for m in self.acceptance.marks()):
            raise TelaError(f"acceptance {self.acceptance} references a mark >= {self.mark_count}")
        successors.setflags(write=False)
        marks.setflags(write=False)
        object.__setattr__(self, "successors", successors)
        object.__setattr__(self, "marks", marks)

    @property
    def num_states(self) -> int:
        return int(self.successors.shape[0])

    @property
    def num_letters(self) -> int:
        return int(self.successors.shape[1])

    def letter_of(self, names: Iterable[str]) -> int:
        return letter_of(names, self.ap)

    def step(self, state: int, letter: int) -> Tuple[int, int]:
        return int(self.successors[state, letter]), int(self.marks[state, letter])

    def graph(self) -> nx.DiGraph:
        """State graph with edges inserted in ascending letter order."""
        g = nx.DiGraph()
        g.add_nodes_from(range(self.num_states))
        for q in range(self.num_states):
            for target in self.successors[q]:
                g.add_edge(q, int(target))
        return g

    def reachable(self) -> FrozenSet[int]:
        return frozenset(nx.descendants(self.graph(), self.initial) | {self.initial})

    def restrict_to(self, order: Sequence[int]) -> "Tela":
        """Keep the states in ``order`` (closed under successors), renumbered by position."""
        index = np.full(self.num_states, -1, dtype=np.int64)
        index[list(order)] = np.arange(len(order))
        successors = index[self.successors[list(order)]]
        if (successors < 0).any():
            raise TelaError("restriction is not closed under successors")
        metadata = dict(self.metadata)
        labels = metadata.get("state_labels")
        if labels is not None:
            metadata["state_labels"] = [labels[q] for q in order]
        states = metadata.get("product_states")
        if states is not None:
            metadata["product_states"] = [states[q] for q in order]
        for key in ("accepting_sink", "rejecting_sink"):
            if metadata.get(key) is not None:
                position = int(index[metadata[key]])
                metadata[key] = position if position >= 0 else None
        return replace(
            self,
            successors=successors,
            marks=self.marks[list(order)],
            initial=int(index[self.initial]),
            metadata=metadata,
        )

    def canonical(self) -> "Tela":
        """Reachable part, renumbered breadth-first from the initial state."""
        order = list(nx.bfs_tree(self.graph(), self.initial))
        if order == list(range(self.num_states)):
            return self
        return self.restrict_to(order)

    def with_acceptance(self, acceptance: AcceptanceFormula, mark_count: int | None = None) -> "Tela":
        return replace(
            self,
            acceptance=acceptance,
            mark_count=self.mark_count if mark_count is None else mark_count,
        )


@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic word stem . loop^omega."""

    stem: Tuple[FrozenSet[str], ...]
    loop: Tuple[FrozenSet[str], ...]

    def __post_init__(self):
        if not self.loop:
            raise ValueError("lasso loop must be non-empty")
        object.__setattr__(self, "stem", tuple(frozenset(a) for a in self.stem))
        object.__setattr__(self, "loop", tuple(frozenset(a) for a in self.loop))

    def rotate(self) -> "Lasso":
        """Same word, with the first loop letter moved into the stem."""
        return Lasso(self.stem + self.loop[:1], self.loop[1:] + self.loop[:1])

    def letter(self, position: int) -> FrozenSet[str]:
        if position < len(self.stem):
            return self.stem[position]
        return self.loop[(position - len(self.stem)) % len(self.loop)]

    def __str__(self) -> str:
        def word(letters):
            return "".join("{" + ",".join(sorted(a)) + "}" for a in letters) or "ε"

        return f"u={word(self.stem)}; v={word(self.loop)}"


def accepts_lasso(automaton: Tela, word: Lasso) -> bool:
    q = automaton.initial
    for letter in word.stem:
        q = int(automaton.successors[q, automaton.letter_of(letter)])
    loop = [automaton.letter_of(letter) for letter in word.loop]
    seen: Dict[Tuple[int, int], int] = {}
    trace: List[int] = []
    position = 0
    while (q, position) not in seen:
        seen[(q, position)] = len(trace)
        letter = loop[position]
        trace.append(int(automaton.marks[q, letter]))
        q = int(automaton.successors[q, letter])
        position = (position + 1) % len(loop)
    recurring = 0
    for mask in trace[seen[(q, position)]:]:
        recurring |= mask
    return automaton.acceptance.evaluate(recurring)


def complement(automaton: Tela) -> Tela:
    return automaton.with_acceptance(automaton.acceptance.dual())


def acceptance_size(automaton: Tela) -> int:
    return automaton.acceptance.size()


def state_count(automaton: Tela) -> int:
    return automaton.num_states
