"""TelaGen oracle: LTL semantics on lassos and bounded equivalence checks.

Lassos of one shape (stem length, loop length) are evaluated together as a
numpy letter matrix; formulas are evaluated bottom-up over all positions and
automata are simulated column by column.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from Automata import Lasso, Tela, letter_names, letter_of, projection_table
from Logic import Formula, Kind, atoms

__all__ = [
    "EXHAUSTIVE_AP_LIMIT",
    "LassoBatch",
    "enumerate_lassos",
    "sample_lassos",
    "formula_verdicts",
    "automaton_verdicts",
    "ltl_sat_lasso",
    "find_disagreement",
    "equiv_on_lassos",
]

logger = logging.getLogger(__name__)

EXHAUSTIVE_AP_LIMIT = 3

Subject = Union[Formula, Tela]


@dataclass(frozen=True)
class LassoBatch:
    """Lassos sharing one shape; row ``i`` of ``letters`` is stem + loop."""

    aps: Tuple[str, ...]
    stem_length: int
    letters: np.ndarray

    @classmethod
    def exhaustive(cls, aps: Sequence[str], stem_length: int, loop_length: int) -> "LassoBatch":
        alphabet = range(1 << len(aps))
        rows = list(itertools.product(alphabet, repeat=stem_length + loop_length))
        letters = np.array(rows, dtype=np.int64).reshape(len(rows), stem_length + loop_length)
        return cls(tuple(aps), stem_length, letters)

    @classmethod
    def from_lassos(cls, aps: Sequence[str], lassos: Sequence[Lasso]) -> "LassoBatch":
        shapes = {(len(w.stem), len(w.loop)) for w in lassos}
        if len(shapes) != 1:
            raise ValueError(f"a batch needs lassos of one shape, got {sorted(shapes)}")
        stem_length, loop_length = shapes.pop()
        letters = np.array(
            [[letter_of(a, aps) for a in w.stem + w.loop] for w in lassos], dtype=np.int64
        ).reshape(len(lassos), stem_length + loop_length)
        return cls(tuple(aps), stem_length, letters)

    @property
    def size(self) -> int:
        return int(self.letters.shape[0])

    @property
    def length(self) -> int:
        return int(self.letters.shape[1])

    @property
    def loop_length(self) -> int:
        return self.length - self.stem_length

    @property
    def successor(self) -> np.ndarray:
        """Position after each position, wrapping from the loop end to the loop start."""
        following = np.arange(1, self.length + 1, dtype=np.int64)
        following[-1] = self.stem_length
        return following

    def lasso(self, i: int) -> Lasso:
        names = [letter_names(int(v), self.aps) for v in self.letters[i]]
        return Lasso(tuple(names[: self.stem_length]), tuple(names[self.stem_length:]))


def _shapes(stem_max: int, loop_max: int) -> Iterator[Tuple[int, int]]:
    if stem_max < 0 or loop_max < 1:
        raise ValueError(f"bad lasso bounds: stem_max={stem_max}, loop_max={loop_max}")
    for stem_length in range(stem_max + 1):
        for loop_length in range(1, loop_max + 1):
            yield stem_length, loop_length


def enumerate_lassos(aps: Sequence[str], stem_max: int, loop_max: int) -> Iterator[Lasso]:
    """All lassos within bounds: by stem length, then loop length, then letters ascending."""
    for stem_length, loop_length in _shapes(stem_max, loop_max):
        batch = LassoBatch.exhaustive(aps, stem_length, loop_length)
        for i in range(batch.size):
            yield batch.lasso(i)


def _sampled_batches(
    aps: Sequence[str], stem_max: int, loop_max: int, samples: int, seed: int
) -> List[LassoBatch]:
    rng = np.random.default_rng(seed)
    shapes = list(_shapes(stem_max, loop_max))
    chosen = rng.integers(0, len(shapes), size=samples)
    batches = []
    for k, (stem_length, loop_length) in enumerate(shapes):
        count = int(np.count_nonzero(chosen == k))
        if count:
            letters = rng.integers(0, 1 << len(aps), size=(count, stem_length + loop_length), dtype=np.int64)
            batches.append(LassoBatch(tuple(aps), stem_length, letters))
    return batches


def sample_lassos(
    aps: Sequence[str], stem_max: int, loop_max: int, samples: int = 10000, seed: int = 0
) -> List[Lasso]:
    return [b.lasso(i) for b in _sampled_batches(aps, stem_max, loop_max, samples, seed) for i in range(b.size)]


def formula_verdicts(phi: Formula, batch: LassoBatch) -> np.ndarray:
    """Truth of ``phi`` at position 0 of every lasso in the batch."""
    position = {p: i for i, p in enumerate(batch.aps)}
    following = batch.successor
    shape = batch.letters.shape
    sweeps = batch.length + 1
    values: Dict[Formula, np.ndarray] = {}

    def value(node: Formula) -> np.ndarray:
        found = values.get(node)
        if found is not None:
            return found
        kind = node.kind
        if kind is Kind.TT:
            result = np.ones(shape, dtype=bool)
        elif kind is Kind.FF:
            result = np.zeros(shape, dtype=bool)
        elif node.is_literal:
            if node.name in position:
                result = (batch.letters >> position[node.name]) & 1 == 1
            else:
                result = np.zeros(shape, dtype=bool)
            if kind is Kind.NATOM:
                result = ~result
        elif kind is Kind.AND:
            result = np.logical_and.reduce([value(c) for c in node.children])
        elif kind is Kind.OR:
            result = np.logical_or.reduce([value(c) for c in node.children])
        elif kind is Kind.X:
            result = value(node.child)[:, following]
        elif kind is Kind.U:
            left, right = value(node.left), value(node.right)
            result = right.copy()
            for _ in range(sweeps):
                result = right | (left & result[:, following])
        else:
            left, right = value(node.left), value(node.right)
            result = np.ones(shape, dtype=bool)
            for _ in range(sweeps):
                result = right & (left | result[:, following])
        values[node] = result
        return result

    return value(phi)[:, 0].copy()


def automaton_verdicts(automaton: Tela, batch: LassoBatch) -> np.ndarray:
    """Acceptance of every lasso in the batch by the deterministic automaton."""
    letters = projection_table(batch.aps, automaton.ap)[batch.letters]
    successors, marks = automaton.successors, automaton.marks
    state = np.full(batch.size, automaton.initial, dtype=np.int64)
    for i in range(batch.stem_length):
        state = successors[state, letters[:, i]]
    loop = range(batch.stem_length, batch.length)
    # after |Q| rounds every run sits on its cycle of loop-start states
    for _ in range(automaton.num_states):
        for i in loop:
            state = successors[state, letters[:, i]]
    recurring = np.zeros(batch.size, dtype=np.int64)
    for _ in range(automaton.num_states):
        for i in loop:
            recurring |= marks[state, letters[:, i]]
            state = successors[state, letters[:, i]]
    return automaton.acceptance.evaluate_array(recurring)


def ltl_sat_lasso(phi: Formula, word: Lasso) -> bool:
    aps = tuple(sorted(atoms(phi)))
    return bool(formula_verdicts(phi, LassoBatch.from_lassos(aps, [word]))[0])


def _verdicts(subject: Subject) -> Callable[[LassoBatch], np.ndarray]:
    if isinstance(subject, Formula):
        return lambda batch: formula_verdicts(subject, batch)
    return lambda batch: automaton_verdicts(subject, batch)


def _aps(subject: Subject) -> set:
    return set(atoms(subject)) if isinstance(subject, Formula) else set(subject.ap)


def find_disagreement(
    left: Subject,
    right: Subject,
    aps: Optional[Sequence[str]] = None,
    stem_max: int = 2,
    loop_max: int = 3,
    samples: int = 10000,
    seed: int = 0,
) -> Optional[Lasso]:
    """First bounded lasso on which two formulas/automata disagree, or None.

    Up to three propositions every lasso within bounds is tried; beyond that
    ``samples`` lassos are drawn with the fixed ``seed``.
    """
    if aps is None:
        aps = sorted(_aps(left) | _aps(right))
    aps = tuple(aps)
    if len(aps) <= EXHAUSTIVE_AP_LIMIT:
        batches = (LassoBatch.exhaustive(aps, s, l) for s, l in _shapes(stem_max, loop_max))
    else:
        logger.info("%d propositions: sampling %d lassos (seed %d)", len(aps), samples, seed)
        batches = iter(_sampled_batches(aps, stem_max, loop_max, samples, seed))
    judge_left, judge_right = _verdicts(left), _verdicts(right)
    checked = 0
    for batch in batches:
        differ = np.flatnonzero(judge_left(batch) != judge_right(batch))
        if differ.size:
            word = batch.lasso(int(differ[0]))
            logger.info("disagreement after %d lassos: %s", checked + int(differ[0]) + 1, word)
            return word
        checked += batch.size
    logger.debug("no disagreement on %d lassos", checked)
    return None


def equiv_on_lassos(
    phi: Formula,
    automaton: Tela,
    stem_max: int = 2,
    loop_max: int = 3,
    samples: int = 10000,
    seed: int = 0,
) -> Optional[Lasso]:
    """Counterexample lasso where ``automaton`` and ``phi`` disagree, or None."""
    return find_disagreement(phi, automaton, None, stem_max, loop_max, samples, seed)
