"""TelaGen - buffer automata for GF psi and FG psi with psi in LTL(X).

A state is the window of the last n letters, each masked by the relevant
history of psi; whether psi holds is decided on every step by evaluating it
on the window, the current letter and an empty suffix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Sequence, Tuple

import numpy as np

from Automata import Tela, letter_names
from Automata.acceptance import AcceptanceFormula, fin, inf
from Logic import Formula, Kind, atoms
from Logic.fragments import FragmentError, in_ltl_x

from .options import StateBoundExceeded

__all__ = [
    "Mask",
    "relevant_history",
    "mask_closure",
    "mask_drop",
    "mask_join",
    "word_meet",
    "holds_on_padded",
    "BufferSpec",
    "global_history_mask",
    "translate_gf",
    "translate_fg",
]

logger = logging.getLogger(__name__)

Mask = Tuple[FrozenSet[str], ...]

_EMPTY: FrozenSet[str] = frozenset()


def mask_join(left: Mask, right: Mask) -> Mask:
    length = max(len(left), len(right))
    pad_left = tuple(left) + (_EMPTY,) * (length - len(left))
    pad_right = tuple(right) + (_EMPTY,) * (length - len(right))
    return tuple(a | b for a, b in zip(pad_left, pad_right))


def mask_closure(mask: Mask) -> Mask:
    """Forward closure: every position keeps what any earlier position needs."""
    closed: List[FrozenSet[str]] = []
    seen: FrozenSet[str] = _EMPTY
    for letters in mask:
        seen = seen | letters
        closed.append(seen)
    return tuple(closed)


def mask_drop(mask: Mask) -> Mask:
    return tuple(mask[:-1])


def word_meet(word: Sequence[FrozenSet[str]], mask: Mask) -> Mask:
    """Pointwise intersection; positions past the word count as empty letters."""
    return tuple((word[i] if i < len(word) else _EMPTY) & mask[i] for i in range(len(mask)))


def relevant_history(phi: Formula) -> Mask:
    if not in_ltl_x(phi):
        raise FragmentError(f"relevant history needs an LTL(X) formula, got {phi}")
    kind = phi.kind
    if kind in (Kind.TT, Kind.FF):
        return ()
    if phi.is_literal:
        return (frozenset((phi.name,)),)
    if kind in (Kind.AND, Kind.OR):
        result: Mask = ()
        for child in phi.children:
            result = mask_join(result, relevant_history(child))
        return result
    return (_EMPTY,) + relevant_history(phi.child)


def holds_on_padded(phi: Formula, word: Sequence[FrozenSet[str]], position: int = 0) -> bool:
    """Truth of an LTL(X) formula on ``word`` followed by empty letters forever."""
    kind = phi.kind
    if kind is Kind.TT:
        return True
    if kind is Kind.FF:
        return False
    if phi.is_literal:
        present = position < len(word) and phi.name in word[position]
        return present if kind is Kind.ATOM else not present
    if kind is Kind.AND:
        return all(holds_on_padded(c, word, position) for c in phi.children)
    if kind is Kind.OR:
        return any(holds_on_padded(c, word, position) for c in phi.children)
    if kind is Kind.X:
        return holds_on_padded(phi.child, word, position + 1)
    raise FragmentError(f"padded evaluation needs an LTL(X) formula, got {phi}")


@dataclass(frozen=True)
class BufferSpec:
    """What a GF/FG component needs to know about its argument.

    Windows are tuples of letters over ``ap`` (oldest first), already
    masked by ``mask``.
    """

    kind: str
    argument: Formula
    ap: Tuple[str, ...]
    history: Mask
    mask: Tuple[int, ...]
    _verdicts: Dict[Tuple[int, ...], np.ndarray] = field(
        default_factory=dict, compare=False, repr=False, hash=False
    )

    @classmethod
    def for_formula(cls, kind: str, argument: Formula) -> "BufferSpec":
        if kind not in ("GF", "FG"):
            raise ValueError(f"Unknown fairness kind: {kind}")
        history = relevant_history(argument)
        ap = tuple(sorted(atoms(argument)))
        position = {p: i for i, p in enumerate(ap)}
        mask = tuple(
            sum(1 << position[p] for p in letters)
            for letters in mask_drop(mask_closure(history))
        )
        return cls(kind=kind, argument=argument, ap=ap, history=history, mask=mask)

    @property
    def length(self) -> int:
        return len(self.mask)

    @property
    def initial(self) -> Tuple[int, ...]:
        return (0,) * self.length

    def verdicts(self, window: Tuple[int, ...]) -> np.ndarray:
        """Truth of the argument on window + letter + empty suffix, for every letter."""
        cached = self._verdicts.get(window)
        if cached is None:
            prefix = [letter_names(w, self.ap) for w in window]
            cached = np.array(
                [holds_on_padded(self.argument, prefix + [letter_names(v, self.ap)])
                 for v in range(1 << len(self.ap))],
                dtype=bool,
            )
            self._verdicts[window] = cached
        return cached

    def marked(self, window: Tuple[int, ...]) -> np.ndarray:
        """Letters whose transition carries the component's mark."""
        verdicts = self.verdicts(window)
        return verdicts if self.kind == "GF" else ~verdicts

    def shift(self, window: Tuple[int, ...], letter: int) -> Tuple[int, ...]:
        if not self.length:
            return ()
        appended = window[1:] + (letter,)
        return tuple(w & m for w, m in zip(appended, self.mask))

    def acceptance(self, mark: int = 0) -> AcceptanceFormula:
        return inf(mark) if self.kind == "GF" else fin(mark)

    def lifted_mask(self, product_ap: Sequence[str]) -> Tuple[int, ...]:
        """The mask over product letters."""
        position = {p: i for i, p in enumerate(product_ap)}
        lifted = []
        for bits in self.mask:
            value = 0
            for i, p in enumerate(self.ap):
                if bits >> i & 1:
                    value |= 1 << position[p]
            lifted.append(value)
        return tuple(lifted)

    def window_from_product(self, product_window: Tuple[int, ...], projection: np.ndarray) -> Tuple[int, ...]:
        """This component's window read off the right end of a shared product window."""
        start = len(product_window) - self.length
        return tuple(
            int(projection[product_window[start + i]]) & self.mask[i] for i in range(self.length)
        )


def global_history_mask(specs: Sequence[BufferSpec], product_ap: Sequence[str]) -> Tuple[int, ...]:
    """Right-aligned union of the specs' masks over product letters, closed again."""
    length = max((s.length for s in specs), default=0)
    slots = [0] * length
    for spec in specs:
        lifted = spec.lifted_mask(product_ap)
        offset = length - spec.length
        for i, bits in enumerate(lifted):
            slots[offset + i] |= bits
    closed, seen = [], 0
    for bits in slots:
        seen |= bits
        closed.append(seen)
    return tuple(closed)


def _render_window(window: Tuple[int, ...], ap: Sequence[str]) -> str:
    if not window:
        return "ε"
    return "".join("{" + ",".join(sorted(letter_names(w, ap))) + "}" for w in window)


def _buffer_automaton(spec: BufferSpec, state_bound: int) -> Tela:
    letters = 1 << len(spec.ap)
    index = {spec.initial: 0}
    order = [spec.initial]
    successors, marks = [], []
    for window in order:
        row = np.empty(letters, dtype=np.int64)
        for v in range(letters):
            target = spec.shift(window, v)
            if target not in index:
                if len(order) >= state_bound:
                    raise StateBoundExceeded(state_bound, f"buffer automaton of {spec.kind} {spec.argument}")
                index[target] = len(order)
                order.append(target)
            row[v] = index[target]
        successors.append(row)
        marks.append(spec.marked(window).astype(np.int64))
    logger.info("buffer automaton for %s(%s): %d states", spec.kind, spec.argument, len(order))
    return Tela(
        ap=spec.ap,
        successors=np.vstack(successors),
        marks=np.vstack(marks),
        initial=0,
        acceptance=spec.acceptance(0),
        mark_count=1,
        metadata={
            "state_labels": [_render_window(w, spec.ap) for w in order],
            "windows": list(order),
            "buffer": spec,
        },
    )


def translate_gf(phi: Formula, state_bound: int = 100000) -> Tela:
    """Deterministic automaton for G F phi."""
    return _buffer_automaton(BufferSpec.for_formula("GF", phi), state_bound)


def translate_fg(phi: Formula, state_bound: int = 100000) -> Tela:
    """Deterministic automaton for F G phi."""
    return _buffer_automaton(BufferSpec.for_formula("FG", phi), state_bound)
