"""TelaGen - derivative automata for the cosafety and safety fragments."""

from __future__ import annotations

import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from Automata import Tela, letter_names, projection_table
from Automata.acceptance import fin, inf
from Logic import FALSE, TRUE, Formula, Kind, atoms, conj, disj
from Logic.fragments import FragmentError, is_cosafety, is_safety
from Logic.rewrite import entails, simplify_subsumption
from Logic.skeleton import class_key

from .options import StateBoundExceeded

__all__ = [
    "af_step",
    "entails",
    "simplify_subsumption",
    "translate_cosafety",
    "translate_safety",
]

logger = logging.getLogger(__name__)

_TRUE_KEY = class_key(TRUE)
_FALSE_KEY = class_key(FALSE)


def _af(phi: Formula, letter: FrozenSet[str], cache: Dict[Formula, Formula]) -> Formula:
    kind = phi.kind
    if kind in (Kind.TT, Kind.FF):
        return phi
    if kind is Kind.ATOM:
        return TRUE if phi.name in letter else FALSE
    if kind is Kind.NATOM:
        return FALSE if phi.name in letter else TRUE
    cached = cache.get(phi)
    if cached is not None:
        return cached
    if kind is Kind.AND:
        result = conj(*(_af(c, letter, cache) for c in phi.children))
    elif kind is Kind.OR:
        result = disj(*(_af(c, letter, cache) for c in phi.children))
    elif kind is Kind.X:
        result = phi.child
    elif kind is Kind.U:
        result = disj(_af(phi.right, letter, cache), conj(_af(phi.left, letter, cache), phi))
    else:
        result = conj(_af(phi.right, letter, cache), disj(_af(phi.left, letter, cache), phi))
    cache[phi] = result
    return result


def af_step(phi: Formula, letter: Iterable[str]) -> Formula:
    """Residual obligation of ``phi`` after reading ``letter``."""
    return simplify_subsumption(_af(phi, frozenset(letter), {}))


def _derivative_automaton(phi: Formula, cosafety: bool, state_bound: int) -> Tela:
    ap = tuple(sorted(atoms(phi)))
    letters = 1 << len(ap)
    index: Dict[Tuple, int] = {}
    formulas: List[Formula] = []
    accepting_sink: Optional[int] = None
    rejecting_sink: Optional[int] = None

    def intern(f: Formula) -> int:
        nonlocal accepting_sink, rejecting_sink
        key = class_key(f)
        found = index.get(key)
        if found is not None:
            return found
        if len(formulas) >= state_bound:
            raise StateBoundExceeded(state_bound, f"derivative automaton of {phi}")
        found = len(formulas)
        index[key] = found
        if key == _TRUE_KEY:
            formulas.append(TRUE)
            accepting_sink = found
        elif key == _FALSE_KEY:
            formulas.append(FALSE)
            rejecting_sink = found
        else:
            formulas.append(f)
        return found

    intern(simplify_subsumption(phi))
    successors, marks = [], []
    sink_mark = np.ones(letters, dtype=np.int64)
    no_marks = np.zeros(letters, dtype=np.int64)
    position = 0
    while position < len(formulas):
        f = formulas[position]
        if f.is_constant:
            successors.append(np.full(letters, position, dtype=np.int64))
            marked = (f == TRUE) if cosafety else (f == FALSE)
            marks.append(sink_mark if marked else no_marks)
        else:
            local_ap = tuple(sorted(atoms(f)))
            targets = np.array(
                [intern(af_step(f, letter_names(v, local_ap))) for v in range(1 << len(local_ap))],
                dtype=np.int64,
            )
            successors.append(targets[projection_table(ap, local_ap)])
            marks.append(no_marks)
        position += 1

    labels = []
    for i, f in enumerate(formulas):
        if i == accepting_sink:
            labels.append("q_acc")
        elif i == rejecting_sink:
            labels.append("q_rej")
        else:
            labels.append(str(f))
    logger.info("%s automaton for %s: %d states", "cosafety" if cosafety else "safety", phi, len(formulas))
    return Tela(
        ap=ap,
        successors=np.vstack(successors),
        marks=np.vstack(marks),
        initial=0,
        acceptance=inf(0) if cosafety else fin(0),
        mark_count=1,
        metadata={
            "state_labels": labels,
            "formulas": list(formulas),
            "accepting_sink": accepting_sink,
            "rejecting_sink": rejecting_sink,
        },
    )


def translate_cosafety(phi: Formula, state_bound: int = 100000) -> Tela:
    """Derivative automaton of an LTL(U,X) formula with an accepting trap."""
    if not is_cosafety(phi):
        raise FragmentError(f"not a cosafety formula: {phi}")
    return _derivative_automaton(phi, cosafety=True, state_bound=state_bound)


def translate_safety(phi: Formula, state_bound: int = 100000) -> Tela:
    """Derivative automaton of an LTL(R,X) formula with a rejecting trap."""
    if not is_safety(phi):
        raise FragmentError(f"not a safety formula: {phi}")
    return _derivative_automaton(phi, cosafety=False, state_bound=state_bound)
