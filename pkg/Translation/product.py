"""TelaGen - product constructions over component automata.

Every skeleton atom of the formula (maximal temporal subformula or
top-level proposition) is translated on its own; this module composes the
component automata into one deterministic automaton whose acceptance
condition mirrors the Boolean skeleton of the formula.

The enhanced construction replaces accepting and rejecting traps by the
sentinels ``q_acc``/``q_rej``, silences components the formula no longer
depends on (prune) and keeps fairness components on hold (``q_hold``)
until their cosafety/safety neighbours have resolved (run). Fairness
components can read one shared, right-aligned history window instead of
keeping private buffers.
"""

from __future__ import annotations

import functools
import logging
from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from Automata import MAX_MARKS, Tela, TelaError, projection_table
from Automata.acceptance import (
    AccKind,
    AcceptanceFormula,
    acc_and,
    acc_false,
    acc_or,
    acc_true,
)
from Logic import FALSE, TRUE, Formula, Kind, atoms
from Logic.fragments import Fragment, is_cosafety, is_safety
from Logic.skeleton import SkeletonTooLarge, conjunct_sets, disjunct_sets, skeleton_atoms, substitute_map, support

from .fairness import BufferSpec
from .options import StateBoundExceeded

__all__ = [
    "Sentinel",
    "Entry",
    "ProductState",
    "Component",
    "assign_mark_offsets",
    "lift_acceptance",
    "prune_state",
    "run_state",
    "ProductConstruction",
    "standard_product",
    "enhanced_product",
    "piggyback",
    "check_sentinel_monotonicity",
]

logger = logging.getLogger(__name__)


class Sentinel(Enum):
    ACC = "q_acc"
    REJ = "q_rej"
    HOLD = "q_hold"

    def __str__(self) -> str:
        return self.value


Entry = Union[int, Sentinel]

_SENTINEL_CODE = {Sentinel.ACC: -1, Sentinel.REJ: -2, Sentinel.HOLD: -3}
_CODE_SENTINEL = {code: sentinel for sentinel, code in _SENTINEL_CODE.items()}


@dataclass(frozen=True)
class ProductState:
    entries: Tuple[Entry, ...]
    window: Tuple[int, ...] = ()

    def __getitem__(self, index: int) -> Entry:
        return self.entries[index]

    def updated(self, changes: Mapping[int, Entry]) -> "ProductState":
        if not changes:
            return self
        entries = list(self.entries)
        for index, entry in changes.items():
            entries[index] = entry
        return replace(self, entries=tuple(entries))


@dataclass
class Component:
    """One skeleton atom together with its translation.

    Exactly one of ``automaton`` and ``buffer`` is set; ``buffer`` marks a
    fairness component that reads the product's shared history window.
    """

    formula: Formula
    fragment: Fragment
    automaton: Optional[Tela] = None
    buffer: Optional[BufferSpec] = None
    external: bool = False
    mark_offset: int = 0

    def __post_init__(self):
        if (self.automaton is None) == (self.buffer is None):
            raise ValueError(f"component {self.formula} needs exactly one of automaton or buffer")

    @property
    def is_fairness(self) -> bool:
        return self.fragment.is_fairness

    @property
    def ap(self) -> Tuple[str, ...]:
        return self.buffer.ap if self.buffer is not None else self.automaton.ap

    @property
    def mark_count(self) -> int:
        return 1 if self.buffer is not None else self.automaton.mark_count

    @property
    def local_acceptance(self) -> AcceptanceFormula:
        return self.buffer.acceptance(0) if self.buffer is not None else self.automaton.acceptance

    @property
    def acceptance(self) -> AcceptanceFormula:
        return self.local_acceptance.shift(self.mark_offset)

    @property
    def accepting_sink(self) -> Optional[int]:
        if self.automaton is None or self.external:
            return None
        return self.automaton.metadata.get("accepting_sink")

    @property
    def rejecting_sink(self) -> Optional[int]:
        if self.automaton is None or self.external:
            return None
        return self.automaton.metadata.get("rejecting_sink")

    def resolve(self, state: int, sentinels: bool) -> Entry:
        if sentinels:
            if state == self.accepting_sink:
                return Sentinel.ACC
            if state == self.rejecting_sink:
                return Sentinel.REJ
        return state

    def initial_entry(self, sentinels: bool = True) -> Entry:
        if self.buffer is not None:
            return 0
        return self.resolve(self.automaton.initial, sentinels)

    def sentinel_marks(self) -> Dict[Sentinel, int]:
        """Mark sets contributed at each sentinel, already shifted by the offset."""
        local = self.local_acceptance
        satisfying = local.witness(True)
        falsifying = local.witness(False)
        return {
            Sentinel.ACC: (satisfying or 0) << self.mark_offset,
            Sentinel.REJ: (falsifying or 0) << self.mark_offset,
            Sentinel.HOLD: 0,
        }


def assign_mark_offsets(components: Sequence[Component]) -> int:
    """Number marks contiguously in component order; returns the total."""
    offset = 0
    for component in components:
        component.mark_offset = offset
        offset += component.mark_count
    if offset > MAX_MARKS:
        raise TelaError(f"product needs {offset} acceptance marks, more than {MAX_MARKS}")
    return offset


def lift_acceptance(phi: Formula, components: Sequence[Component]) -> AcceptanceFormula:
    by_formula = {c.formula: c for c in components}

    def lift(node: Formula) -> AcceptanceFormula:
        kind = node.kind
        if kind is Kind.TT:
            return acc_true()
        if kind is Kind.FF:
            return acc_false()
        if kind is Kind.AND:
            return acc_and(*(lift(c) for c in node.children))
        if kind is Kind.OR:
            return acc_or(*(lift(c) for c in node.children))
        if kind is Kind.NATOM:
            return lift(node.positive()).dual()
        return by_formula[node].acceptance

    return lift(phi)


# ---------------------------------------------------------------------------
#  prune / run
# ---------------------------------------------------------------------------

def _resolution(state: ProductState, components: Sequence[Component]) -> Dict[Formula, Formula]:
    mapping: Dict[Formula, Formula] = {}
    for component, entry in zip(components, state.entries):
        if entry is Sentinel.ACC:
            mapping[component.formula] = TRUE
        elif entry is Sentinel.REJ:
            mapping[component.formula] = FALSE
    return mapping


@functools.lru_cache(maxsize=4096)
def _residual_support(phi: Formula, accepted: FrozenSet[Formula], rejected: FrozenSet[Formula]) -> FrozenSet[Formula]:
    mapping = {f: TRUE for f in accepted}
    mapping.update({f: FALSE for f in rejected})
    residual = substitute_map(phi, mapping, skeleton_only=True)
    try:
        return support(residual)
    except SkeletonTooLarge as err:
        # any superset of the support is sound here
        logger.info("%s; pruning keeps every remaining component", err)
        return skeleton_atoms(residual)


def prune_state(state: ProductState, phi: Formula, components: Sequence[Component]) -> ProductState:
    """Send every unresolved component the formula no longer depends on to q_rej."""
    mapping = _resolution(state, components)
    accepted = frozenset(f for f, v in mapping.items() if v == TRUE)
    rejected = frozenset(f for f, v in mapping.items() if v == FALSE)
    relevant = _residual_support(phi, accepted, rejected)
    changes = {
        i: Sentinel.REJ
        for i, (component, entry) in enumerate(zip(components, state.entries))
        if not isinstance(entry, Sentinel) or entry is Sentinel.HOLD
        if not component.external and component.formula not in relevant
    }
    return state.updated(changes)


@functools.lru_cache(maxsize=256)
def _junctions(phi: Formula) -> Tuple[FrozenSet[FrozenSet[Formula]], FrozenSet[FrozenSet[Formula]]]:
    return conjunct_sets(phi), disjunct_sets(phi)


def _released(formula: Formula, phi: Formula, mapping: Mapping[Formula, Formula]) -> bool:
    conjunctions, disjunctions = _junctions(phi)
    around_c = [c for c in conjunctions if formula in c]
    around_d = [d for d in disjunctions if formula in d]
    if not around_c and not around_d:
        return True
    for members in around_c:
        if all(substitute_map(x, mapping, skeleton_only=True) == TRUE for x in members if is_cosafety(x)):
            return True
    for members in around_d:
        if all(substitute_map(x, mapping, skeleton_only=True) == FALSE for x in members if is_safety(x)):
            return True
    return False


def run_state(state: ProductState, phi: Formula, components: Sequence[Component]) -> ProductState:
    """Start every held component whose cosafety/safety neighbours have resolved."""
    mapping = _resolution(state, components)
    changes = {
        i: component.initial_entry(sentinels=True)
        for i, (component, entry) in enumerate(zip(components, state.entries))
        if entry is Sentinel.HOLD and _released(component.formula, phi, mapping)
    }
    return state.updated(changes)


# ---------------------------------------------------------------------------
#  Construction
# ---------------------------------------------------------------------------

class ProductConstruction:
    """Breadth-first product exploration, vectorized over the whole alphabet."""

    def __init__(
        self,
        formula: Formula,
        components: Sequence[Component],
        enhanced: bool = True,
        state_bound: int = 100000,
    ):
        self.formula = formula
        self.components = list(components)
        self.enhanced = enhanced
        self.state_bound = state_bound
        self.mark_count = sum(c.mark_count for c in self.components)

        names = set(atoms(formula))
        for component in self.components:
            names.update(component.ap)
        self.ap = tuple(sorted(names))
        self.letters = np.arange(1 << len(self.ap), dtype=np.int64)
        self.projections = [projection_table(self.ap, c.ap) for c in self.components]
        self.sentinel_marks = [c.sentinel_marks() for c in self.components]

        self.buffered = [i for i, c in enumerate(self.components) if c.buffer is not None]
        self.lifted_masks = {i: self.components[i].buffer.lifted_mask(self.ap) for i in self.buffered}
        self.window_length = max((len(m) for m in self.lifted_masks.values()), default=0)
        self._window_masks: Dict[FrozenSet[int], Tuple[int, ...]] = {}
        full = self._window_mask(frozenset(self.buffered))
        self.newest_bits = full[-1] if full else 0

        self.states: List[ProductState] = []
        self.index: Dict[ProductState, int] = {}

    def _window_mask(self, live: FrozenSet[int]) -> Tuple[int, ...]:
        cached = self._window_masks.get(live)
        if cached is not None:
            return cached
        slots = [0] * self.window_length
        for i in live:
            lifted = self.lifted_masks[i]
            offset = self.window_length - len(lifted)
            for j, bits in enumerate(lifted):
                slots[offset + j] |= bits
        closed, seen = [], 0
        for bits in slots:
            seen |= bits
            closed.append(seen)
        self._window_masks[live] = tuple(closed)
        return self._window_masks[live]

    def _live(self, state: ProductState) -> FrozenSet[int]:
        return frozenset(i for i in self.buffered if not isinstance(state.entries[i], Sentinel))

    def _intern(self, state: ProductState) -> int:
        found = self.index.get(state)
        if found is None:
            if len(self.states) >= self.state_bound:
                raise StateBoundExceeded(self.state_bound, "product automaton")
            found = len(self.states)
            self.index[state] = found
            self.states.append(state)
        return found

    def _settle(self, state: ProductState) -> ProductState:
        if not self.enhanced:
            return state
        return run_state(prune_state(state, self.formula, self.components), self.formula, self.components)

    def initial_state(self) -> ProductState:
        entries = []
        for component in self.components:
            if self.enhanced and component.is_fairness:
                entries.append(Sentinel.HOLD)
            else:
                entries.append(component.initial_entry(sentinels=self.enhanced))
        state = ProductState(tuple(entries), (0,) * self.window_length)
        if self.enhanced:
            state = run_state(state, self.formula, self.components)
        return state

    def _step(self, state: ProductState) -> Tuple[np.ndarray, np.ndarray]:
        count = len(self.components)
        codes = np.empty((self.letters.size, count + 1), dtype=np.int64)
        marks = np.zeros(self.letters.size, dtype=np.int64)
        for i, (component, entry) in enumerate(zip(self.components, state.entries)):
            projection = self.projections[i]
            if isinstance(entry, Sentinel):
                codes[:, i] = _SENTINEL_CODE[entry]
                marks |= self.sentinel_marks[i][entry]
            elif component.buffer is not None:
                window = component.buffer.window_from_product(state.window, projection)
                marked = component.buffer.marked(window)[projection]
                marks |= marked.astype(np.int64) << component.mark_offset
                codes[:, i] = 0
            else:
                codes[:, i] = component.automaton.successors[entry][projection]
                marks |= component.automaton.marks[entry][projection] << component.mark_offset
        codes[:, count] = self.letters & self.newest_bits

        rows, first, inverse = np.unique(codes, axis=0, return_index=True, return_inverse=True)
        inverse = inverse.reshape(-1)
        live_before = self._live(state)
        targets = np.empty(len(rows), dtype=np.int64)
        for r in np.argsort(first, kind="stable"):
            row = rows[r]
            entries = tuple(
                _CODE_SENTINEL[int(code)] if code < 0 else self.components[i].resolve(int(code), self.enhanced)
                for i, code in enumerate(row[:count])
            )
            target = self._settle(ProductState(entries))
            if self.window_length:
                mask = self._window_mask(live_before & self._live(target))
                shifted = state.window[1:] + (int(row[count]),)
                target = replace(target, window=tuple(w & m for w, m in zip(shifted, mask)))
            targets[r] = self._intern(target)
        return targets[inverse], marks

    def _describe(self, state: ProductState) -> str:
        parts = []
        for component, entry in zip(self.components, state.entries):
            if isinstance(entry, Sentinel):
                text = str(entry)
            elif component.buffer is not None:
                text = "live"
            else:
                labels = component.automaton.metadata.get("state_labels")
                text = labels[entry] if labels else str(entry)
            parts.append(f"{component.formula} -> {text}")
        if self.window_length:
            parts.append("window " + " ".join(str(w) for w in state.window))
        return "; ".join(parts)

    def run(self) -> Tela:
        self._intern(self.initial_state())
        successors, marks = [], []
        position = 0
        while position < len(self.states):
            row, row_marks = self._step(self.states[position])
            successors.append(row)
            marks.append(row_marks)
            position += 1
        acceptance = lift_acceptance(self.formula, self.components)
        logger.info(
            "%s product of %d components: %d states, %d marks",
            "enhanced" if self.enhanced else "standard",
            len(self.components),
            len(self.states),
            self.mark_count,
        )
        return Tela(
            ap=self.ap,
            successors=np.vstack(successors),
            marks=np.vstack(marks),
            initial=0,
            acceptance=acceptance,
            mark_count=self.mark_count,
            metadata={
                "formula": self.formula,
                "construction": "enhanced" if self.enhanced else "standard",
                "components": self.components,
                "product_states": list(self.states),
                "state_labels": [self._describe(s) for s in self.states],
                "component_marks": {
                    str(c.formula): tuple(range(c.mark_offset, c.mark_offset + c.mark_count))
                    for c in self.components
                },
            },
        )


def standard_product(phi: Formula, components: Sequence[Component], state_bound: int = 100000) -> Tela:
    return ProductConstruction(phi, components, enhanced=False, state_bound=state_bound).run()


def enhanced_product(phi: Formula, components: Sequence[Component], state_bound: int = 100000) -> Tela:
    return ProductConstruction(phi, components, enhanced=True, state_bound=state_bound).run()


# ---------------------------------------------------------------------------
#  Piggybacking
# ---------------------------------------------------------------------------

def _occurrences(phi: Formula) -> Counter:
    counts: Counter = Counter()

    def visit(node: Formula) -> None:
        if node.kind in (Kind.AND, Kind.OR):
            for child in node.children:
                visit(child)
        elif node.is_temporal or node.is_literal:
            counts[node.positive()] += 1

    visit(phi)
    return counts


def _resolved(entry: Entry, component: Component, cosafety: bool) -> bool:
    if cosafety:
        return entry is Sentinel.ACC or (not isinstance(entry, Sentinel) and entry == component.accepting_sink)
    return entry is Sentinel.REJ or (not isinstance(entry, Sentinel) and entry == component.rejecting_sink)


def _plan(phi: Formula, components: Sequence[Component]) -> List[Tuple[int, int, bool]]:
    by_formula = {c.formula: i for i, c in enumerate(components)}
    counts = _occurrences(phi)
    conjunctions, disjunctions = _junctions(phi)
    plan: List[Tuple[int, int, bool]] = []
    absorbed = set()

    def single(f: Formula) -> bool:
        return f in by_formula and counts[f] == 1

    for members, cosafety in [(m, True) for m in sorted(conjunctions, key=sorted)] + [
        (m, False) for m in sorted(disjunctions, key=sorted)
    ]:
        ordered = sorted(members)
        carriers = [
            by_formula[f] for f in ordered
            if single(f) and components[by_formula[f]].is_fairness and components[by_formula[f]].mark_count == 1
        ]
        wanted = Fragment.COSAFETY if cosafety else Fragment.SAFETY
        riders = [
            by_formula[f] for f in ordered
            if single(f) and components[by_formula[f]].fragment is wanted
            and not components[by_formula[f]].external and by_formula[f] not in absorbed
        ]
        if carriers and riders:
            for rider in riders:
                plan.append((carriers[0], rider, cosafety))
                absorbed.add(rider)
    return plan


def piggyback(product: Tela, phi: Formula) -> Tela:
    """Fold cosafety (safety) components into a fairness neighbour's single mark.

    In a conjunction the fairness mark is forced (FG) or suppressed (GF) on
    every transition leaving a state whose cosafety component has not been
    accepted yet, and the cosafety leaf becomes true; disjunctions with safety
    components are handled dually. Marks are renumbered compactly afterwards.
    """
    components: List[Component] = product.metadata.get("components")
    states: List[ProductState] = product.metadata.get("product_states")
    if components is None or states is None:
        raise ValueError("piggyback needs a product automaton with provenance metadata")
    plan = _plan(phi, components)
    if not plan:
        return product

    marks = product.marks.copy()
    acceptance = product.acceptance
    for carrier, rider, cosafety in plan:
        bit = 1 << components[carrier].mark_offset
        pending = np.array([not _resolved(s.entries[rider], components[rider], cosafety) for s in states])
        carrier_fin = components[carrier].local_acceptance.kind is AccKind.FIN
        if carrier_fin == cosafety:
            marks[pending, :] |= bit
        else:
            marks[pending, :] &= ~bit
        rider_marks = range(components[rider].mark_offset, components[rider].mark_offset + components[rider].mark_count)
        acceptance = acceptance.replace_marks(rider_marks, value=cosafety)
        logger.info("piggybacked %s onto %s", components[rider].formula, components[carrier].formula)

    used = sorted(acceptance.marks())
    renumber = {old: new for new, old in enumerate(used)}
    compact = np.zeros_like(marks)
    for old, new in renumber.items():
        compact |= ((marks >> old) & 1) << new
    metadata = dict(product.metadata)
    metadata["piggyback"] = [(components[c].formula, components[r].formula) for c, r, _ in plan]
    metadata["component_marks"] = {
        str(c.formula): tuple(renumber[m] for m in range(c.mark_offset, c.mark_offset + c.mark_count) if m in renumber)
        for c in components
    }
    return replace(
        product,
        marks=compact,
        acceptance=acceptance.map_marks(renumber.__getitem__),
        mark_count=len(used),
        metadata=metadata,
    )


def check_sentinel_monotonicity(product: Tela) -> List[str]:
    """Edges violating the sentinel discipline; empty when the product is sound."""
    components: List[Component] = product.metadata["components"]
    states: List[ProductState] = product.metadata["product_states"]
    violations = []
    for q, source in enumerate(states):
        for t in sorted(set(int(x) for x in product.successors[q])):
            target = states[t]
            for i, (before, after) in enumerate(zip(source.entries, target.entries)):
                if before is Sentinel.ACC and after is not Sentinel.ACC:
                    violations.append(f"{q}->{t}: {components[i].formula} leaves q_acc")
                elif before is Sentinel.REJ and after is not Sentinel.REJ:
                    violations.append(f"{q}->{t}: {components[i].formula} leaves q_rej")
                elif before is Sentinel.HOLD and not (
                    after is Sentinel.HOLD or after is Sentinel.REJ or after == components[i].initial_entry(True)
                ):
                    violations.append(f"{q}->{t}: {components[i].formula} leaves q_hold for {after}")
                elif after is Sentinel.HOLD and before is not Sentinel.HOLD:
                    violations.append(f"{q}->{t}: {components[i].formula} enters q_hold")
    return violations
