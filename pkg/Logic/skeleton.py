"""Queries over the propositional skeleton of a formula.

The skeleton is the Boolean structure above the first temporal operator.
Its atoms are the maximal temporal subformulas (sff) and the positive atoms
of literals that occur outside every temporal operator; ``!a`` is read as the
negation of the skeleton atom ``a``.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

from . import Formula, Kind, negate, rebuild

__all__ = [
    "MAX_TABLE_ATOMS",
    "SkeletonTooLarge",
    "sff",
    "skeleton_atoms",
    "ordered_skeleton_atoms",
    "conjunct_sets",
    "disjunct_sets",
    "substitute",
    "substitute_map",
    "skeleton_table",
    "support",
    "prop_equiv",
    "class_key",
]

MAX_TABLE_ATOMS = 20


class SkeletonTooLarge(ValueError):
    """Raised when a truth table over the skeleton would exceed MAX_TABLE_ATOMS atoms."""

    def __init__(self, count: int):
        super().__init__(f"skeleton has {count} atoms, more than {MAX_TABLE_ATOMS} supported")
        self.count = count


def _skeleton_nodes(phi: Formula):
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        if node.kind in (Kind.AND, Kind.OR):
            stack.extend(node.children)


def sff(phi: Formula) -> FrozenSet[Formula]:
    """Maximal temporal subformulas not nested inside another temporal operator."""
    return frozenset(node for node in _skeleton_nodes(phi) if node.is_temporal)


def skeleton_atoms(phi: Formula) -> FrozenSet[Formula]:
    found = set()
    for node in _skeleton_nodes(phi):
        if node.is_temporal:
            found.add(node)
        elif node.is_literal:
            found.add(node.positive())
    return frozenset(found)


def ordered_skeleton_atoms(phi: Formula) -> List[Formula]:
    """Skeleton atoms by first occurrence in a depth-first, left-to-right walk."""
    order: List[Formula] = []
    seen = set()

    def visit(node: Formula) -> None:
        if node.kind in (Kind.AND, Kind.OR):
            for child in node.children:
                visit(child)
            return
        if node.is_temporal or node.is_literal:
            key = node.positive()
            if key not in seen:
                seen.add(key)
                order.append(key)

    visit(phi)
    return order


def _junction_sets(phi: Formula, kind: Kind) -> FrozenSet[FrozenSet[Formula]]:
    return frozenset(frozenset(node.children) for node in _skeleton_nodes(phi) if node.kind is kind)


def conjunct_sets(phi: Formula) -> FrozenSet[FrozenSet[Formula]]:
    return _junction_sets(phi, Kind.AND)


def disjunct_sets(phi: Formula) -> FrozenSet[FrozenSet[Formula]]:
    return _junction_sets(phi, Kind.OR)


def substitute_map(phi: Formula, mapping: Mapping[Formula, Formula], skeleton_only: bool = False) -> Formula:
    """Replace every occurrence of a mapped subformula.

    A mapped positive atom also replaces its negative literal by the
    negated replacement. With ``skeleton_only`` temporal operators are not
    entered.
    """
    if not mapping:
        return phi
    cache: Dict[Formula, Formula] = {}

    def walk(node: Formula) -> Formula:
        if node in mapping:
            return mapping[node]
        if node.kind is Kind.NATOM:
            positive = node.positive()
            return negate(mapping[positive]) if positive in mapping else node
        if not node.children or (skeleton_only and node.is_temporal):
            return node
        if node in cache:
            return cache[node]
        result = rebuild(node, tuple(walk(c) for c in node.children))
        cache[node] = result
        return result

    return walk(phi)


def substitute(phi: Formula, targets: Iterable[Formula], replacement: Formula, skeleton_only: bool = False) -> Formula:
    return substitute_map(phi, {t: replacement for t in targets}, skeleton_only)


def skeleton_table(phi: Formula, atom_order: Sequence[Formula]) -> np.ndarray:
    """Truth table of the skeleton; bit ``i`` of the row index is ``atom_order[i]``."""
    if len(atom_order) > MAX_TABLE_ATOMS:
        raise SkeletonTooLarge(len(atom_order))
    index = np.arange(1 << len(atom_order), dtype=np.int64)
    column = {a: ((index >> i) & 1).astype(bool) for i, a in enumerate(atom_order)}

    def evaluate(node: Formula) -> np.ndarray:
        kind = node.kind
        if kind is Kind.TT:
            return np.ones(index.shape, dtype=bool)
        if kind is Kind.FF:
            return np.zeros(index.shape, dtype=bool)
        if kind is Kind.NATOM:
            return ~column[node.positive()]
        if kind is Kind.AND:
            return np.logical_and.reduce([evaluate(c) for c in node.children])
        if kind is Kind.OR:
            return np.logical_or.reduce([evaluate(c) for c in node.children])
        return column[node]

    return evaluate(phi)


def _support_of_table(table: np.ndarray, count: int) -> List[int]:
    index = np.arange(table.shape[0], dtype=np.int64)
    return [i for i in range(count) if np.any(table != table[index ^ (1 << i)])]


def _read_once(phi: Formula) -> bool:
    seen = set()
    for node in _skeleton_nodes(phi):
        if node.is_temporal or node.is_literal:
            key = node.positive()
            if key in seen:
                return False
            seen.add(key)
    return True


def support(phi: Formula) -> FrozenSet[Formula]:
    """Skeleton atoms whose value can change the value of ``phi``.

    A non-constant skeleton in which every atom occurs once depends on all of
    its atoms; any other skeleton is decided on its truth table.
    """
    if phi.is_constant:
        return frozenset()
    if _read_once(phi):
        return skeleton_atoms(phi)
    order = sorted(skeleton_atoms(phi))
    table = skeleton_table(phi, order)
    return frozenset(order[i] for i in _support_of_table(table, len(order)))


def prop_equiv(phi: Formula, psi: Formula) -> bool:
    if phi == psi:
        return True
    order = sorted(skeleton_atoms(phi) | skeleton_atoms(psi))
    return bool(np.array_equal(skeleton_table(phi, order), skeleton_table(psi, order)))


def class_key(phi: Formula) -> Tuple[Tuple[Formula, ...], bytes]:
    """Exact key of the propositional equivalence class of ``phi``."""
    order = sorted(skeleton_atoms(phi))
    table = skeleton_table(phi, order)
    relevant = _support_of_table(table, len(order))
    # restrict the table to the support by fixing every other atom to false
    index = np.arange(1 << len(relevant), dtype=np.int64)
    rows = np.zeros(index.shape, dtype=np.int64)
    for position, atom_index in enumerate(relevant):
        rows |= ((index >> position) & 1) << atom_index
    return tuple(order[i] for i in relevant), np.packbits(table[rows]).tobytes()
