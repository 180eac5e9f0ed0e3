"""Emerson-Lei acceptance formulas over numbered marks."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Callable, FrozenSet, Iterable, Optional, Tuple

import numpy as np

__all__ = [
    "AccKind",
    "AcceptanceFormula",
    "acc_true",
    "acc_false",
    "fin",
    "inf",
    "acc_and",
    "acc_or",
]


class AccKind(Enum):
    TRUE = "t"
    FALSE = "f"
    FIN = "Fin"
    INF = "Inf"
    AND = "&"
    OR = "|"


@dataclass(frozen=True)
class AcceptanceFormula:
    kind: AccKind
    mark: int = -1
    children: Tuple["AcceptanceFormula", ...] = ()

    def __post_init__(self):
        if self.kind in (AccKind.FIN, AccKind.INF) and self.mark < 0:
            raise ValueError(f"{self.kind.value} needs a non-negative mark, got {self.mark}")
        if self.kind in (AccKind.AND, AccKind.OR) and not self.children:
            raise ValueError("And/Or acceptance nodes need children")

    # -- queries --------------------------------------------------------
    def marks(self) -> FrozenSet[int]:
        if self.kind in (AccKind.FIN, AccKind.INF):
            return frozenset((self.mark,))
        found: FrozenSet[int] = frozenset()
        for child in self.children:
            found |= child.marks()
        return found

    def size(self) -> int:
        """Number of Fin/Inf leaf occurrences."""
        if self.kind in (AccKind.FIN, AccKind.INF):
            return 1
        return sum(c.size() for c in self.children)

    def evaluate(self, inf_marks: int) -> bool:
        """Verdict for a run whose infinitely recurring marks form the bitmask ``inf_marks``."""
        kind = self.kind
        if kind is AccKind.TRUE:
            return True
        if kind is AccKind.FALSE:
            return False
        if kind is AccKind.INF:
            return bool(inf_marks >> self.mark & 1)
        if kind is AccKind.FIN:
            return not inf_marks >> self.mark & 1
        if kind is AccKind.AND:
            return all(c.evaluate(inf_marks) for c in self.children)
        return any(c.evaluate(inf_marks) for c in self.children)

    def evaluate_array(self, inf_marks: np.ndarray) -> np.ndarray:
        kind = self.kind
        if kind is AccKind.TRUE:
            return np.ones(inf_marks.shape, dtype=bool)
        if kind is AccKind.FALSE:
            return np.zeros(inf_marks.shape, dtype=bool)
        if kind is AccKind.INF:
            return (inf_marks >> self.mark) & 1 == 1
        if kind is AccKind.FIN:
            return (inf_marks >> self.mark) & 1 == 0
        parts = [c.evaluate_array(inf_marks) for c in self.children]
        reduce = np.logical_and.reduce if kind is AccKind.AND else np.logical_or.reduce
        return reduce(parts)

    def witness(self, target: bool) -> Optional[int]:
        """Smallest mark set (as bitmask) that, recurring forever, gives ``target``."""
        used = sorted(self.marks())
        for count in range(len(used) + 1):
            for chosen in combinations(used, count):
                mask = sum(1 << m for m in chosen)
                if self.evaluate(mask) == target:
                    return mask
        return None

    # -- transformations ------------------------------------------------
    def dual(self) -> "AcceptanceFormula":
        kind = self.kind
        if kind is AccKind.TRUE:
            return acc_false()
        if kind is AccKind.FALSE:
            return acc_true()
        if kind is AccKind.FIN:
            return inf(self.mark)
        if kind is AccKind.INF:
            return fin(self.mark)
        duals = [c.dual() for c in self.children]
        return acc_or(*duals) if kind is AccKind.AND else acc_and(*duals)

    def map_marks(self, mapping: Callable[[int], int]) -> "AcceptanceFormula":
        if self.kind is AccKind.FIN:
            return fin(mapping(self.mark))
        if self.kind is AccKind.INF:
            return inf(mapping(self.mark))
        if not self.children:
            return self
        mapped = [c.map_marks(mapping) for c in self.children]
        return acc_and(*mapped) if self.kind is AccKind.AND else acc_or(*mapped)

    def shift(self, offset: int) -> "AcceptanceFormula":
        return self.map_marks(lambda m: m + offset) if offset else self

    def replace_marks(self, marks: Iterable[int], value: bool) -> "AcceptanceFormula":
        """Replace every leaf over one of ``marks`` by the constant ``value``."""
        marks = frozenset(marks)
        if self.kind in (AccKind.FIN, AccKind.INF):
            if self.mark in marks:
                return acc_true() if value else acc_false()
            return self
        if not self.children:
            return self
        replaced = [c.replace_marks(marks, value) for c in self.children]
        return acc_and(*replaced) if self.kind is AccKind.AND else acc_or(*replaced)

    # -- printing -------------------------------------------------------
    def to_hoa(self) -> str:
        kind = self.kind
        if kind in (AccKind.TRUE, AccKind.FALSE):
            return kind.value
        if kind in (AccKind.FIN, AccKind.INF):
            return f"{kind.value}({self.mark})"
        parts = []
        for child in self.children:
            text = child.to_hoa()
            if kind is AccKind.AND and child.kind is AccKind.OR:
                text = f"({text})"
            parts.append(text)
        return f" {kind.value} ".join(parts)

    def __str__(self) -> str:
        return self.to_hoa()


_TRUE = AcceptanceFormula(AccKind.TRUE)
_FALSE = AcceptanceFormula(AccKind.FALSE)


def acc_true() -> AcceptanceFormula:
    return _TRUE


def acc_false() -> AcceptanceFormula:
    return _FALSE


def fin(mark: int) -> AcceptanceFormula:
    return AcceptanceFormula(AccKind.FIN, mark)


def inf(mark: int) -> AcceptanceFormula:
    return AcceptanceFormula(AccKind.INF, mark)


def _junction(kind: AccKind, operands: Iterable[AcceptanceFormula]) -> AcceptanceFormula:
    unit, zero = (_TRUE, _FALSE) if kind is AccKind.AND else (_FALSE, _TRUE)
    flat = []
    for operand in operands:
        if operand.kind is kind:
            flat.extend(operand.children)
        elif operand == zero:
            return zero
        elif operand != unit:
            flat.append(operand)
    if not flat:
        return unit
    if len(flat) == 1:
        return flat[0]
    return AcceptanceFormula(kind, children=tuple(flat))


def acc_and(*operands: AcceptanceFormula) -> AcceptanceFormula:
    return _junction(AccKind.AND, operands)


def acc_or(*operands: AcceptanceFormula) -> AcceptanceFormula:
    return _junction(AccKind.OR, operands)
