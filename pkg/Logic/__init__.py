"""LTL formula definitions for TelaGen.

Formulas are kept in negation normal form and built only through the
canonical constructors below, so structurally equal formulas compare equal
and Boolean children are flattened, deduplicated and sorted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, FrozenSet, Iterable, Iterator, Tuple

__all__ = [
    "Kind",
    "Formula",
    "TRUE",
    "FALSE",
    "atom",
    "neg_atom",
    "literal",
    "conj",
    "disj",
    "nxt",
    "next_n",
    "until",
    "release",
    "weak_until",
    "eventually",
    "always",
    "negate",
    "implies",
    "iff",
    "rebuild",
    "atoms",
    "to_string",
]


class Kind(IntEnum):
    # the numeric value is the rank used by the canonical order
    TT = 0
    FF = 1
    ATOM = 2
    NATOM = 3
    AND = 4
    OR = 5
    X = 6
    U = 7
    R = 8


_LITERALS = (Kind.ATOM, Kind.NATOM)
_TEMPORAL = (Kind.X, Kind.U, Kind.R)


@dataclass(frozen=True, eq=False)
class Formula:
    kind: Kind
    name: str = ""
    children: Tuple["Formula", ...] = ()
    key: tuple = field(init=False, repr=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        key = (int(self.kind), self.name, tuple(c.key for c in self.children))
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Formula") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return to_string(self)

    def __repr__(self) -> str:
        return f"Formula({to_string(self)!r})"

    # -- structural accessors -------------------------------------------
    @property
    def child(self) -> "Formula":
        return self.children[0]

    @property
    def left(self) -> "Formula":
        return self.children[0]

    @property
    def right(self) -> "Formula":
        return self.children[1]

    @property
    def is_constant(self) -> bool:
        return self.kind in (Kind.TT, Kind.FF)

    @property
    def is_literal(self) -> bool:
        return self.kind in _LITERALS

    @property
    def is_temporal(self) -> bool:
        return self.kind in _TEMPORAL

    @property
    def is_eventually(self) -> bool:
        return self.kind is Kind.U and self.left.kind is Kind.TT

    @property
    def is_always(self) -> bool:
        return self.kind is Kind.R and self.left.kind is Kind.FF

    def positive(self) -> "Formula":
        """The positive atom of a literal."""
        return atom(self.name) if self.kind is Kind.NATOM else self

    def subformulas(self) -> Iterator["Formula"]:
        stack = [self]
        seen = set()
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            yield node
            stack.extend(node.children)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def x_depth(self) -> int:
        inner = max((c.x_depth() for c in self.children), default=0)
        return inner + 1 if self.kind is Kind.X else inner


TRUE = Formula(Kind.TT)
FALSE = Formula(Kind.FF)


def atom(name: str) -> Formula:
    return Formula(Kind.ATOM, name)


def neg_atom(name: str) -> Formula:
    return Formula(Kind.NATOM, name)


def literal(name: str, positive: bool = True) -> Formula:
    return atom(name) if positive else neg_atom(name)


def _complement_literal(f: Formula) -> Formula:
    return neg_atom(f.name) if f.kind is Kind.ATOM else atom(f.name)


def _junction(kind: Kind, operands: Iterable[Formula]) -> Formula:
    unit, zero = (TRUE, FALSE) if kind is Kind.AND else (FALSE, TRUE)
    flat = set()
    for f in operands:
        if f.kind is kind:
            flat.update(f.children)
        elif f == zero:
            return zero
        elif f != unit:
            flat.add(f)
    for f in flat:
        if f.is_literal and _complement_literal(f) in flat:
            return zero
    if not flat:
        return unit
    if len(flat) == 1:
        return next(iter(flat))
    return Formula(kind, children=tuple(sorted(flat)))


def conj(*operands: Formula) -> Formula:
    return _junction(Kind.AND, operands)


def disj(*operands: Formula) -> Formula:
    return _junction(Kind.OR, operands)


def nxt(f: Formula) -> Formula:
    if f.is_constant:
        return f
    return Formula(Kind.X, children=(f,))


def next_n(f: Formula, n: int) -> Formula:
    for _ in range(n):
        f = nxt(f)
    return f


def until(left: Formula, right: Formula) -> Formula:
    if right.is_constant or left.kind is Kind.FF or left == right:
        return right
    if right.is_eventually:
        return right
    return Formula(Kind.U, children=(left, right))


def release(left: Formula, right: Formula) -> Formula:
    if right.is_constant or left.kind is Kind.TT or left == right:
        return right
    if right.is_always:
        return right
    return Formula(Kind.R, children=(left, right))


def weak_until(left: Formula, right: Formula) -> Formula:
    """left W right, kept as right R (left | right)."""
    return release(right, disj(left, right))


def eventually(f: Formula) -> Formula:
    return until(TRUE, f)


def always(f: Formula) -> Formula:
    return release(FALSE, f)


def negate(f: Formula) -> Formula:
    """Negation pushed to the literals (NNF dual)."""
    kind = f.kind
    if kind is Kind.TT:
        return FALSE
    if kind is Kind.FF:
        return TRUE
    if kind in _LITERALS:
        return _complement_literal(f)
    if kind is Kind.AND:
        return disj(*(negate(c) for c in f.children))
    if kind is Kind.OR:
        return conj(*(negate(c) for c in f.children))
    if kind is Kind.X:
        return nxt(negate(f.child))
    if kind is Kind.U:
        return release(negate(f.left), negate(f.right))
    return until(negate(f.left), negate(f.right))


def implies(left: Formula, right: Formula) -> Formula:
    return disj(negate(left), right)


def iff(left: Formula, right: Formula) -> Formula:
    return disj(conj(left, right), conj(negate(left), negate(right)))


def rebuild(f: Formula, children: Tuple[Formula, ...]) -> Formula:
    """Rebuild ``f`` over new children through the canonical constructors."""
    kind = f.kind
    if kind is Kind.AND:
        return conj(*children)
    if kind is Kind.OR:
        return disj(*children)
    if kind is Kind.X:
        return nxt(children[0])
    if kind is Kind.U:
        return until(*children)
    if kind is Kind.R:
        return release(*children)
    return f


def atoms(f: Formula) -> FrozenSet[str]:
    return frozenset(node.name for node in f.subformulas() if node.is_literal)


# ---------------------------------------------------------------------------
#  Printing
# ---------------------------------------------------------------------------

_STYLES: Dict[str, Dict[str, str]] = {
    "infix": {
        "true": "true", "false": "false", "not": "!", "and": " & ", "or": " | ",
        "X": "X", "F": "F", "G": "G", "U": " U ", "R": " R ",
    },
    "spin": {
        "true": "true", "false": "false", "not": "!", "and": " && ", "or": " || ",
        "X": "X", "F": "<>", "G": "[]", "U": " U ", "R": " V ",
    },
}


def _render(f: Formula, sym: Dict[str, str]) -> str:
    kind = f.kind
    if kind is Kind.TT:
        return sym["true"]
    if kind is Kind.FF:
        return sym["false"]
    if kind is Kind.ATOM:
        return f.name
    if kind is Kind.NATOM:
        return sym["not"] + f.name
    if kind in (Kind.AND, Kind.OR):
        glue = sym["and"] if kind is Kind.AND else sym["or"]
        return "(" + glue.join(_render(c, sym) for c in f.children) + ")"
    if kind is Kind.X:
        return f"{sym['X']} {_render(f.child, sym)}"
    if f.is_eventually:
        return f"{sym['F']} {_render(f.right, sym)}"
    if f.is_always:
        return f"{sym['G']} {_render(f.right, sym)}"
    op = sym["U"] if kind is Kind.U else sym["R"]
    return f"({_render(f.left, sym)}{op}{_render(f.right, sym)})"


def to_string(f: Formula, style: str = "infix") -> str:
    """Render ``f``; binary operators are fully parenthesized."""
    try:
        sym = _STYLES[style]
    except KeyError:
        raise ValueError(f"Unknown formula syntax: {style}") from None
    text = _render(f, sym)
    if f.kind in (Kind.AND, Kind.OR, Kind.U, Kind.R) and not (f.is_eventually or f.is_always):
        text = text[1:-1]
    return text
