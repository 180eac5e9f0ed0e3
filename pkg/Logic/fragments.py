"""Syntactic LTL fragments and classification."""

from __future__ import annotations

from enum import Enum
from typing import Optional, Tuple

from . import Formula, Kind
from .skeleton import skeleton_atoms

__all__ = [
    "Fragment",
    "FragmentError",
    "in_ltl_x",
    "is_cosafety",
    "is_safety",
    "fairness_shape",
    "fairness_argument",
    "classify",
]


class FragmentError(ValueError):
    """A fragment-specific translator received a formula outside its fragment."""


class Fragment(Enum):
    COSAFETY = "Cosafety"
    SAFETY = "Safety"
    FAIRNESS_GF = "FairnessGF"
    FAIRNESS_FG = "FairnessFG"
    FAIRNESS_BOOLEAN = "FairnessBoolean"
    UNSUPPORTED = "Unsupported"

    def __str__(self) -> str:
        return self.value

    @property
    def is_fairness(self) -> bool:
        return self in (Fragment.FAIRNESS_GF, Fragment.FAIRNESS_FG)


def _avoids(phi: Formula, *kinds: Kind) -> bool:
    return all(node.kind not in kinds for node in phi.subformulas())


def in_ltl_x(phi: Formula) -> bool:
    return _avoids(phi, Kind.U, Kind.R)


def is_cosafety(phi: Formula) -> bool:
    """Membership in LTL(U,X)."""
    return _avoids(phi, Kind.R)


def is_safety(phi: Formula) -> bool:
    """Membership in LTL(R,X)."""
    return _avoids(phi, Kind.U)


def fairness_shape(phi: Formula) -> Optional[Tuple[str, Formula]]:
    """Match ``G F psi`` or ``F G psi`` regardless of what ``psi`` contains."""
    if phi.is_always and phi.right.is_eventually:
        return "GF", phi.right.right
    if phi.is_eventually and phi.right.is_always:
        return "FG", phi.right.right
    return None


def fairness_argument(phi: Formula) -> Optional[Tuple[str, Formula]]:
    shape = fairness_shape(phi)
    if shape is not None and in_ltl_x(shape[1]):
        return shape
    return None


def classify(phi: Formula) -> Fragment:
    if is_cosafety(phi):
        return Fragment.COSAFETY
    if is_safety(phi):
        return Fragment.SAFETY
    shape = fairness_argument(phi)
    if shape is not None:
        return Fragment.FAIRNESS_GF if shape[0] == "GF" else Fragment.FAIRNESS_FG
    if phi.kind in (Kind.AND, Kind.OR) and all(
        fairness_argument(leaf) is not None for leaf in skeleton_atoms(phi)
    ):
        return Fragment.FAIRNESS_BOOLEAN
    return Fragment.UNSUPPORTED
