"""TelaGen - formula rewriting.

Brings formulas into the fairness normal form (Boolean combinations of
GF psi / FG psi with psi in LTL(X)) and applies the language-preserving
simplifications run before classification.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import sympy
from sympy.logic.boolalg import to_cnf as sympy_to_cnf
from sympy.logic.boolalg import to_dnf as sympy_to_dnf

from . import (
    FALSE,
    TRUE,
    Formula,
    Kind,
    always,
    conj,
    disj,
    eventually,
    negate,
    nxt,
    rebuild,
)
from .fragments import fairness_shape, in_ltl_x
from .skeleton import skeleton_atoms

__all__ = [
    "RewriteRule",
    "FAIRNESS_RULES",
    "NEXT_PULL_RULE",
    "SIMPLIFICATION_RULES",
    "fairness_normal_form",
    "simplify",
    "normalize",
    "to_cnf",
    "to_dnf",
    "entails",
    "simplify_subsumption",
]

logger = logging.getLogger(__name__)

_MAX_ROUNDS = 16


@dataclass(frozen=True)
class RewriteRule:
    """A single rewrite rule.

    ``apply`` returns the rewritten formula or None when the rule does not
    match. ``template`` builds a (non-canonicalized) left-hand side from two
    arbitrary argument formulas, so a rule can be instantiated on its own.
    """

    name: str
    apply: Callable[[Formula], Optional[Formula]]
    template: Callable[[Formula, Formula], Formula]
    extension: bool = False
    fallback: bool = False


def _gf(f: Formula) -> Formula:
    return always(eventually(f))


def _fg(f: Formula) -> Formula:
    return eventually(always(f))


# raw builders keep shapes the canonical constructors would collapse (F F, G G)
def _raw_f(f: Formula) -> Formula:
    return Formula(Kind.U, children=(TRUE, f))


def _raw_g(f: Formula) -> Formula:
    return Formula(Kind.R, children=(FALSE, f))


def _raw_fg(f: Formula) -> Formula:
    return _raw_f(_raw_g(f))


def _raw_gf(f: Formula) -> Formula:
    return _raw_g(_raw_f(f))


def _arg(phi: Formula, shape: str) -> Optional[Formula]:
    match = fairness_shape(phi)
    if match is None or match[0] != shape:
        return None
    return match[1]


def _fg_of_f(phi):
    arg = _arg(phi, "FG")
    return _gf(arg.right) if arg is not None and arg.is_eventually else None


def _gf_of_f(phi):
    arg = _arg(phi, "GF")
    return _gf(arg.right) if arg is not None and arg.is_eventually else None


def _fg_of_g(phi):
    arg = _arg(phi, "FG")
    return _fg(arg.right) if arg is not None and arg.is_always else None


def _gf_of_g(phi):
    arg = _arg(phi, "GF")
    return _fg(arg.right) if arg is not None and arg.is_always else None


def _fg_of_x(phi):
    arg = _arg(phi, "FG")
    return _fg(arg.child) if arg is not None and arg.kind is Kind.X else None


def _gf_of_x(phi):
    arg = _arg(phi, "GF")
    return _gf(arg.child) if arg is not None and arg.kind is Kind.X else None


def _fg_of_and(phi):
    arg = _arg(phi, "FG")
    if arg is None or arg.kind is not Kind.AND:
        return None
    return conj(*(_fg(c) for c in arg.children))


def _gf_of_or(phi):
    arg = _arg(phi, "GF")
    if arg is None or arg.kind is not Kind.OR:
        return None
    return disj(*(_gf(c) for c in arg.children))


def _split(arg: Optional[Formula], kind: Kind, picked: Callable[[Formula], bool]):
    if arg is None or arg.kind is not kind:
        return None
    for index, child in enumerate(arg.children):
        if picked(child):
            rest = arg.children[:index] + arg.children[index + 1:]
            return rebuild(arg, rest), child.right
    return None


def _fg_of_or_f(phi):
    found = _split(_arg(phi, "FG"), Kind.OR, lambda c: c.is_eventually)
    return disj(_fg(found[0]), _gf(found[1])) if found else None


def _gf_of_and_f(phi):
    found = _split(_arg(phi, "GF"), Kind.AND, lambda c: c.is_eventually)
    return conj(_gf(found[0]), _gf(found[1])) if found else None


def _fg_of_or_g(phi):
    found = _split(_arg(phi, "FG"), Kind.OR, lambda c: c.is_always)
    return disj(_fg(found[0]), _fg(found[1])) if found else None


def _gf_of_and_g(phi):
    found = _split(_arg(phi, "GF"), Kind.AND, lambda c: c.is_always)
    return conj(_gf(found[0]), _fg(found[1])) if found else None


def _fg_cnf(phi):
    arg = _arg(phi, "FG")
    if arg is None or in_ltl_x(arg):
        return None
    normal = to_cnf(arg)
    return _fg(normal) if normal != arg else None


def _gf_dnf(phi):
    arg = _arg(phi, "GF")
    if arg is None or in_ltl_x(arg):
        return None
    normal = to_dnf(arg)
    return _gf(normal) if normal != arg else None


FAIRNESS_RULES: List[RewriteRule] = [
    RewriteRule("FG F", _fg_of_f, lambda p, q: _raw_fg(_raw_f(p))),
    RewriteRule("GF F", _gf_of_f, lambda p, q: _raw_gf(_raw_f(p))),
    RewriteRule("FG G", _fg_of_g, lambda p, q: _raw_fg(_raw_g(p))),
    RewriteRule("GF G", _gf_of_g, lambda p, q: _raw_gf(_raw_g(p))),
    RewriteRule("FG X", _fg_of_x, lambda p, q: _raw_fg(nxt(p))),
    RewriteRule("GF X", _gf_of_x, lambda p, q: _raw_gf(nxt(p))),
    RewriteRule("FG and", _fg_of_and, lambda p, q: _raw_fg(conj(p, q))),
    RewriteRule("GF or", _gf_of_or, lambda p, q: _raw_gf(disj(p, q))),
    RewriteRule("FG or F", _fg_of_or_f, lambda p, q: _raw_fg(disj(p, eventually(q)))),
    RewriteRule("GF and F", _gf_of_and_f, lambda p, q: _raw_gf(conj(p, eventually(q)))),
    RewriteRule("FG or G", _fg_of_or_g, lambda p, q: _raw_fg(disj(p, always(q)))),
    RewriteRule("GF and G", _gf_of_and_g, lambda p, q: _raw_gf(conj(p, always(q)))),
    RewriteRule(
        "FG cnf", _fg_cnf,
        lambda p, q: _raw_fg(disj(conj(p, eventually(q)), conj(q, always(p)))),
        fallback=True,
    ),
    RewriteRule(
        "GF dnf", _gf_dnf,
        lambda p, q: _raw_gf(conj(disj(p, eventually(q)), disj(q, always(p)))),
        fallback=True,
    ),
]


def _pull_top(node: Formula) -> Formula:
    if node.kind is Kind.X:
        inner = node.child
        if inner.is_eventually:
            return eventually(_pull_top(nxt(inner.right)))
        if inner.is_always:
            return always(_pull_top(nxt(inner.right)))
    return node


def _pull_next(f: Formula) -> Formula:
    if f.children:
        f = rebuild(f, tuple(_pull_next(c) for c in f.children))
    return _pull_top(f)


def _pull_next_in_argument(phi):
    match = fairness_shape(phi)
    if match is None:
        return None
    pulled = _pull_next(match[1])
    if pulled == match[1]:
        return None
    return _gf(pulled) if match[0] == "GF" else _fg(pulled)


NEXT_PULL_RULE = RewriteRule(
    "X F/G pull", _pull_next_in_argument,
    lambda p, q: _raw_fg(disj(p, nxt(eventually(q)))),
    extension=True,
)


def _gf_of_until(phi):
    arg = _arg(phi, "GF")
    return _gf(arg.right) if arg is not None and arg.kind is Kind.U else None


def _fg_of_until(phi):
    arg = _arg(phi, "FG")
    if arg is None or arg.kind is not Kind.U:
        return None
    return conj(_gf(arg.right), _fg(disj(arg.left, arg.right)))


def _fg_of_release(phi):
    arg = _arg(phi, "FG")
    return _fg(arg.right) if arg is not None and arg.kind is Kind.R else None


def _gf_of_release(phi):
    arg = _arg(phi, "GF")
    if arg is None or arg.kind is not Kind.R:
        return None
    return disj(_fg(arg.right), _gf(conj(arg.left, arg.right)))


SIMPLIFICATION_RULES: List[RewriteRule] = [
    RewriteRule("GF U", _gf_of_until, lambda p, q: _raw_gf(Formula(Kind.U, children=(p, q)))),
    RewriteRule("FG U", _fg_of_until, lambda p, q: _raw_fg(Formula(Kind.U, children=(p, q)))),
    RewriteRule("FG R", _fg_of_release, lambda p, q: _raw_fg(Formula(Kind.R, children=(p, q))), extension=True),
    RewriteRule("GF R", _gf_of_release, lambda p, q: _raw_gf(Formula(Kind.R, children=(p, q))), extension=True),
]


def _rewrite(phi: Formula, rules: Sequence[RewriteRule]) -> Formula:
    """Innermost-first application of ``rules`` until no rule fires."""
    cache: Dict[Formula, Formula] = {}

    def visit(node: Formula) -> Formula:
        cached = cache.get(node)
        if cached is not None:
            return cached
        current = rebuild(node, tuple(visit(c) for c in node.children)) if node.children else node
        for rule in rules:
            out = rule.apply(current)
            if out is not None and out != current:
                logger.debug("rule %s: %s -> %s", rule.name, current, out)
                current = visit(out)
                break
        cache[node] = current
        return current

    return visit(phi)


_NORMAL_FORM_ORDER = [r for r in FAIRNESS_RULES if not r.fallback] + [NEXT_PULL_RULE] + [
    r for r in FAIRNESS_RULES if r.fallback
]


def fairness_normal_form(phi: Formula) -> Formula:
    return _rewrite(phi, _NORMAL_FORM_ORDER)


def simplify(phi: Formula) -> Formula:
    return simplify_subsumption(_rewrite(phi, SIMPLIFICATION_RULES))


def normalize(phi: Formula) -> Formula:
    """simplify and fairness_normal_form, alternated to a joint fixpoint."""
    for _ in range(_MAX_ROUNDS):
        result = fairness_normal_form(simplify(phi))
        if result == phi:
            break
        phi = result
    else:
        logger.warning("normalization did not settle after %d rounds", _MAX_ROUNDS)
    return phi


# ---------------------------------------------------------------------------
#  Skeleton CNF/DNF
# ---------------------------------------------------------------------------

def _to_sympy(phi: Formula, symbols: Dict[Formula, sympy.Symbol]):
    kind = phi.kind
    if kind is Kind.TT:
        return sympy.true
    if kind is Kind.FF:
        return sympy.false
    if kind is Kind.NATOM:
        return sympy.Not(symbols[phi.positive()])
    if kind is Kind.AND:
        return sympy.And(*(_to_sympy(c, symbols) for c in phi.children))
    if kind is Kind.OR:
        return sympy.Or(*(_to_sympy(c, symbols) for c in phi.children))
    return symbols[phi]


def _from_sympy(expr, formulas: Dict[sympy.Symbol, Formula]) -> Formula:
    if expr is sympy.true:
        return TRUE
    if expr is sympy.false:
        return FALSE
    if isinstance(expr, sympy.Symbol):
        return formulas[expr]
    if isinstance(expr, sympy.Not):
        return negate(_from_sympy(expr.args[0], formulas))
    operands = [_from_sympy(arg, formulas) for arg in expr.args]
    if isinstance(expr, sympy.And):
        return conj(*operands)
    if isinstance(expr, sympy.Or):
        return disj(*operands)
    raise TypeError(f"unexpected Boolean expression {expr!r}")


def _normal_form(phi: Formula, convert) -> Formula:
    atoms_sorted = sorted(skeleton_atoms(phi))
    symbols = {a: sympy.Symbol(f"p{i}") for i, a in enumerate(atoms_sorted)}
    formulas = {s: a for a, s in symbols.items()}
    return _from_sympy(convert(_to_sympy(phi, symbols), simplify=False), formulas)


def to_cnf(phi: Formula) -> Formula:
    return _normal_form(phi, sympy_to_cnf)


def to_dnf(phi: Formula) -> Formula:
    return _normal_form(phi, sympy_to_dnf)


# ---------------------------------------------------------------------------
#  Syntactic entailment and subsumption
# ---------------------------------------------------------------------------

def entails(lhs: Formula, rhs: Formula) -> bool:
    """Sound syntactic check of ``lhs`` implies ``rhs``."""
    if lhs == rhs or rhs.kind is Kind.TT or lhs.kind is Kind.FF:
        return True
    if lhs.kind is Kind.OR:
        return all(entails(c, rhs) for c in lhs.children)
    if rhs.kind is Kind.AND:
        return all(entails(lhs, c) for c in rhs.children)
    if lhs.kind is Kind.AND and any(entails(c, rhs) for c in lhs.children):
        return True
    if rhs.kind is Kind.OR and any(entails(lhs, c) for c in rhs.children):
        return True
    if lhs.kind is Kind.X and rhs.kind is Kind.X:
        return entails(lhs.child, rhs.child)
    if rhs.kind is Kind.U:
        if entails(lhs, rhs.right):
            return True
        if lhs.kind is Kind.U:
            if entails(lhs.left, rhs.left) and entails(lhs.right, rhs.right):
                return True
            # a U b implies F c whenever b implies F c
            if rhs.is_eventually and entails(lhs.right, rhs):
                return True
    if lhs.kind is Kind.R:
        if entails(lhs.right, rhs):
            return True
        if rhs.kind is Kind.R:
            if entails(lhs.left, rhs.left) and entails(lhs.right, rhs.right):
                return True
            if lhs.is_always and entails(lhs, rhs.right):
                return True
    return False


def _prune_dominated(children: Iterable[Formula], redundant: Callable[[Formula, Formula], bool]) -> List[Formula]:
    kept: List[Formula] = []
    for child in children:
        if any(redundant(child, k) for k in kept):
            continue
        kept = [k for k in kept if not redundant(k, child)]
        kept.append(child)
    return kept


def simplify_subsumption(phi: Formula) -> Formula:
    """Drop conjuncts implied by a sibling and disjuncts implying a sibling."""
    cache: Dict[Formula, Formula] = {}

    def visit(node: Formula) -> Formula:
        if not node.children:
            return node
        cached = cache.get(node)
        if cached is not None:
            return cached
        children = tuple(visit(c) for c in node.children)
        if node.kind is Kind.AND:
            result = conj(*_prune_dominated(children, lambda c, k: entails(k, c)))
        elif node.kind is Kind.OR:
            result = disj(*_prune_dominated(children, lambda c, k: entails(c, k)))
        else:
            result = rebuild(node, children)
        if result.kind in (Kind.AND, Kind.OR) and result != node:
            result = visit(result)
        cache[node] = result
        return result

    return visit(phi)
