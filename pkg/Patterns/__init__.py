"""Benchmark formula families, literature formula sets and the good-leaf-set count."""

from __future__ import annotations

import functools
from typing import Callable, Dict, FrozenSet, List, Tuple

import numpy as np

from Logic import Formula, always, atom, conj, disj, eventually, neg_atom, next_n
from Logic.fragments import FragmentError, fairness_shape
from Logic.parse_ltl import parse
from Logic.skeleton import ordered_skeleton_atoms, skeleton_table

__all__ = [
    "phi_R",
    "phi_S",
    "phi_H",
    "good_leaf_sets",
    "LITERATURE",
    "literature_formula",
    "literature_corpus",
    "PATTERNS",
]


def _fg(f: Formula) -> Formula:
    return eventually(always(f))


def _gf(f: Formula) -> Formula:
    return always(eventually(f))


def _rabin_pair(n: int) -> Formula:
    return conj(_fg(atom(f"a{n}")), _gf(atom(f"b{n}")))


def _streett_pair(n: int) -> Formula:
    return disj(_fg(atom(f"a{n}")), _gf(atom(f"b{n}")))


def _alternating(n: int):
    if n < 0:
        raise ValueError(f"pattern index must be non-negative, got {n}")
    rabin, streett = _rabin_pair(0), _streett_pair(0)
    for k in range(1, n + 1):
        rabin, streett = disj(_rabin_pair(k), streett), conj(_streett_pair(k), rabin)
    return rabin, streett


def phi_R(n: int) -> Formula:
    """Rabin-like alternation: pair n disjoined with the Streett-like pattern of n-1."""
    return _alternating(n)[0]


def phi_S(n: int) -> Formula:
    return _alternating(n)[1]


def phi_H(n: int) -> Formula:
    """Disjunction of FG(a | X^k b) for k = 0..n, with a negated at odd k."""
    if n < 0:
        raise ValueError(f"pattern index must be non-negative, got {n}")
    b = atom("b")
    result = _fg(disj(atom("a"), b))
    for k in range(1, n + 1):
        guard = atom("a") if k % 2 == 0 else neg_atom("a")
        result = disj(_fg(disj(guard, next_n(b, k))), result)
    return result


def good_leaf_sets(phi: Formula) -> FrozenSet[FrozenSet[Formula]]:
    """Minimal sets of FG/GF leaves whose truth alone satisfies ``phi``."""
    leaves = ordered_skeleton_atoms(phi)
    for leaf in leaves:
        if fairness_shape(leaf) is None:
            raise FragmentError(f"{leaf} is not an FG/GF leaf")
    table = skeleton_table(phi, leaves)
    index = np.arange(table.shape[0], dtype=np.int64)
    minimal = table.copy()
    for i in range(len(leaves)):
        present = ((index >> i) & 1) == 1
        minimal &= ~(present & table[index ^ (1 << i)])
    return frozenset(
        frozenset(leaves[i] for i in range(len(leaves)) if row >> i & 1)
        for row in np.flatnonzero(minimal)
    )


# Literature families in their published order, atoms named as in each
# catalogue. Property patterns come in groups of five scopes, global first.
DWYER = (
    # absence
    "G !p",
    "F r -> (!p U r)",
    "G (q -> G !p)",
    "G ((q & !r & F r) -> (!p U r))",
    "G ((q & !r) -> (!p W r))",
    # existence
    "F p",
    "!r W (p & !r)",
    "G !q | F (q & F p)",
    "G ((q & !r) -> (!r W (p & !r)))",
    "G ((q & !r) -> (!r U (p & !r)))",
    # bounded existence
    "!p W (p W (!p W (p W G !p)))",
    "F r -> ((!p & !r) U (r | ((p & !r) U (r | ((!p & !r) U (r | ((p & !r) U (r | (!p U r)))))))))",
    "F q -> (!q U (q & (!p W (p W (!p W (p W G !p))))))",
    "G ((q & F r) -> ((!p & !r) U (r | ((p & !r) U (r | ((!p & !r) U (r | ((p & !r) U (r | (!p U r))))))))))",
    "G (q -> ((!p & !r) U (r | ((p & !r) U (r | ((!p & !r) U (r | ((p & !r) U (r | (!p W r) | G p)))))))))",
    # universality
    "G p",
    "F r -> (p U r)",
    "G (q -> G p)",
    "G ((q & !r & F r) -> (p U r))",
    "G ((q & !r) -> (p W r))",
    # precedence
    "!p W s",
    "F r -> (!p U (s | r))",
    "G !q | F (q & (!p W s))",
    "G ((q & !r & F r) -> (!p U (s | r)))",
    "G ((q & !r) -> (!p W (s | r)))",
    # response
    "G (p -> F s)",
    "F r -> ((p -> (!r U (s & !r))) U r)",
    "G (q -> G (p -> F s))",
    "G ((q & !r & F r) -> ((p -> (!r U (s & !r))) U r))",
    "G ((q & !r) -> ((p -> (!r U (s & !r))) W r))",
    # precedence chain, s and t precede p
    "F p -> (!p U (s & !p & X (!p U t)))",
    "F r -> (!p U (r | (s & !p & X (!p U t))))",
    "G !q | (!q U (q & (F p -> (!p U (s & !p & X (!p U t))))))",
    "G ((q & F r) -> (!p U (r | (s & !p & X (!p U t)))))",
    "G (q -> ((!p U (r | (s & !p & X (!p U t)))) | G !p))",
    # precedence chain, p precedes s and t
    "F (s & X F t) -> (!s U p)",
    "F r -> (!(s & !r & X (!r U (t & !r))) U (r | p))",
    "G !q | (!q U (q & (F (s & X F t) -> (!s U p))))",
    "G ((q & F r) -> (!(s & !r & X (!r U (t & !r))) U (r | p)))",
    "G (q -> ((!(s & !r & X (!r U (t & !r))) U (r | p)) | G !(s & X F t)))",
    # response chain, p responds to s and t
    "G ((s & X F t) -> X F (t & F p))",
    "F r -> (((s & X (!r U t)) -> X (!r U (t & F p))) U r)",
    "G (q -> G ((s & X F t) -> X (!t U (t & F p))))",
    "G ((q & F r) -> (((s & X (!r U t)) -> X (!r U (t & F p))) U r))",
    "G (q -> (((s & X (!r U t)) -> X (!r U (t & F p))) U (r | G ((s & X (!r U t)) -> X (!r U (t & F p))))))",
    # response chain, s and t respond to p
    "G (p -> F (s & X F t))",
    "F r -> ((p -> (!r U (s & !r & X (!r U t)))) U r)",
    "G (q -> G (p -> (s & X F t)))",
    "G ((q & F r) -> ((p -> (!r U (s & !r & X (!r U t)))) U r))",
    "G (q -> ((p -> (!r U (s & !r & X (!r U t)))) U (r | G (p -> (s & X F t)))))",
    # constrained chain, s and t without z respond to p
    "G (p -> F (s & !z & X (!z U t)))",
    "F r -> ((p -> (!r U (s & !r & !z & X ((!r & !z) U t)))) U r)",
    "G (q -> G (p -> (s & !z & X (!z U t))))",
    "G ((q & F r) -> ((p -> (!r U (s & !r & !z & X ((!r & !z) U t)))) U r))",
    "G (q -> ((p -> (!r U (s & !r & !z & X ((!r & !z) U t)))) U (r | G (p -> (s & !z & X (!z U t))))))",
)

ETESSAMI_HOLZMANN = (
    "p0 U (p1 & G p2)",
    "p0 U (p1 & X (p2 U p3))",
    "p0 U (p1 & X (p2 & F (p3 & X F (p4 & X F (p5 & X F p6)))))",
    "F (p0 & X G p1)",
    "F (p0 & X (p1 & X F p2))",
    "F (p0 & X (p1 U p2))",
    "F G p0 | G F p1",
    "G (p0 -> (p1 U p2))",
    "G (p0 & X F (p1 & X F (p2 & X F p3)))",
    "G F p0 & G F p1 & G F p2 & G F p3 & G F p4",
    "(p0 U (p1 U p2)) | (p1 U (p2 U p0)) | (p2 U (p0 U p1))",
    "G (p0 -> (p1 U (G p2 | G p3)))",
)

SOMENZI_BLOEM = (
    "p0 U p1",
    "p0 U (p1 U p2)",
    "!(p0 U (p1 U p2))",
    "G F p0 -> G F p1",
    "F p0 U G p1",
    "G p0 U p1",
    "!(F F p0 <-> F p0)",
    "!(G F p0 -> F G p0)",
    "!(G F p0 <-> F G p0)",
    "p0 R (p0 | p1)",
    "(X p0 U X p1) | !X (p0 U p1)",
    "(X p0 U p1) | !X (p0 U (p0 & p1))",
    "G (p0 -> F p1) & ((X p0 U p1) | !X (p0 U (p0 & p1)))",
    "G (p0 -> F p1) & ((X p0 U X p1) | !X (p0 U p1))",
    "G (p0 -> F p1)",
    "!G (p0 -> X (p1 R p2))",
    "!(F G p0 | F G p1)",
    "G (F p0 & F p1)",
    "F p0 & F !p0",
    "(X p1 & p2) R X (((p3 U p0) R p2) U (p3 R p2))",
    "(G (p1 | G F p0) & G (p2 | G F !p0)) | G p1 | G p2",
    "(G (p1 | F G p0) & G (p2 | F G !p0)) | G p1 | G p2",
    "!((G (p1 | G F p0) & G (p2 | G F !p0)) | G p1 | G p2)",
    "!((G (p1 | F G p0) & G (p2 | F G !p0)) | G p1 | G p2)",
    "G (p1 | X G p0) & G (p2 | X G !p0)",
    "G (p1 | (X p0 & X !p0))",
    "p0 | (p1 U p0)",
)

LITERATURE: Dict[str, Tuple[str, ...]] = {
    "dwyer": DWYER,
    "etessami-holzmann": ETESSAMI_HOLZMANN,
    "somenzi-bloem": SOMENZI_BLOEM,
}


def literature_formula(family: str, n: int) -> Formula:
    """Formula ``n`` (0-based) of a literature family."""
    formulas = LITERATURE[family]
    if not 0 <= n < len(formulas):
        raise ValueError(f"{family} has formulas 0..{len(formulas) - 1}, got {n}")
    return parse(formulas[n])


def literature_corpus() -> List[Tuple[str, int, Formula]]:
    return [(family, n, parse(text)) for family, texts in LITERATURE.items() for n, text in enumerate(texts)]


PATTERNS: Dict[str, Callable[[int], Formula]] = {
    "rabin": phi_R,
    "streett": phi_S,
    "history": phi_H,
    **{family: functools.partial(literature_formula, family) for family in LITERATURE},
}
