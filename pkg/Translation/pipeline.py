"""TelaGen - the end-to-end translation pipeline."""

from __future__ import annotations

import logging
from typing import List, Optional

import numpy as np

from Automata import Tela
from Automata.acceptance import acc_false, acc_true
from Logic import TRUE, Formula, Kind
from Logic.fragments import Fragment, classify, fairness_argument
from Logic.rewrite import normalize
from Logic.skeleton import ordered_skeleton_atoms

from .fairness import BufferSpec, translate_fg, translate_gf
from .fallback import FallbackRequired, translate_external
from .options import TranslationOptions, options_from_environment
from .product import Component, assign_mark_offsets, enhanced_product, piggyback, standard_product
from .safety import translate_cosafety, translate_safety

__all__ = ["build_component", "build_components", "external_leaves", "translate", "constant_automaton"]

logger = logging.getLogger(__name__)


def constant_automaton(value: bool) -> Tela:
    """One state, no propositions, acceptance ``t`` or ``f``."""
    return Tela(
        ap=(),
        successors=np.zeros((1, 1), dtype=np.int64),
        marks=np.zeros((1, 1), dtype=np.int64),
        initial=0,
        acceptance=acc_true() if value else acc_false(),
        mark_count=0,
        metadata={"state_labels": ["tt" if value else "ff"]},
    )


def build_component(leaf: Formula, options: TranslationOptions) -> Component:
    fragment = classify(leaf)
    if fragment.is_fairness:
        kind, argument = fairness_argument(leaf)
        if options.global_history:
            return Component(leaf, fragment, buffer=BufferSpec.for_formula(kind, argument))
        translator = translate_gf if kind == "GF" else translate_fg
        automaton = translator(argument, options.state_bound)
        return Component(leaf, fragment, automaton=automaton)
    if fragment is Fragment.COSAFETY:
        return Component(leaf, fragment, automaton=translate_cosafety(leaf, options.state_bound))
    if fragment is Fragment.SAFETY:
        return Component(leaf, fragment, automaton=translate_safety(leaf, options.state_bound))
    if options.fallback_command is None:
        raise FallbackRequired(leaf)
    automaton = translate_external(
        leaf, options.fallback_command, options.fallback_syntax, options.fallback_timeout
    )
    return Component(leaf, fragment, automaton=automaton, external=True)


def build_components(phi: Formula, options: TranslationOptions) -> List[Component]:
    components = [build_component(leaf, options) for leaf in ordered_skeleton_atoms(phi)]
    assign_mark_offsets(components)
    for component in components:
        logger.debug(
            "component %s: %s, marks from %d", component.formula, component.fragment, component.mark_offset
        )
    return components


def external_leaves(phi: Formula) -> List[Formula]:
    """Skeleton atoms of the normal form of ``phi`` that need the external translator."""
    external = []
    for leaf in ordered_skeleton_atoms(normalize(phi)):
        fragment = classify(leaf)
        if not (fragment.is_fairness or fragment in (Fragment.COSAFETY, Fragment.SAFETY)):
            external.append(leaf)
    return external


def translate(phi: Formula, options: Optional[TranslationOptions] = None) -> Tela:
    """Deterministic, complete TELA recognising exactly the models of ``phi``."""
    options = options_from_environment(options)
    normal = normalize(phi)
    if normal != phi:
        logger.info("normalized %s to %s", phi, normal)
    if normal.kind in (Kind.TT, Kind.FF):
        return constant_automaton(normal == TRUE)

    components = build_components(normal, options)
    if options.construction == "enhanced":
        product = enhanced_product(normal, components, options.state_bound)
    else:
        product = standard_product(normal, components, options.state_bound)
    if options.piggyback:
        product = piggyback(product, normal)
    return product
