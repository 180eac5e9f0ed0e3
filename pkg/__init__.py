"""TelaGen
Translation of LTL formulas into deterministic transition-based
Emerson-Lei automata (TELA).
This package is organised into:
- Logic: formulas, parser, skeleton queries, fragments and rewriting
- Automata: the TELA model, acceptance formulas and HOA I/O
- Translation: fragment translators, product constructions and the pipeline
- Oracle: lasso semantics and bounded equivalence checks
- Patterns: benchmark formula families
"""

__all__ = [
    "Logic",
    "Automata",
    "Translation",
    "Oracle",
    "Patterns",
]
