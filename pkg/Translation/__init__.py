"""TelaGen translation package.

- fairness: buffer automata for GF/FG over LTL(X) arguments
- safety: derivative automata for the cosafety and safety fragments
- fallback: external translator for everything else
- product: standard and enhanced product constructions
- pipeline: normalize, translate the skeleton atoms, compose
"""

__all__ = [
    "fairness",
    "safety",
    "fallback",
    "product",
    "options",
    "pipeline",
]
