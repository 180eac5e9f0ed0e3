"""
TelaGen CLI Package

Command-line interface for LTL to deterministic TELA translation.
Provides translate, check, pattern and bench subcommands.
"""

__version__ = "0.1.0"
