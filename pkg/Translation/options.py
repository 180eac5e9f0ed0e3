"""Translation options and their JSON loader.

Precedence when options come from several places: explicit CLI flags, then
the JSON config file, then the DELAG_FALLBACK_CMD environment variable (for
the fallback command only), then the defaults below.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional
import json
import os

__all__ = [
    "FALLBACK_ENV",
    "StateBoundExceeded",
    "TranslationOptions",
    "load_options",
    "options_from_environment",
]

FALLBACK_ENV = "DELAG_FALLBACK_CMD"


class StateBoundExceeded(RuntimeError):
    """A construction produced more states than the configured bound."""

    def __init__(self, bound: int, what: str = "automaton"):
        super().__init__(f"{what} exceeds the state bound of {bound}")
        self.bound = bound


@dataclass(frozen=True)
class TranslationOptions:
    construction: str = "enhanced"  # enhanced | standard
    global_history: bool = True
    piggyback: bool = False
    fallback_command: Optional[str] = None
    fallback_syntax: str = "infix"  # infix | spin
    fallback_timeout: float = 60.0  # seconds
    state_bound: int = 100000

    def __post_init__(self):
        if self.construction not in ("enhanced", "standard"):
            raise ValueError(f"Unknown construction: {self.construction}")
        if self.fallback_syntax not in ("infix", "spin"):
            raise ValueError(f"Unknown fallback syntax: {self.fallback_syntax}")
        if self.state_bound < 1:
            raise ValueError(f"state_bound must be positive, got {self.state_bound}")
        if self.fallback_timeout <= 0:
            raise ValueError(f"fallback_timeout must be positive, got {self.fallback_timeout}")

    def updated(self, **overrides: Any) -> "TranslationOptions":
        """Copy with every non-None override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _check_keys(data: Mapping[str, Any], source: str) -> None:
    known = {f.name for f in fields(TranslationOptions)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ValueError(f"Unknown option(s) in {source}: {', '.join(unknown)}")


def options_from_environment(base: Optional[TranslationOptions] = None) -> TranslationOptions:
    base = base or TranslationOptions()
    command = os.environ.get(FALLBACK_ENV)
    if command and base.fallback_command is None:
        return replace(base, fallback_command=command)
    return base


def load_options(path: str | Path) -> TranslationOptions:
    """Load options from a JSON object; missing keys keep their defaults."""
    path = Path(path)
    with path.open() as f:
        data: Dict[str, Any] = json.load(f)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object")
    _check_keys(data, str(path))
    return TranslationOptions(**data)
