"""
Engine configuration - everything comes from constructor arguments or CLI flags
"""

from dataclasses import dataclass
from typing import Optional

from .errors import InputError

DEFAULT_STEP_BUDGET = 10**6
MAX_SYMMETRIC_DEGREE = 8
MAX_DOUBLE_COSET_PRIME = 7
STRATEGIES = ("leftmost", "rightmost")


@dataclass(frozen=True)
class EngineConfig:
    """
    Settings shared by the Adem engine and the algebra layers

    Args:
        prime: Working prime
        side: "B" (generalized Dyer-Lashof) or "A" (Steenrod)
        step_budget: Rewrite steps allowed per input term
        cache_dir: Directory for the persistent rewrite cache (None = memory only)
        strategy: Which inadmissible pair is rewritten first
    """

    prime: int = 2
    side: str = "B"
    step_budget: int = DEFAULT_STEP_BUDGET
    cache_dir: Optional[str] = None
    strategy: str = "leftmost"

    def __post_init__(self):
        if self.side not in ("A", "B"):
            raise InputError(f"side must be 'A' or 'B', got {self.side!r}")
        if self.step_budget < 1:
            raise InputError("step_budget must be positive")
        if self.strategy not in STRATEGIES:
            raise InputError(f"strategy must be one of {STRATEGIES}")
