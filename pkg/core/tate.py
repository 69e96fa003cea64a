"""
Tate chart for Σ_2 with trivial-action F_2 coefficients
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import pandas as pd

from .errors import DomainError, InputError, InvalidWindowError
from .modp_arith import PrimeLike, as_prime

logger = logging.getLogger(__name__)

QDims = Union[Mapping[int, int], Iterable[Tuple[int, int]]]


@dataclass
class TateChart:
    """E1 = E2 page: one entry per (s, q) with a nonzero F_2-dimension"""

    window: Tuple[int, int]
    truncate_at: Optional[int]
    entries: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def rows(self) -> List[dict]:
        return [{"s": s, "q": q, "dimension": d} for s, q, d in self.entries]

    def diagonals(self) -> Dict[int, int]:
        """Total dimension on each diagonal s + q"""
        totals: Dict[int, int] = defaultdict(int)
        for s, q, d in self.entries:
            totals[s + q] += d
        return dict(sorted(totals.items()))

    @property
    def legend(self) -> List[str]:
        lines = [
            "E1 = E2: Tate cohomology of Σ_2 with trivial F_2 coefficients; entry = F_2-dimension of M_q",
            f"columns s in [{self.window[0]}, {self.window[1]}], rows q",
        ]
        if self.truncate_at is not None:
            lines.append(
                f"truncated at m = {self.truncate_at}: columns s < m sent to zero "
                "(filtration cut; interpretive reading of the truncation)"
            )
        return lines

    def to_frame(self) -> pd.DataFrame:
        """q rows by s columns, zeros where the chart is empty"""
        columns = list(range(self.window[0], self.window[1] + 1))
        if not self.entries:
            return pd.DataFrame(columns=columns, dtype=int)
        frame = pd.DataFrame(self.entries, columns=["s", "q", "dimension"])
        table = frame.pivot_table(index="q", columns="s", values="dimension", aggfunc="sum", fill_value=0)
        return table.reindex(columns=columns, fill_value=0).sort_index(ascending=False)

    def render(self) -> str:
        if not self.entries:
            return "(empty chart)"
        return self.to_frame().to_string()

    def to_document(self) -> dict:
        return {
            "rows": self.rows,
            "diagonals": [{"diagonal": k, "dimension": v} for k, v in self.diagonals().items()],
            "legend": self.legend,
        }


def tate_chart(
    q_dims: QDims,
    window: Tuple[int, int],
    truncate_at: Optional[int] = None,
    prime: PrimeLike = 2,
) -> TateChart:
    """
    Chart of Ĥ^s(Σ_2; M_q) = M_q for s in the window

    Args:
        q_dims: (q, dimension) pairs or a mapping q -> dimension
        window: (s_min, s_max)
        truncate_at: Zero every column s < m
        prime: Must be 2
    """
    if as_prime(prime).value != 2:
        raise DomainError("the Tate chart is defined at p = 2 only")
    s_min, s_max = window
    if s_min > s_max:
        raise InvalidWindowError(f"empty window [{s_min}, {s_max}]")
    pairs = q_dims.items() if isinstance(q_dims, Mapping) else q_dims
    dims: Dict[int, int] = defaultdict(int)
    for q, d in pairs:
        if d < 0:
            raise InputError(f"dimension of M_{q} must be nonnegative, got {d}")
        dims[int(q)] += int(d)

    entries = []
    for q in sorted(dims):
        if not dims[q]:
            continue
        for s in range(s_min, s_max + 1):
            if truncate_at is not None and s < truncate_at:
                continue
            entries.append((s, q, dims[q]))
    logger.debug("tate chart with %d entries", len(entries))
    return TateChart((s_min, s_max), truncate_at, entries)


def parse_q_dims(text: str) -> List[Tuple[int, int]]:
    """Parse "q:dim,q:dim" (e.g. "0:1,2:1")"""
    pairs = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        q, sep, d = item.partition(":")
        try:
            pairs.append((int(q), int(d) if sep else 1))
        except ValueError:
            raise InputError(f"expected q:dimension, got {item!r}") from None
    return pairs
