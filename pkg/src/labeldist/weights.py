"""Exact fixed-point edge weights.

All arithmetic in the library is integer arithmetic.  A decimal input weight
is scaled by 10**precision at parse time; uniqueness perturbation later
multiplies every weight by 2**B and adds per-edge noise below 2**B, so the
original value of any finite distance is recoverable as ``scaled >> B``.

Infinite weights (artificial triangulation edges) carry an explicit flag.
Internally the traversal code realises the flag as a per-graph ``huge`` value
chosen larger than the sum of all finite weights, which makes the pair
(number of infinite edges, finite weight) order coincide with plain integer
order; the flag is authoritative at the API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class Weight:
    """A non-negative fixed-point weight or the infinite flag."""

    scaled: int
    infinite: bool = False

    def __post_init__(self):
        if self.scaled < 0:
            raise ValueError("weights are non-negative")

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.scaled + other.scaled, self.infinite or other.infinite)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Weight):
            return NotImplemented
        if self.infinite or other.infinite:
            return self.infinite and other.infinite
        return self.scaled == other.scaled

    def __lt__(self, other: "Weight") -> bool:
        if self.infinite:
            return False
        if other.infinite:
            return True
        return self.scaled < other.scaled

    def __hash__(self):
        return hash((self.scaled, self.infinite))

    def to_decimal(self, precision: int, scale_bits: int = 0) -> str:
        """Render in original decimal units, discarding perturbation noise."""
        if self.infinite:
            return "inf"
        units = self.scaled >> scale_bits
        if precision == 0:
            return str(units)
        q, r = divmod(units, 10 ** precision)
        return f"{q}.{r:0{precision}d}"


ZERO = Weight(0)


def parse_decimal(text: str, precision: int) -> int:
    """Parse a non-negative decimal string into fixed-point units."""
    text = text.strip()
    if text.startswith("-"):
        raise ValueError(f"negative weight {text!r}")
    if "." in text:
        whole, frac = text.split(".", 1)
    else:
        whole, frac = text, ""
    if not (whole or frac) or not (whole + frac).isdigit():
        raise ValueError(f"bad decimal {text!r}")
    if len(frac) > precision:
        extra = frac[precision:]
        if extra.strip("0"):
            raise ValueError(f"{text!r} needs more than {precision} decimal places")
        frac = frac[:precision]
    frac = frac.ljust(precision, "0")
    return int(whole or "0") * 10 ** precision + int(frac or "0")
