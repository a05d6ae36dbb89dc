"""Tabular sweep results and their deterministic CSV encoding."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["SweepRow", "SweepResult", "format_number"]


def format_number(x: float) -> str:
    """Scientific notation, 9 significant digits, '.' decimal separator."""
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.8e}"


@dataclass
class SweepRow:
    """One sampled point of a sweep; ``valid`` is False for flagged rows."""

    x: float
    mutual: float = math.nan
    coupling: float = math.nan
    P_load: float = math.nan
    efficiency: float = math.nan
    P_in: float = math.nan
    valid: bool = True
    flag: str = ""

    @classmethod
    def invalid(cls, x: float, flag: str) -> "SweepRow":
        return cls(x=x, valid=False, flag=flag)


@dataclass
class SweepResult:
    """Labeled table of (independent variable -> circuit summary) rows."""

    independent_name: str
    unit: str
    rows: list[SweepRow] = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        xs = [r.x for r in self.rows]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("sweep x-values must be strictly increasing")

    def to_csv(self) -> str:
        """Header + rows, LF line endings, fixed 9-significant-digit format."""
        header = (f"{self.independent_name}_{self.unit},mutual_H,coupling,"
                  "P_load_W,P_in_W,efficiency,valid,flag")
        lines = [header]
        for r in self.rows:
            lines.append(",".join([
                format_number(r.x),
                format_number(r.mutual),
                format_number(r.coupling),
                format_number(r.P_load),
                format_number(r.P_in),
                format_number(r.efficiency),
                "1" if r.valid else "0",
                r.flag.replace(",", ";"),
            ]))
        return "\n".join(lines) + "\n"
