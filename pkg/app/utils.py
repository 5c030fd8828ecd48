import json
import random
from fractions import Fraction
from typing import Any, List, Sequence

from pydantic import BaseModel


def nonzero_int(rng: random.Random, bound: int) -> int:
    """
    Draw an integer from [-bound, bound] \\ {0} by rejection.
    Integer points keep every denominator at 1 during elimination.
    """
    if bound < 1:
        raise ValueError("coefficient bound must be >= 1")
    c = 0
    while c == 0:
        c = rng.randint(-bound, bound)
    return c


def suite_seed(seed: int, offset: int) -> int:
    """Seed for the ``offset``-th independent stream derived from ``seed``"""
    return seed * 1000 + offset


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_root(root: Sequence[int]) -> str:
    """Root in simple-root coordinates, e.g. (1,1,1)"""
    return "(" + ",".join(str(c) for c in root) + ")"


def yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def render_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """
    Fixed-width table, columns left-aligned and separated by two spaces.
    Trailing whitespace is stripped so output is stable across terminals.
    """
    cells: List[List[str]] = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = []
    for k, row in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_json(report: BaseModel) -> str:
    """Deterministic JSON: aliases and sorted keys; absent values are explicit nulls"""
    data = report.model_dump(mode="json", by_alias=True)
    return json.dumps(data, sort_keys=True, indent=2)
