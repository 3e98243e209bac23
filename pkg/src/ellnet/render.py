"""Text and JSON rendering of net values and table grids.

Factored form: sign, then prime powers ascending separated by " · ", with
"^" exponents (omitted when 1) and negative exponents for denominator
primes, e.g. "-2^-36 · 23 · 103".  Chosen to diff cleanly against the
published tables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .fieldarith import factorize

SEPARATOR = " · "

PLAIN = "plain"
FACTORED = "factored"
JSON_FORMAT = "json"


def factor_string(value) -> str:
    value = Fraction(value)
    if value == 0:
        return "0"
    sign = "-" if value < 0 else ""
    merged: dict[int, int] = {}
    for p, e in factorize(abs(value.numerator)).factors:
        merged[p] = e
    for p, e in factorize(value.denominator).factors:
        merged[p] = merged.get(p, 0) - e
    parts = [f"{p}^{e}" if e != 1 else str(p) for p, e in sorted(merged.items())]
    if not parts:
        return sign + "1"
    return sign + SEPARATOR.join(parts)


def plain_string(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render_entry(value, fmt: str) -> str:
    return factor_string(value) if fmt == FACTORED else plain_string(value)


def grid_rows(cols: int, rows: int) -> list[list[tuple[int, int]]]:
    """Index grid in table order: highest second coordinate first."""
    return [[(c, r) for c in range(cols)] for r in range(rows - 1, -1, -1)]


def table_text(entry: Callable[[tuple[int, int]], object], cols: int, rows: int,
               fmt: str = PLAIN) -> str:
    lines = []
    for row in grid_rows(cols, rows):
        lines.append(" | ".join(render_entry(entry(v), fmt) for v in row))
    return "\n".join(lines)


def table_json(entry: Callable[[tuple[int, int]], object], cols: int, rows: int) -> list[dict]:
    out = []
    for row in grid_rows(cols, rows):
        for v in row:
            value = Fraction(entry(v))
            out.append({
                "index": list(v),
                "value": {"num": str(value.numerator), "den": str(value.denominator)},
            })
    return out


def normalized(text: str) -> str:
    """Whitespace-insensitive comparison form of a table."""
    return "\n".join(" ".join(line.split()) for line in text.strip().splitlines())
