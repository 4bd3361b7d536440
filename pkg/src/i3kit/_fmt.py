"""Display rounding helpers (round-half-up on exact values)."""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction


def to_decimal(value, places: int) -> Decimal:
    q = Decimal(1).scaleb(-places)
    with localcontext() as ctx:
        ctx.prec = 60
        if isinstance(value, Fraction):
            dec = Decimal(value.numerator) / Decimal(value.denominator)
        elif isinstance(value, float):
            dec = Decimal(repr(value))
        else:
            dec = Decimal(value)
        return dec.quantize(q, rounding=ROUND_HALF_UP)


def fmt_fixed(value, places: int) -> str:
    out = to_decimal(value, places)
    if out == 0:
        out = abs(out)
    return f"{out:.{places}f}"


def fmt_count(value) -> str:
    """Integers stay integers; fractional counts get two decimals."""
    if isinstance(value, Fraction) and value.denominator != 1:
        return fmt_fixed(value, 2)
    return str(int(value))


def fmt_sig(value: float, digits: int = 4) -> str:
    return f"{value:.{digits}g}"
