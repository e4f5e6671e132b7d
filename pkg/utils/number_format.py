from decimal import Decimal, ROUND_DOWN, ROUND_HALF_UP
from fractions import Fraction

def round_half_up(value: Fraction) -> int:
    """Round an exact rational to the nearest integer, halves away from zero."""
    decimal_value = Decimal(value.numerator) / Decimal(value.denominator)
    return int(decimal_value.quantize(Decimal('1'), rounding=ROUND_HALF_UP))

def display_support(value: Fraction, digits: int = 3) -> float:
    """
    Support truncated to `digits` decimals for reports, so 9/85 reads 0.105
    and 30/85 reads 0.352. Comparisons always use the exact value.
    """
    quantum = Decimal(1).scaleb(-digits)
    decimal_value = Decimal(value.numerator) / Decimal(value.denominator)
    return float(decimal_value.quantize(quantum, rounding=ROUND_DOWN))
