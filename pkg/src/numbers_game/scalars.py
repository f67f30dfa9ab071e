"""Scalar handling for the two arithmetic modes.

Integer (GCM) graphs compute with :class:`fractions.Fraction`, which is
always in lowest terms with a positive denominator. E-GCM graphs compute
with plain floats.
"""

from fractions import Fraction
from numbers import Rational, Real

GCM = "gcm"
EGCM = "egcm"
KINDS = (GCM, EGCM)

# values in [-EPS_ZERO, EPS_ZERO] count as zero in approx mode
EPS_ZERO = 1e-12


def to_exact(value):
    """Coerce ints, Fractions, "p/q" strings and integral floats to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(f"float {value!r} is not exact; pass a 'p/q' string")
        return Fraction(int(value))
    raise TypeError(f"cannot use {value!r} as an exact scalar")


def to_approx(value):
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, str):
        return float(Fraction(value.strip()))
    if isinstance(value, Real):
        return float(value)
    raise TypeError(f"cannot use {value!r} as a float scalar")


def coerce(value, kind):
    return to_exact(value) if kind == GCM else to_approx(value)


def is_positive(value, kind):
    if kind == GCM:
        return value > 0
    return value > EPS_ZERO


def format_scalar(value):
    """JSON form: rationals as "p/q" (or "p") strings, floats as floats."""
    if isinstance(value, Fraction):
        return str(value)
    return float(value)
