"""Small exact-arithmetic helpers shared by the engine modules."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

RationalLike = Union[int, str, Fraction]


def to_fraction(value) -> Fraction:
    """Coerce ``value`` to a Fraction without going through binary floats.

    Floats are accepted via their shortest repr, so ``0.1`` becomes 1/10.
    Booleans are rejected because they are almost always a config mistake.
    """
    if isinstance(value, bool):
        raise TypeError(f"expected a rational number, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite number {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected a rational number, got {value!r}")


def frac_gcd(values: Iterable[Fraction]) -> Fraction:
    """Positive generator of the subgroup of Q spanned by ``values``.

    Returns 0 when every value is zero.
    """
    vals = [Fraction(v) for v in values if v != 0]
    if not vals:
        return Fraction(0)
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    g = 0
    for v in vals:
        g = math.gcd(g, abs(v.numerator * (den // v.denominator)))
    return Fraction(g, den)


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        v = abs(int(v))
        if v:
            out = out * v // math.gcd(out, v)
    return out


def ceil_frac(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def floor_frac(q: Fraction) -> int:
    return q.numerator // q.denominator


def grid_points(offset: Fraction, step: Fraction,
                lo: Optional[Fraction], hi: Optional[Fraction]) -> Iterator[Fraction]:
    """Points of ``offset + step*Z`` inside the closed interval [lo, hi].

    Both ends must be finite; an open end would make the set infinite.
    """
    if lo is None or hi is None:
        raise ValueError("grid enumeration needs a bounded window")
    if step <= 0:
        raise ValueError("grid step must be positive")
    k0 = ceil_frac((lo - offset) / step)
    k1 = floor_frac((hi - offset) / step)
    for k in range(k0, k1 + 1):
        yield offset + k * step


def sqrt_ceil(q: Fraction, den: int) -> Fraction:
    """Smallest k/den with (k/den)**2 >= q, for q >= 0.

    Exact whenever sqrt(q) is itself a multiple of 1/den.
    """
    if q < 0:
        raise ValueError("negative input")
    if q == 0:
        return Fraction(0)
    # need k*k*q.den >= den*den*q.num
    target = -((-(den * den * q.numerator)) // q.denominator)
    k = math.isqrt(target)
    if k * k < target:
        k += 1
    return Fraction(k, den)


def sign(q) -> int:
    return (q > 0) - (q < 0)


def wire(q: Fraction) -> dict:
    """Canonical wire form of a rational: numerator/denominator plus a decimal annotation."""
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator, "decimal": decimal_str(q)}


def decimal_str(q: Fraction, digits: int = 12) -> str:
    q = Fraction(q)
    neg = q < 0
    q = abs(q)
    whole = q.numerator // q.denominator
    scaled = round((q - whole) * 10 ** digits)
    if scaled == 10 ** digits:
        whole += 1
        scaled = 0
    frac = str(scaled).rjust(digits, "0").rstrip("0")
    text = f"{whole}.{frac}" if frac else str(whole)
    return f"-{text}" if neg and text != "0" else text
