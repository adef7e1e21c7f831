"""Compensated (double-word) floating-point arithmetic.

A value is carried as an unevaluated sum ``hi + lo`` of two doubles with
``|lo| <= ulp(hi)/2``, which is worth roughly 32 significant decimal digits.
That headroom is what keeps a fractional frequency shift of order 1e-16
alive through a product like f*t with 1e15 accumulated cycles; in plain
doubles the reduced phase would be pure rounding noise.

The error-free transforms (Dekker splitting, Knuth two-sum) are written so
they work elementwise on numpy arrays as well as on Python floats.  No FMA
is assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_SPLITTER = 134217729.0  # 2^27 + 1, exact in double


def two_sum(a, b):
    """Exact sum: (s, e) with s + e == a + b, s = fl(a + b)."""
    s = a + b
    t = s - a
    return s, (a - (s - t)) + (b - t)


def quick_two_sum(a, b):
    """Exact sum assuming |a| >= |b|."""
    s = a + b
    return s, b - (s - a)


def split(a):
    """Dekker split of a double into two 26/27-bit halves."""
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    """Exact product: (p, e) with p + e == a * b, p = fl(a * b)."""
    p = a * b
    ahi, alo = split(a)
    bhi, blo = split(b)
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def dd_add(xh, xl, yh, yl):
    s, e = two_sum(xh, yh)
    t, f = two_sum(xl, yl)
    s, e = quick_two_sum(s, e + t)
    return quick_two_sum(s, e + f)


def dd_mul(xh, xl, yh, yl):
    p, e = two_prod(xh, yh)
    return quick_two_sum(p, e + (xh * yl + xl * yh))


def dd_mul_double(xh, xl, y):
    p, e = two_prod(xh, y)
    return quick_two_sum(p, e + xl * y)


def dd_div(xh, xl, yh, yl):
    # long division with two refinement terms
    q1 = xh / yh
    th, tl = dd_mul_double(yh, yl, q1)
    rh, rl = dd_add(xh, xl, -th, -tl)
    q2 = rh / yh
    th, tl = dd_mul_double(yh, yl, q2)
    rh, rl = dd_add(rh, rl, -th, -tl)
    q3 = rh / yh
    h, l = quick_two_sum(q1, q2)
    return dd_add(h, l, q3, 0.0)


def dd_frac(xh, xl):
    """Fractional part modulo 1 of a nonnegative double-word value.

    The result is congruent to xh + xl (mod 1) to full double-word
    precision; hi normally lands in [0, 1).  For x >= 0 the subtraction
    x - floor(x) is exact in IEEE double, so no precision is lost even
    when x holds 1e15 whole cycles.
    """
    r = xh - np.floor(xh)
    s, e = two_sum(r, xl)
    adj = np.where(s >= 1.0, -1.0, np.where(s < 0.0, 1.0, 0.0))
    s, e2 = two_sum(s, adj)
    return quick_two_sum(s, e + e2)


@dataclass(frozen=True, slots=True)
class DoubleDouble:
    """Scalar double-word number with operator support.

    Mixed arithmetic with ints/floats promotes the other operand exactly.
    Comparisons use the normalized (hi, lo) ordering.
    """

    hi: float
    lo: float = 0.0

    def __post_init__(self):
        s, e = quick_two_sum(float(self.hi), float(self.lo))
        object.__setattr__(self, "hi", float(s))
        object.__setattr__(self, "lo", float(e))

    @classmethod
    def from_number(cls, x) -> "DoubleDouble":
        if isinstance(x, DoubleDouble):
            return x
        return cls(float(x), 0.0)

    @classmethod
    def from_product(cls, a: float, b: float) -> "DoubleDouble":
        return cls(*two_prod(float(a), float(b)))

    @classmethod
    def from_sum(cls, a: float, b: float) -> "DoubleDouble":
        return cls(*two_sum(float(a), float(b)))

    def __float__(self) -> float:
        return self.hi + self.lo

    def __neg__(self) -> "DoubleDouble":
        return DoubleDouble(-self.hi, -self.lo)

    def __abs__(self) -> "DoubleDouble":
        return -self if self.hi < 0.0 else self

    def __add__(self, other) -> "DoubleDouble":
        o = DoubleDouble.from_number(other)
        return DoubleDouble(*dd_add(self.hi, self.lo, o.hi, o.lo))

    __radd__ = __add__

    def __sub__(self, other) -> "DoubleDouble":
        return self + (-DoubleDouble.from_number(other))

    def __rsub__(self, other) -> "DoubleDouble":
        return (-self) + other

    def __mul__(self, other) -> "DoubleDouble":
        o = DoubleDouble.from_number(other)
        return DoubleDouble(*dd_mul(self.hi, self.lo, o.hi, o.lo))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "DoubleDouble":
        o = DoubleDouble.from_number(other)
        return DoubleDouble(*dd_div(self.hi, self.lo, o.hi, o.lo))

    def __rtruediv__(self, other) -> "DoubleDouble":
        return DoubleDouble.from_number(other) / self

    def _key(self):
        return (self.hi, self.lo)

    def __eq__(self, other) -> bool:
        return self._key() == DoubleDouble.from_number(other)._key()

    def __lt__(self, other) -> bool:
        return self._key() < DoubleDouble.from_number(other)._key()

    def __le__(self, other) -> bool:
        return self._key() <= DoubleDouble.from_number(other)._key()

    def __gt__(self, other) -> bool:
        return self._key() > DoubleDouble.from_number(other)._key()

    def __ge__(self, other) -> bool:
        return self._key() >= DoubleDouble.from_number(other)._key()

    def __hash__(self):
        return hash(self._key())

    def frac(self) -> "DoubleDouble":
        """Fractional part mod 1 (value must be nonnegative)."""
        if self.hi < 0.0:
            raise ValueError("frac() requires a nonnegative value")
        return DoubleDouble(*dd_frac(self.hi, self.lo))

    def __repr__(self) -> str:
        return f"DoubleDouble({self.hi!r}, {self.lo!r})"


# 2*pi split into an exact double pair (hi = fl(2*pi), lo = remainder)
TWO_PI = DoubleDouble(6.283185307179586, 2.4492935982947064e-16)
PI = DoubleDouble(3.141592653589793, 1.2246467991473532e-16)


@dataclass(frozen=True, slots=True)
class ExtendedPhase:
    """Accumulated phase in radians, held as a double-word pair.

    Keeps the relative representation error of the accumulated phase
    below 1e-30 so that 1e-16 fractional shifts survive reduction
    modulo 2*pi.
    """

    hi: float
    lo: float = 0.0

    def __post_init__(self):
        s, e = quick_two_sum(float(self.hi), float(self.lo))
        object.__setattr__(self, "hi", float(s))
        object.__setattr__(self, "lo", float(e))

    @classmethod
    def from_radians(cls, x: float) -> "ExtendedPhase":
        return cls(float(x), 0.0)

    @classmethod
    def from_cycles(cls, cycles) -> "ExtendedPhase":
        """Phase of a (possibly huge) nonnegative cycle count, reduced mod 2*pi."""
        c = DoubleDouble.from_number(cycles).frac()
        return cls(*dd_mul(c.hi, c.lo, TWO_PI.hi, TWO_PI.lo))

    def __add__(self, other: "ExtendedPhase") -> "ExtendedPhase":
        return ExtendedPhase(*dd_add(self.hi, self.lo, other.hi, other.lo))

    def reduced(self) -> "ExtendedPhase":
        """Equivalent phase with hi folded into [0, 2*pi)."""
        turns = DoubleDouble(self.hi, self.lo) / TWO_PI
        return ExtendedPhase.from_cycles(turns)

    @property
    def radians(self) -> float:
        return self.hi + self.lo

    def __float__(self) -> float:
        return self.radians

    def phasor(self) -> complex:
        """exp(i * phase) evaluated from the reduced angle."""
        r = self.reduced().radians
        return complex(math.cos(r), math.sin(r))


def fractional_cycles(f: DoubleDouble, t) -> np.ndarray:
    """Fractional part of f*t cycles, elementwise over an array of times.

    f is a double-word frequency; t a float array (or scalar) of
    nonnegative durations.  Returns plain float64 fractions in [0, 1):
    after the exact mod-1 reduction a single rounding to double costs
    ~1e-16 cycles, which is harmless downstream.
    """
    t = np.asarray(t, dtype=float)
    ph, pl = two_prod(f.hi, t)
    h, l = quick_two_sum(ph, pl + f.lo * t)
    fh, fl = dd_frac(h, l)
    out = fh + fl
    # fold the representative into [0, 1) for cosmetic consistency
    return np.where(out >= 1.0, out - 1.0, np.where(out < 0.0, out + 1.0, out))
