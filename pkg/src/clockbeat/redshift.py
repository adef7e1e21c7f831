"""Gravitational frequency shifts of the clock pair.

To lowest order in 1/c^2, raising a clock by delta_h in a field g
multiplies every transition frequency by (1 + eps) with
eps = g * delta_h / c^2: about 1.1e-16 per metre on Earth.  Both clock
frequencies and their beat scale by the same factor, so the clock ratio
f2/f1 is untouched while the beat period contracts by 1/(1 + eps).

eps is formed and applied in double-word arithmetic: at 1e-16 the shift
would not survive a plain float64 (1 + eps).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ddouble import DoubleDouble
from .dynamics import ClockFrequencies

SPEED_OF_LIGHT_M_S = 2.99792458e8  # exact by definition

MAX_LOWEST_ORDER_EPS = 1e-3


@dataclass(frozen=True, slots=True)
class RedshiftContext:
    """Local gravity, height difference, and the fixed speed of light."""

    g_m_s2: float
    delta_h_m: float
    c_m_s: float = SPEED_OF_LIGHT_M_S

    def __post_init__(self):
        if not self.g_m_s2 > 0.0:
            raise ValueError(f"g_m_s2 must be positive, got {self.g_m_s2!r}")
        if not math.isfinite(self.delta_h_m):
            raise ValueError(f"delta_h_m must be finite, got {self.delta_h_m!r}")
        if self.c_m_s != SPEED_OF_LIGHT_M_S:
            raise ValueError("c_m_s is a fixed constant and cannot be overridden")


def redshift_factor(ctx: RedshiftContext, c_squared: float | None = None) -> DoubleDouble:
    """Fractional frequency shift eps = g * delta_h / c^2, double-word.

    c_squared overrides the denominator for coarse, round-number
    comparisons (e.g. c^2 = 9e16 gives 1.089e-16 per metre instead of
    the exact 1.090e-16); by default the exact constant is squared
    without rounding.
    """
    num = DoubleDouble.from_product(ctx.g_m_s2, ctx.delta_h_m)
    if c_squared is None:
        c2 = DoubleDouble.from_product(ctx.c_m_s, ctx.c_m_s)
    else:
        c2 = DoubleDouble.from_number(c_squared)
    return num / c2


def shift_frequencies(freqs: ClockFrequencies, eps) -> ClockFrequencies:
    """Apply a common fractional shift to both clock frequencies.

    Returns frequencies f * (1 + eps) with the multiply carried out
    double-word, so the shifted beat satisfies
    (f2' - f1')/(f2 - f1) = 1 + eps to ~1e-30 relative.  |eps| >= 1e-3
    is rejected: there the lowest-order formula is meaningless and
    exaggerated comparisons should scale frequencies directly.
    """
    e = DoubleDouble.from_number(eps)
    if abs(float(e)) >= MAX_LOWEST_ORDER_EPS:
        raise ValueError(
            f"|eps| = {abs(float(e))!r} is outside the lowest-order regime "
            f"(< {MAX_LOWEST_ORDER_EPS}); use ClockFrequencies.scaled for "
            "exaggerated dimensionless runs"
        )
    return freqs.scaled(DoubleDouble.from_number(1.0) + e)
