"""Why the phase arithmetic is double-word, shown the hard way.

An optical clock at ~5e14 Hz accumulates 1e15 cycles in two seconds.
Reducing 2*pi*f*t modulo 2*pi in plain float64 is then meaningless: the
product carries a relative error of ~1e-16, i.e. a fraction of a cycle.
The compensated (hi/lo) path splits the cycle count exactly into integer
plus fraction, so the reduced phase keeps ~1e-16 rad accuracy no matter
how many cycles went by, and a 1e-16 fractional frequency shift stays
a measurable signal instead of rounding noise.
"""

import math

import mpmath as mp

from clockbeat import DoubleDouble, ExtendedPhase

mp.mp.prec = 200

f_hz = 429228004229873.0  # optical-scale frequency, not a dyadic number
t_s = 1.7

# ground truth at 200-bit precision
cycles_exact = mp.mpf(f_hz) * mp.mpf(t_s)
phase_exact = float(mp.fmod(cycles_exact, 1) * 2 * mp.pi)

# naive float64 reduction
naive = math.fmod(f_hz * t_s, 1.0) * 2 * math.pi

# compensated reduction
compensated = ExtendedPhase.from_cycles(DoubleDouble.from_product(f_hz, t_s)).reduced()

print(f"cycles elapsed:        {float(cycles_exact):.6e}")
print(f"true reduced phase:    {phase_exact:.16f} rad")
print(f"float64 reduction:     {naive:.16f} rad   (error {abs(naive - phase_exact):.2e})")
print(
    f"double-word reduction: {compensated.radians:.16f} rad   "
    f"(error {abs(compensated.radians - phase_exact):.2e})"
)

# a 1.1e-16 fractional shift on a 1 GHz beat: invisible to float64 sums,
# exact in double-word arithmetic
eps = 1.1e-16
beat = 1.0e9
plain = beat * (1.0 + eps) - beat
dw = float(DoubleDouble.from_number(beat) * (DoubleDouble.from_number(1.0) + eps) - beat)
print(f"\nbeat shift eps = {eps:g} on {beat:.0e} Hz:")
print(f"  float64:     {plain!r} Hz (the shift has vanished)" if plain == 0 else f"  float64:     {plain!r} Hz")
print(f"  double-word: {dw!r} Hz (expected {eps * beat!r})")
