"""Three-level (qutrit) states, clock pulses, and free evolution.

Level scheme::

        -------- |c2>   upper clock state, g <-> c2 at f2
        -------- |c1>   lower clock state, g <-> c1 at f1 < f2
           |
        -------- |g>    shared ground state

Both optical transitions start from the same ground state, so an atom
prepared in a three-way superposition runs two clocks at once.  During
free evolution each clock amplitude winds at its own transition
frequency; the beat f2 - f1 between the two windings is the observable
that everything downstream (fringe visibility, redshift comparisons)
hangs off.

Pulse convention: a resonant pulse of area theta and drive phase phi on
the {g, k} subspace maps |g> -> cos(theta/2)|g> - i e^{i phi} sin(theta/2)|k>,
i.e. a rotation exp(-i theta/2 (cos phi sx + sin phi sy)) on that
subspace.  A second pulse with phi + pi undoes the first.

All operations are pure: they accept immutable values and return new
ones, so states are freely shareable across threads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .ddouble import DoubleDouble, ExtendedPhase

NORM_TOL = 1e-9
_TWO_PI = 2.0 * math.pi

# preparation angles hitting populations (g, c1, c2) = (0.5, 0.25, 0.25):
# sin^2(pi/6) = 1/4 moves a quarter to c1, then 2*asin(1/sqrt(3)) moves
# a third of the remaining 3/4 to c2.
TRIPOD_ANGLE_C1 = math.pi / 3.0
TRIPOD_ANGLE_C2 = 2.0 * math.asin(1.0 / math.sqrt(3.0))


class Transition(Enum):
    """Which two-level subspace a pulse drives."""

    G_C1 = 1
    G_C2 = 2

    @property
    def excited_index(self) -> int:
        return self.value


@dataclass(frozen=True, slots=True)
class PulseSpec:
    """Resonant rotation on one clock transition.

    angle is the pulse area in [0, 2*pi]; phase the drive phase in
    [0, 2*pi).
    """

    transition: Transition
    angle: float
    phase: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.angle <= _TWO_PI:
            raise ValueError(f"pulse angle {self.angle} outside [0, 2*pi]")
        if not 0.0 <= self.phase < _TWO_PI:
            raise ValueError(f"pulse phase {self.phase} outside [0, 2*pi)")

    def inverse(self, extra_phase: float = 0.0) -> "PulseSpec":
        """Pulse undoing this one, with an optional common phase offset."""
        return PulseSpec(
            self.transition,
            self.angle,
            (self.phase + math.pi + extra_phase) % _TWO_PI,
        )


@dataclass(frozen=True, slots=True)
class QutritState:
    """Pure state over {|g>, |c1>, |c2>} as three complex amplitudes."""

    amp_g: complex
    amp_c1: complex
    amp_c2: complex

    @classmethod
    def ground(cls) -> "QutritState":
        return cls(1.0 + 0.0j, 0.0j, 0.0j)

    @classmethod
    def from_vector(cls, vec) -> "QutritState":
        v = np.asarray(vec, dtype=complex).reshape(3)
        return cls(complex(v[0]), complex(v[1]), complex(v[2]))

    def vector(self) -> np.ndarray:
        return np.array([self.amp_g, self.amp_c1, self.amp_c2], dtype=complex)

    def norm(self) -> float:
        return math.sqrt(
            abs(self.amp_g) ** 2 + abs(self.amp_c1) ** 2 + abs(self.amp_c2) ** 2
        )

    def populations(self) -> tuple[float, float, float]:
        return (
            abs(self.amp_g) ** 2,
            abs(self.amp_c1) ** 2,
            abs(self.amp_c2) ** 2,
        )


class ClockFrequencies:
    """Pair of clock transition frequencies in Hz, stored double-word.

    The double-word storage is what lets a frequency carry a 1e-16
    fractional shift: plain float64 would round it away.  f2 must exceed
    f1 (the upper clock ticks faster), both positive.
    """

    __slots__ = ("_f1", "_f2")

    def __init__(self, f1_hz, f2_hz):
        f1 = DoubleDouble.from_number(f1_hz)
        f2 = DoubleDouble.from_number(f2_hz)
        if not (f2 > f1 > DoubleDouble.from_number(0.0)):
            raise ValueError(
                f"requires f2_hz > f1_hz > 0, got f1={float(f1)!r}, f2={float(f2)!r}"
            )
        self._f1 = f1
        self._f2 = f2

    @property
    def f1(self) -> DoubleDouble:
        return self._f1

    @property
    def f2(self) -> DoubleDouble:
        return self._f2

    @property
    def f1_hz(self) -> float:
        return float(self._f1)

    @property
    def f2_hz(self) -> float:
        return float(self._f2)

    @property
    def delta_f(self) -> DoubleDouble:
        return self._f2 - self._f1

    @property
    def delta_f_hz(self) -> float:
        return float(self.delta_f)

    @property
    def mean_hz(self) -> float:
        return float((self._f1 + self._f2) / 2.0)

    def scaled(self, factor) -> "ClockFrequencies":
        """Both frequencies multiplied by a common (double-word) factor."""
        k = DoubleDouble.from_number(factor)
        return ClockFrequencies(self._f1 * k, self._f2 * k)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ClockFrequencies)
            and self._f1 == other._f1
            and self._f2 == other._f2
        )

    def __hash__(self):
        return hash((self._f1, self._f2))

    def __repr__(self) -> str:
        return f"ClockFrequencies(f1_hz={self.f1_hz!r}, f2_hz={self.f2_hz!r})"


@dataclass(frozen=True)
class DensityMatrix3:
    """3x3 density matrix for the qutrit, used once decoherence is on.

    Validated on construction: Hermitian and unit trace to 1e-12,
    eigenvalues above -1e-10.
    """

    rho: np.ndarray

    def __post_init__(self):
        r = np.array(self.rho, dtype=complex)
        if r.shape != (3, 3):
            raise ValueError(f"density matrix must be 3x3, got {r.shape}")
        if np.max(np.abs(r - r.conj().T)) > 1e-12:
            raise ValueError("density matrix is not Hermitian within 1e-12")
        if abs(np.trace(r).real - 1.0) > 1e-12 or abs(np.trace(r).imag) > 1e-12:
            raise ValueError("density matrix trace differs from 1 by more than 1e-12")
        if np.linalg.eigvalsh((r + r.conj().T) / 2.0).min() < -1e-10:
            raise ValueError("density matrix has an eigenvalue below -1e-10")
        r.setflags(write=False)
        object.__setattr__(self, "rho", r)

    @classmethod
    def from_pure(cls, state: QutritState) -> "DensityMatrix3":
        v = state.vector()
        return cls(np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls) -> "DensityMatrix3":
        return cls(np.eye(3, dtype=complex) / 3.0)

    def apply_unitary(self, u: np.ndarray) -> "DensityMatrix3":
        return DensityMatrix3(u @ self.rho @ u.conj().T)

    def populations(self) -> tuple[float, float, float]:
        d = np.diag(self.rho).real
        return (float(d[0]), float(d[1]), float(d[2]))


def pulse_matrix(pulse: PulseSpec) -> np.ndarray:
    """3x3 unitary of a resonant pulse, identity on the spectator level."""
    c = math.cos(pulse.angle / 2.0)
    s = math.sin(pulse.angle / 2.0)
    k = pulse.transition.excited_index
    m = np.eye(3, dtype=complex)
    m[0, 0] = c
    m[k, k] = c
    m[0, k] = -1j * cmath.exp(-1j * pulse.phase) * s
    m[k, 0] = -1j * cmath.exp(1j * pulse.phase) * s
    return m


def _require_normalized(state: QutritState) -> None:
    if abs(state.norm() - 1.0) > NORM_TOL:
        raise ValueError(
            f"state norm {state.norm()!r} deviates from 1 by more than {NORM_TOL}"
        )


def two_level_pulse(state: QutritState, pulse: PulseSpec) -> QutritState:
    """Apply a resonant pulse on the selected transition.

    Rotation by pulse.angle about the equatorial Bloch axis set by
    pulse.phase, acting on {ground, selected clock state}; the third
    amplitude is untouched.  Rejects states whose norm is off by more
    than 1e-9.
    """
    _require_normalized(state)
    return QutritState.from_vector(pulse_matrix(pulse) @ state.vector())


def preparation_pulses(kind: str) -> tuple[PulseSpec, ...]:
    """Opening pulse pair for a named preparation.

    "tripod" targets populations (0.5, 0.25, 0.25); "double_pi_half" is
    the literal pair of pi/2 pulses, which lands on (0.25, 0.5, 0.25).
    """
    if kind == "tripod":
        return (
            PulseSpec(Transition.G_C1, TRIPOD_ANGLE_C1, 0.0),
            PulseSpec(Transition.G_C2, TRIPOD_ANGLE_C2, 0.0),
        )
    if kind == "double_pi_half":
        return (
            PulseSpec(Transition.G_C1, math.pi / 2.0, 0.0),
            PulseSpec(Transition.G_C2, math.pi / 2.0, 0.0),
        )
    raise ValueError(f"unknown preparation {kind!r}; use 'tripod' or 'double_pi_half'")


def tripod_split(state: QutritState) -> QutritState:
    """Split a ground-state atom into the (0.5, 0.25, 0.25) superposition.

    Requires the input to be the pure ground state (up to global phase).
    """
    _require_normalized(state)
    if abs(state.amp_g) ** 2 < 1.0 - NORM_TOL:
        raise ValueError("tripod_split requires the pure ground state as input")
    for pulse in preparation_pulses("tripod"):
        state = two_level_pulse(state, pulse)
    return state


def free_evolve(
    state: QutritState, duration_s: float, freqs: ClockFrequencies
) -> QutritState:
    """Free evolution: each clock amplitude winds at its own frequency.

    amp_c1 picks up e^{-i 2 pi f1 t}, amp_c2 e^{-i 2 pi f2 t}; the ground
    amplitude is the phase reference and stays put.  Cycle counts are
    reduced modulo one in double-word arithmetic before the angle is
    formed, so the result stays meaningful beyond 1e15 cycles.
    """
    if duration_s < 0.0:
        raise ValueError(f"duration_s must be nonnegative, got {duration_s!r}")
    a1 = ExtendedPhase.from_cycles(freqs.f1 * duration_s)
    a2 = ExtendedPhase.from_cycles(freqs.f2 * duration_s)
    return QutritState(
        state.amp_g,
        state.amp_c1 * cmath.exp(-1j * a1.radians),
        state.amp_c2 * cmath.exp(-1j * a2.radians),
    )


def beat_cycles(freqs: ClockFrequencies, t) -> DoubleDouble:
    """Fractional beat cycles (f2 - f1) * t mod 1, in double-word precision.

    Accepts t as a float or DoubleDouble; the double-word path is what
    resolves null positions to 1e-16 fractional accuracy and beyond.
    """
    td = DoubleDouble.from_number(t)
    return (freqs.delta_f * td).frac()


def clock_overlap(freqs: ClockFrequencies, t) -> float:
    """|<clock1|clock2>| after both hands have run for time t.

    Two equatorial Bloch vectors separated by angle 2 pi (f2-f1) t have
    overlap |cos(pi (f2-f1) t)|: unity at t = 0, zero at half a beat
    period where the clocks are orthogonal, back to unity after a full
    period.
    """
    if isinstance(t, DoubleDouble):
        if t.hi < 0.0:
            raise ValueError("t must be nonnegative")
    elif t < 0.0:
        raise ValueError("t must be nonnegative")
    frac = float(beat_cycles(freqs, t))
    return abs(math.cos(math.pi * frac))


def populations(state) -> tuple[float, float, float]:
    """Diagonal probabilities (p_g, p_c1, p_c2) of a state or density matrix."""
    if isinstance(state, (QutritState, DensityMatrix3)):
        return state.populations()
    raise TypeError(f"expected QutritState or DensityMatrix3, got {type(state)!r}")
