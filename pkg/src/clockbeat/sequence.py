"""Ramsey sequences on the two-clock qutrit and their data products.

A run is: prepare the three-way superposition, hold for the
interrogation time while both clocks wind, close with the exact inverse
of the preparation pulses (both carrying a common extra drive phase),
measure the three populations.  Scanning that closing phase over
[0, 2*pi) traces an interference fringe in each population channel;
the ground channel is a single harmonic

    p_g(phi) = (1 + c^2)/4 + (c/2) * cos(phi + carrier)      [tripod]

with c = cos(pi * (f2-f1) * t), so the fitted fringe amplitude measures
the clock overlap directly.  The optical carrier phase is absorbed into
the fringe phase origin; nothing here ever scans time through an
optical cycle.

Everything is deterministic: noiseless scans are pure functions, and
sampled scans draw from counter-based streams keyed by (seed, phase
index, scan index, replicate), so thread count and evaluation order
cannot change a single byte of output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ddouble import fractional_cycles
from .dynamics import (
    ClockFrequencies,
    DensityMatrix3,
    QutritState,
    preparation_pulses,
    pulse_matrix,
)
from .noise import NoiseConfig, apply_decoherence, counter_stream, sample_shots, trap_survival

PREPARATIONS = ("tripod", "double_pi_half")

_TWO_PI = 2.0 * math.pi

CHANNELS = {"ground": 0, "c1": 1, "c2": 2}


@dataclass(frozen=True)
class RamseySequence:
    """One interferometer run: preparation, hold time, closing phase."""

    freqs: ClockFrequencies
    interrogation_s: float = 0.0
    closing_phase: float = 0.0
    prep: str = "tripod"

    def __post_init__(self):
        if self.prep not in PREPARATIONS:
            raise ValueError(f"prep must be one of {PREPARATIONS}, got {self.prep!r}")
        if self.interrogation_s < 0.0:
            raise ValueError(
                f"interrogation_s must be nonnegative, got {self.interrogation_s!r}"
            )
        if not math.isfinite(self.closing_phase):
            raise ValueError("closing_phase must be finite")


@dataclass(frozen=True)
class FringeDataset:
    """Populations versus closing phase at one interrogation time.

    probabilities has shape (n_phases, 3) ordered (ground, c1, c2).
    In sampled mode shot_counts holds the integer triples and
    probabilities are the observed frequencies; each count row sums to
    the atoms that survived the trap at that point.
    """

    interrogation_s: float
    phases: np.ndarray
    probabilities: np.ndarray
    shot_counts: np.ndarray | None = None

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=float)
        probs = np.asarray(self.probabilities, dtype=float)
        if phases.ndim != 1 or probs.shape != (phases.size, 3):
            raise ValueError("phases must be (n,), probabilities (n, 3)")
        if np.any(np.diff(phases) <= 0.0):
            raise ValueError("phases must be strictly increasing")
        if phases[0] < 0.0 or phases[-1] >= _TWO_PI:
            raise ValueError("phases must lie in [0, 2*pi)")
        if np.max(np.abs(probs.sum(axis=1) - 1.0)) > 1e-12:
            raise ValueError("each probability triple must sum to 1 within 1e-12")
        phases.setflags(write=False)
        probs.setflags(write=False)
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "probabilities", probs)
        if self.shot_counts is not None:
            counts = np.asarray(self.shot_counts, dtype=np.int64)
            if counts.shape != probs.shape:
                raise ValueError("shot_counts must match probabilities in shape")
            counts.setflags(write=False)
            object.__setattr__(self, "shot_counts", counts)

    def channel(self, name: str) -> np.ndarray:
        try:
            return self.probabilities[:, CHANNELS[name]]
        except KeyError:
            raise ValueError(
                f"unknown channel {name!r}; expected one of {sorted(CHANNELS)}"
            ) from None

    @property
    def points(self) -> list[tuple[float, float, float, float]]:
        return [
            (float(ph), float(p[0]), float(p[1]), float(p[2]))
            for ph, p in zip(self.phases, self.probabilities)
        ]


@dataclass(frozen=True)
class VisibilityCurve:
    """Fitted fringe visibility against interrogation time."""

    times: np.ndarray
    visibility: np.ndarray
    fit_residual: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.visibility, dtype=float)
        r = np.asarray(self.fit_residual, dtype=float)
        if not (t.shape == v.shape == r.shape) or t.ndim != 1:
            raise ValueError("times, visibility, fit_residual must be equal 1-d arrays")
        if np.any(np.diff(t) <= 0.0):
            raise ValueError("times must be strictly increasing")
        if v.min() < 0.0 or v.max() > 1.0 + 1e-6:
            raise ValueError("visibility must lie in [0, 1 + 1e-6]")
        for arr in (t, v, r):
            arr.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "visibility", v)
        object.__setattr__(self, "fit_residual", r)

    @property
    def entries(self) -> list[tuple[float, float, float]]:
        return [
            (float(tt), float(vv), float(rr))
            for tt, vv, rr in zip(self.times, self.visibility, self.fit_residual)
        ]

    def __len__(self) -> int:
        return int(self.times.size)


def _prepared_vector(prep: str) -> np.ndarray:
    state = QutritState.ground()
    for pulse in preparation_pulses(prep):
        state = QutritState.from_vector(pulse_matrix(pulse) @ state.vector())
    return state.vector()


def _closing_matrices(prep: str, phis: np.ndarray) -> np.ndarray:
    """Batch of closing unitaries, one per scanned phase; shape (P, 3, 3).

    The closing block is the exact inverse of the preparation with the
    common extra phase phi on both drive fields, i.e. each preparation
    pulse inverted (phase + pi + phi) and applied in reverse order.
    """
    phis = np.asarray(phis, dtype=float)
    out = np.broadcast_to(np.eye(3, dtype=complex), (phis.size, 3, 3)).copy()
    for pulse in reversed(preparation_pulses(prep)):
        c = math.cos(pulse.angle / 2.0)
        s = math.sin(pulse.angle / 2.0)
        k = pulse.transition.excited_index
        drive = pulse.phase + math.pi + phis
        m = np.zeros((phis.size, 3, 3), dtype=complex)
        m[:, 0, 0] = c
        m[:, k, k] = c
        m[:, 3 - k, 3 - k] = 1.0
        m[:, 0, k] = -1j * np.exp(-1j * drive) * s
        m[:, k, 0] = -1j * np.exp(1j * drive) * s
        out = m @ out
    return out


def _arm_phasors(freqs: ClockFrequencies, times) -> tuple[np.ndarray, np.ndarray]:
    """exp(-i 2 pi f t) for both clocks over an array of times."""
    f1 = fractional_cycles(freqs.f1, times)
    f2 = fractional_cycles(freqs.f2, times)
    return np.exp(-2j * math.pi * f1), np.exp(-2j * math.pi * f2)


def _scan_probabilities(
    seq: RamseySequence, phis: np.ndarray, noise: NoiseConfig | None
) -> np.ndarray:
    """Exact populations for every closing phase; shape (P, 3)."""
    psi = _prepared_vector(seq.prep)
    u1, u2 = _arm_phasors(seq.freqs, seq.interrogation_s)
    closing = _closing_matrices(seq.prep, phis)
    if noise is not None and noise.has_decoherence:
        evolved = psi * np.array([1.0, complex(u1), complex(u2)])
        rho = DensityMatrix3.from_pure(QutritState.from_vector(evolved))
        rho = apply_decoherence(rho, seq.interrogation_s, noise)
        probs = np.einsum("pij,jk,pik->pi", closing, rho.rho, closing.conj()).real
    else:
        evolved = psi * np.array([1.0, complex(u1), complex(u2)])
        amps = np.einsum("pij,j->pi", closing, evolved)
        probs = np.abs(amps) ** 2
    # scrub rounding residue so conservation holds exactly
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum(axis=1, keepdims=True)


def run_sequence(
    seq: RamseySequence, noise: NoiseConfig | None = None
) -> tuple[float, float, float]:
    """Exact populations (p_g, p_c1, p_c2) after one full sequence.

    With a NoiseConfig carrying finite lifetimes, the hold evolves a
    density matrix through the decoherence channels; probabilities are
    still exact (no sampling here).
    """
    probs = _scan_probabilities(seq, np.array([seq.closing_phase % _TWO_PI]), noise)[0]
    return (float(probs[0]), float(probs[1]), float(probs[2]))


def phase_scan(
    seq: RamseySequence,
    n_phases: int,
    noise: NoiseConfig | None = None,
    scan_index: int = 0,
    replicate: int = 0,
) -> FringeDataset:
    """Fringe over n_phases equally spaced closing phases in [0, 2*pi).

    Noiseless scans are exact and deterministic.  When noise carries a
    finite atom count, each point is a multinomial draw from its own
    counter-based stream; with a finite trap lifetime the atom budget at
    each point is first thinned binomially.
    """
    if n_phases < 8:
        raise ValueError(f"n_phases must be >= 8 for an identifiable fit, got {n_phases}")
    phis = np.arange(n_phases) * (_TWO_PI / n_phases)
    probs = _scan_probabilities(seq, phis, noise)

    counts = None
    if noise is not None and noise.atoms_per_point is not None:
        survival = trap_survival(seq.interrogation_s, noise)
        counts = np.empty((n_phases, 3), dtype=np.int64)
        sampled = np.empty_like(probs)
        for i in range(n_phases):
            stream = counter_stream(noise.seed, i, scan_index, replicate)
            n_atoms = noise.atoms_per_point
            if survival < 1.0:
                n_atoms = int(stream.binomial(n_atoms, survival))
            if n_atoms == 0:
                raise ValueError(
                    f"all atoms lost at scan point {i} "
                    f"(t = {seq.interrogation_s!r} s); shorten the interrogation "
                    "or raise atoms_per_point"
                )
            counts[i] = sample_shots(probs[i], n_atoms, stream)
            sampled[i] = counts[i] / counts[i].sum()
        probs = sampled

    return FringeDataset(
        interrogation_s=seq.interrogation_s,
        phases=phis,
        probabilities=probs,
        shot_counts=counts,
    )


def reference_amplitude(seq_template: RamseySequence, n_phases: int = 64) -> float:
    """Noiseless t = 0 fitted fringe amplitude for this preparation.

    This is the normalization used by amplitude visibility: 0.5 for the
    tripod preparation, 0.75 for the literal double pi/2 pair.
    """
    from .fringes import fit_fringe

    base = RamseySequence(
        freqs=seq_template.freqs, interrogation_s=0.0, prep=seq_template.prep
    )
    return fit_fringe(phase_scan(base, n_phases), "ground").amplitude


def visibility_curve(
    seq_template: RamseySequence,
    t_grid,
    n_phases: int = 64,
    noise: NoiseConfig | None = None,
    scan_index_offset: int = 0,
    replicate: int = 0,
) -> VisibilityCurve:
    """Phase-scan and fit the ground fringe at every time in t_grid.

    Returns amplitude-normalized visibility (fitted amplitude over its
    noiseless t = 0 value) with the per-point fit rms residual.  Exact
    scans run through one vectorized least-squares solve; sampled or
    decoherent scans fall back to per-point scans.  A fit failure is
    re-raised with the offending time attached.
    """
    from . import fringes

    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("t_grid must be a nonempty 1-d array")
    if np.any(np.diff(t) <= 0.0):
        raise ValueError("t_grid must be strictly increasing")
    if t[0] < 0.0:
        raise ValueError("t_grid times must be nonnegative")
    if n_phases < 8:
        raise ValueError(f"n_phases must be >= 8, got {n_phases}")

    ref = reference_amplitude(seq_template, n_phases)
    phis = np.arange(n_phases) * (_TWO_PI / n_phases)

    stochastic = noise is not None and (
        noise.atoms_per_point is not None or noise.has_decoherence
    )
    if not stochastic:
        psi = _prepared_vector(seq_template.prep)
        u1, u2 = _arm_phasors(seq_template.freqs, t)
        evolved = np.empty((t.size, 3), dtype=complex)
        evolved[:, 0] = psi[0]
        evolved[:, 1] = psi[1] * u1
        evolved[:, 2] = psi[2] * u2
        closing = _closing_matrices(seq_template.prep, phis)
        amps = np.einsum("pij,tj->tpi", closing, evolved)
        ground = np.abs(amps[:, :, 0]) ** 2
        _, amplitude, _, rms = fringes.fit_fringe_batch(phis, ground)
        vis = np.clip(amplitude / ref, 0.0, 1.0 + 1e-6)
        return VisibilityCurve(times=t, visibility=vis, fit_residual=rms)

    vis = np.empty(t.size)
    rms = np.empty(t.size)
    for i, ti in enumerate(t):
        seq = RamseySequence(
            freqs=seq_template.freqs,
            interrogation_s=float(ti),
            prep=seq_template.prep,
        )
        data = phase_scan(
            seq, n_phases, noise, scan_index=scan_index_offset + i, replicate=replicate
        )
        try:
            fit = fringes.fit_fringe(data, "ground")
        except Exception as exc:
            raise fringes.FitError(f"fringe fit failed at t = {ti!r} s: {exc}") from exc
        vis[i] = fringes.visibility_amp(fit, ref)
        rms[i] = fit.rms_residual
    return VisibilityCurve(times=t, visibility=vis, fit_residual=rms)
