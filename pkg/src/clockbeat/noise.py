"""Projection noise and coherence-time limits.

Finite atom number turns each measured population triple into a
multinomial draw (quantum projection noise).  Draws come from
counter-based Philox streams keyed by (seed, phase index, scan index,
replicate), so a point's counts never depend on evaluation order and
parallel runs reproduce serial ones bit for bit.

Coherence ceilings are modeled as three independent exponential
channels: common dephasing of the ground state against both clock
states (lifetime tau_coherence_s), clock-state decay back to ground
(tau_clock_s, trace-preserving amplitude damping), and trap loss
(tau_trap_s), which removes atoms without touching the state of the
survivors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import DensityMatrix3


@dataclass(frozen=True, slots=True)
class NoiseConfig:
    """Atom budget, RNG seed, and the three exponential lifetimes.

    atoms_per_point = None means exact (infinite-atom) probabilities;
    lifetimes may be math.inf to switch a channel off.
    """

    atoms_per_point: int | None = None
    seed: int = 0
    tau_coherence_s: float = math.inf
    tau_clock_s: float = math.inf
    tau_trap_s: float = math.inf

    def __post_init__(self):
        if self.atoms_per_point is not None and self.atoms_per_point < 1:
            raise ValueError(f"atoms_per_point must be >= 1, got {self.atoms_per_point}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        for name in ("tau_coherence_s", "tau_clock_s", "tau_trap_s"):
            tau = getattr(self, name)
            if not tau > 0.0:
                raise ValueError(f"{name} must be positive (inf allowed), got {tau!r}")

    @property
    def has_decoherence(self) -> bool:
        return math.isfinite(self.tau_coherence_s) or math.isfinite(self.tau_clock_s)


def counter_stream(seed: int, *indices: int) -> np.random.Generator:
    """Philox generator at a fixed (seed, indices) counter position.

    Up to four indices; the same arguments always yield the same stream,
    independent of how many other streams were consumed elsewhere.
    """
    if len(indices) > 4:
        raise ValueError("at most four stream indices are supported")
    counter = [0, 0, 0, 0]
    for i, ix in enumerate(indices):
        if not 0 <= ix < 2**64:
            raise ValueError(f"stream index {ix!r} outside uint64 range")
        counter[i] = ix
    bitgen = np.random.Philox(key=np.array([seed, 0], dtype=np.uint64),
                              counter=np.array(counter, dtype=np.uint64))
    return np.random.Generator(bitgen)


def sample_shots(probs, n: int, stream: np.random.Generator) -> tuple[int, int, int]:
    """Multinomial projection-noise draw of n atoms over three outcomes.

    probs must sum to 1 within 1e-9; components down to -1e-12 are
    tolerated (fit jitter) and clipped.  Counts always sum to n.
    """
    p = np.asarray(probs, dtype=float)
    if p.shape != (3,):
        raise ValueError(f"expected three probabilities, got shape {p.shape}")
    if p.min() < -1e-12:
        raise ValueError(f"negative probability {p.min()!r} beyond tolerance")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {p.sum()!r}, not 1 within 1e-9")
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = np.clip(p, 0.0, None)
    p /= p.sum()
    counts = stream.multinomial(n, p)
    return (int(counts[0]), int(counts[1]), int(counts[2]))


def trap_survival(t: float, cfg: NoiseConfig) -> float:
    """Fraction of atoms still trapped after time t."""
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    return math.exp(-t / cfg.tau_trap_s)


def apply_decoherence(rho: DensityMatrix3, t: float, cfg: NoiseConfig) -> DensityMatrix3:
    """Dephasing and clock decay integrated over a hold time t.

    Ground-clock coherences shrink by exp(-t/tau_coherence_s): the noise
    is a random phase common to both optical transitions, so the
    clock-clock coherence is untouched by it.  Clock populations decay
    to ground with probability 1 - exp(-t/tau_clock_s) through two
    amplitude-damping channels (one per clock state), which also costs
    sqrt(1-p) on ground-clock and (1-p) on clock-clock coherences.
    Trace is preserved; trap loss is *not* applied here (it scales atom
    number, not the state: see trap_survival).
    """
    if not isinstance(rho, DensityMatrix3):
        raise TypeError(f"expected DensityMatrix3, got {type(rho)!r}")
    if t < 0.0:
        raise ValueError("t must be nonnegative")

    p_decay = -math.expm1(-t / cfg.tau_clock_s)
    keep = 1.0 - p_decay
    root_keep = math.sqrt(keep)
    dephase = math.exp(-t / cfg.tau_coherence_s)

    r = np.array(rho.rho, dtype=complex)
    out = np.empty((3, 3), dtype=complex)
    out[0, 0] = r[0, 0] + p_decay * (r[1, 1] + r[2, 2])
    out[1, 1] = keep * r[1, 1]
    out[2, 2] = keep * r[2, 2]
    gc = root_keep * dephase
    out[0, 1] = gc * r[0, 1]
    out[1, 0] = gc * r[1, 0]
    out[0, 2] = gc * r[0, 2]
    out[2, 0] = gc * r[2, 0]
    out[1, 2] = keep * r[1, 2]
    out[2, 1] = keep * r[2, 1]
    return DensityMatrix3(out)
