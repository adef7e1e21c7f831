"""clockbeat: internal clock interferometry on a three-level atom.

Two optical clock transitions sharing one ground state run side by side
inside a single atom; their beat shows up as a periodic modulation of
Ramsey fringe visibility.  This package simulates the full pulse
sequence, extracts fringes and visibility curves, applies gravitational
frequency shifts in double-word arithmetic (so 1e-16 fractional effects
survive), models projection noise and decoherence ceilings, and
quantifies how the redshift signal stacks up over many beat periods.
"""

from .ddouble import PI, TWO_PI, DoubleDouble, ExtendedPhase
from .dynamics import (
    ClockFrequencies,
    DensityMatrix3,
    PulseSpec,
    QutritState,
    Transition,
    beat_cycles,
    clock_overlap,
    free_evolve,
    populations,
    pulse_matrix,
    preparation_pulses,
    tripod_split,
    two_level_pulse,
)
from .fringes import (
    AnalyticBeatModel,
    BeatEstimate,
    FitError,
    FringeFit,
    analytic_population,
    estimate_beat,
    find_nulls,
    fit_fringe,
    fit_fringe_batch,
    visibility_amp,
    visibility_minmax,
)
from .noise import NoiseConfig, apply_decoherence, counter_stream, sample_shots, trap_survival
from .redshift import (
    SPEED_OF_LIGHT_M_S,
    RedshiftContext,
    redshift_factor,
    shift_frequencies,
)
from .sequence import (
    FringeDataset,
    RamseySequence,
    VisibilityCurve,
    phase_scan,
    reference_amplitude,
    run_sequence,
    visibility_curve,
)
from .stacking import (
    RecoveredShift,
    StackingCheck,
    StackingReport,
    recover_fractional_shift,
    stacked_null_shift,
    stacking_gain,
    total_signal,
    verify_stacking_by_simulation,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticBeatModel",
    "BeatEstimate",
    "ClockFrequencies",
    "DensityMatrix3",
    "DoubleDouble",
    "ExtendedPhase",
    "FitError",
    "FringeDataset",
    "FringeFit",
    "NoiseConfig",
    "PI",
    "PulseSpec",
    "QutritState",
    "RamseySequence",
    "RecoveredShift",
    "RedshiftContext",
    "SPEED_OF_LIGHT_M_S",
    "StackingCheck",
    "StackingReport",
    "TWO_PI",
    "Transition",
    "VisibilityCurve",
    "analytic_population",
    "apply_decoherence",
    "beat_cycles",
    "clock_overlap",
    "counter_stream",
    "estimate_beat",
    "find_nulls",
    "fit_fringe",
    "fit_fringe_batch",
    "free_evolve",
    "phase_scan",
    "populations",
    "preparation_pulses",
    "pulse_matrix",
    "recover_fractional_shift",
    "redshift_factor",
    "reference_amplitude",
    "run_sequence",
    "sample_shots",
    "shift_frequencies",
    "stacked_null_shift",
    "stacking_gain",
    "total_signal",
    "trap_survival",
    "tripod_split",
    "two_level_pulse",
    "verify_stacking_by_simulation",
    "visibility_amp",
    "visibility_curve",
    "visibility_minmax",
    "__version__",
]
