"""Fringe fitting, visibility metrics, null tracking, and beat estimation.

The fringe model is a constant plus one harmonic of the closing phase,

    p(phi) = offset + amplitude * cos(phi - phase0),

solved as a linear least-squares problem in (1, cos phi, sin phi); on a
noiseless scan the residual is rounding-level because the closing
unitary produces exactly one harmonic.  Visibility comes in two
flavours: amplitude-normalized (fitted amplitude over its t = 0 value,
the canonical one, equal to the clock overlap |cos(pi df t)| for the
tripod preparation) and min-max contrast of the fitted curve, which for
the tripod model evaluates to 2c/(1+c^2).

Null refinement and beat estimation fit the |cos| law directly in the
time domain; the beat estimator's quoted standard error uses a
heteroscedasticity-robust (sandwich) covariance so it stays honest for
multiplicative noise, whose size varies across the modulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .ddouble import DoubleDouble, fractional_cycles
from .sequence import FringeDataset, VisibilityCurve


class FitError(RuntimeError):
    """A least-squares fit failed to converge or was ill-posed."""


@dataclass(frozen=True, slots=True)
class FringeFit:
    """Single-harmonic fit of one population channel."""

    offset: float
    amplitude: float
    phase0: float
    rms_residual: float

    def __post_init__(self):
        if self.amplitude < 0.0:
            raise ValueError("amplitude must be nonnegative")
        if not -1e-9 <= self.offset <= 1.0 + 1e-9:
            raise ValueError(f"offset {self.offset!r} outside [0, 1]")
        if self.rms_residual < 0.0:
            raise ValueError("rms_residual must be nonnegative")


@dataclass(frozen=True, slots=True)
class AnalyticBeatModel:
    """Two-path reference: beat plus a fringe carrier frequency.

    The carrier is the mean clock frequency; in a phase scan it is
    absorbed into the fringe phase origin, so it only matters when the
    reference population is evaluated against time.
    """

    delta_f_hz: float
    carrier_hz: float = 0.0

    def __post_init__(self):
        if not self.delta_f_hz > 0.0:
            raise ValueError(f"delta_f_hz must be positive, got {self.delta_f_hz!r}")
        if self.carrier_hz < 0.0:
            raise ValueError("carrier_hz must be nonnegative")

    def carrier_phase(self, t: float) -> float:
        """Carrier phase 2 pi f t reduced modulo 2 pi."""
        frac = fractional_cycles(DoubleDouble.from_number(self.carrier_hz), t)
        return float(2.0 * math.pi * frac)


def fit_fringe_batch(phases: np.ndarray, values: np.ndarray):
    """Exact linear least-squares fringe fit, vectorized over rows.

    phases has shape (P,), values (..., P).  Returns (offset, amplitude,
    phase0, rms_residual) arrays of the leading shape.  Rejects scans
    with fewer than 8 points or a rank-deficient design (duplicate
    phases).
    """
    phases = np.asarray(phases, dtype=float)
    values = np.asarray(values, dtype=float)
    if phases.ndim != 1 or phases.size < 8:
        raise ValueError("need at least 8 phase points for an identifiable fit")
    design = np.column_stack([np.ones_like(phases), np.cos(phases), np.sin(phases)])
    if np.linalg.matrix_rank(design) < 3:
        raise ValueError("rank-deficient design: phases are duplicated or degenerate")
    coefs, *_ = np.linalg.lstsq(design, values.reshape(-1, phases.size).T, rcond=None)
    a, b, c = coefs
    amplitude = np.hypot(b, c)
    phase0 = np.arctan2(c, b)
    residual = values.reshape(-1, phases.size) - (design @ coefs).T
    rms = np.sqrt(np.mean(residual**2, axis=-1))
    lead = values.shape[:-1]
    return (
        a.reshape(lead),
        amplitude.reshape(lead),
        phase0.reshape(lead),
        rms.reshape(lead),
    )


def fit_fringe(data: FringeDataset, channel: str = "ground") -> FringeFit:
    """Fit offset + amplitude*cos(phi - phase0) to one channel of a scan."""
    y = data.channel(channel)
    offset, amplitude, phase0, rms = fit_fringe_batch(data.phases, y[np.newaxis, :])
    return FringeFit(
        offset=float(offset[0]),
        amplitude=float(amplitude[0]),
        phase0=float(phase0[0]),
        rms_residual=float(rms[0]),
    )


def visibility_amp(fit: FringeFit, reference_amplitude: float) -> float:
    """Amplitude-normalized visibility, clamped to [0, 1 + 1e-6].

    reference_amplitude is the t = 0 fitted amplitude (0.5 for the
    tripod preparation).  For the noiseless model this equals the clock
    overlap |cos(pi df t)|.
    """
    if not reference_amplitude > 0.0:
        raise ValueError("reference_amplitude must be positive")
    return float(np.clip(fit.amplitude / reference_amplitude, 0.0, 1.0 + 1e-6))


def visibility_minmax(data: FringeDataset, channel: str = "ground") -> float:
    """(Pmax - Pmin)/(Pmax + Pmin) evaluated on the fitted curve.

    Uses the fit extrema rather than raw samples so a sparse scan that
    misses the crest does not bias the contrast.  For the noiseless
    tripod model this equals 2c/(1+c^2) with c the clock overlap.
    """
    fit = fit_fringe(data, channel)
    top = fit.offset + fit.amplitude
    bottom = fit.offset - fit.amplitude
    if top + bottom <= 0.0:
        return 0.0
    return (top - bottom) / (top + bottom)


def analytic_population(t: float, model: AnalyticBeatModel, phase: float) -> float:
    """Idealized two-path ground population (1 + V cos(phase)) / 2.

    V = |cos(pi df t)| is the visibility envelope; phase stands in for
    the carrier argument (the envelope's sign inversion is absorbed into
    the phase origin, as it is for fitted fringes).  Note the two-path
    DC level is 1/2, whereas the full three-level model sits at
    (1 + V^2)/4; the oscillating parts agree.
    """
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    frac = fractional_cycles(DoubleDouble.from_number(model.delta_f_hz), t)
    envelope = abs(math.cos(math.pi * float(frac)))
    return 0.5 * (1.0 + envelope * math.cos(phase))


def _null_region_centers(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Indices of the deepest point of each low-visibility region.

    Light smoothing plus a depth threshold makes this robust to point
    noise, which litters a raw curve with spurious local minima; it is
    only used to seed fits, never as the measurement itself.
    """
    n = values.size
    # 3-sample window: narrow against features (>= 8 samples/period is
    # required downstream) yet enough to stop point noise from faking a
    # sub-threshold dip; 0.35 keeps the worst-case sample alignment of a
    # true null below threshold after smoothing
    padded = np.concatenate([values[:1], values, values[-1:]])
    smooth = np.convolve(padded, np.ones(3) / 3.0, mode="valid")
    threshold = 0.35 * float(np.percentile(values, 98))
    below = smooth < threshold
    edges = np.diff(below.astype(int))
    starts = np.nonzero(edges == 1)[0] + 1
    ends = np.nonzero(edges == -1)[0] + 1
    if below[0]:
        starts = np.r_[0, starts]
    if below[-1]:
        ends = np.r_[ends, n]
    return np.array(
        [s + int(np.argmin(values[s:e])) for s, e in zip(starts, ends)], dtype=int
    )


def _refine_null(t_win, v_win, d0: float, t0: float) -> tuple[float, float]:
    """Gauss-Newton fit of |sin(pi d (t - t0))| on one window.

    The |cos| visibility law is exactly |sin| of the distance to the
    null, so the model is global, not a linearization; on noiseless
    data this converges to rounding level in a few steps.
    """
    d, t_null = float(d0), float(t0)
    for _ in range(40):
        x = math.pi * d * (t_win - t_null)
        sx = np.sin(x)
        cx = np.cos(x)
        sgn = np.sign(sx)
        resid = np.abs(sx) - v_win
        j_d = sgn * cx * math.pi * (t_win - t_null)
        j_t = -sgn * cx * math.pi * d
        jtj = np.array(
            [
                [np.dot(j_d, j_d), np.dot(j_d, j_t)],
                [np.dot(j_d, j_t), np.dot(j_t, j_t)],
            ]
        )
        rhs = -np.array([np.dot(j_d, resid), np.dot(j_t, resid)])
        try:
            step = np.linalg.solve(jtj, rhs)
        except np.linalg.LinAlgError:
            break
        d = max(d + float(step[0]), 1e-300)
        t_null += float(step[1])
        if abs(step[1]) < 1e-16 * max(abs(t_null), 1.0 / d):
            break
    return t_null, d


def find_nulls(curve: VisibilityCurve, max_count: int) -> list[float]:
    """Refined visibility-null times, counted in order from t = 0.

    Each low-visibility region seeds a local |cos|-law fit over a window
    of +/-20% of the modulation period; the refined null times come back
    ascending, at most max_count of them.  If the curve holds fewer
    nulls than asked for, the shorter list is returned, never padded.
    Requires at least ~8 samples per modulation period.
    """
    if max_count < 1:
        raise ValueError("max_count must be >= 1")
    t = curve.times
    v = curve.visibility
    centers = _null_region_centers(t, v)
    if centers.size == 0:
        return []
    dt = float(np.median(np.diff(t)))
    if centers.size >= 2:
        period = float(np.median(np.diff(t[centers])))
    else:
        period = float(t[-1] - t[0])
    if period / dt < 8.0 - 1e-9:
        raise ValueError(
            f"curve too sparse: {period / dt:.1f} samples per modulation period, need >= 8"
        )
    half = max(3, int(round(0.2 * period / dt)))
    nulls: list[float] = []
    for ix in centers[:max_count]:
        lo = max(0, ix - half)
        hi = min(t.size, ix + half + 1)
        t_null, _ = _refine_null(t[lo:hi], v[lo:hi], 1.0 / period, float(t[ix]))
        nulls.append(float(t_null))
    return nulls


@dataclass(frozen=True, slots=True)
class BeatEstimate:
    """Beat-frequency fit result with its quoted uncertainty."""

    delta_f_hz: float
    stderr_hz: float
    tau_s: float
    tau_stderr_s: float | None
    rms_residual: float


def _sandwich_stderr(jac: np.ndarray, resid: np.ndarray) -> np.ndarray:
    """Heteroscedasticity-robust parameter standard errors.

    (J^T J)^{-1} J^T diag(r^2) J (J^T J)^{-1}: the middle factor
    estimates the per-point noise variance from the residuals
    themselves, so no homoscedasticity assumption is made.
    """
    jtj_inv = np.linalg.inv(jac.T @ jac)
    meat = (jac * resid[:, np.newaxis] ** 2).T @ jac
    cov = jtj_inv @ meat @ jtj_inv
    return np.sqrt(np.clip(np.diag(cov), 0.0, None))


def estimate_beat(curve: VisibilityCurve, fit_decay: bool = False) -> BeatEstimate:
    """Nonlinear least-squares beat frequency from a visibility curve.

    Model: V(t) = |cos(pi df t)| * exp(-t/tau), with tau fixed to
    infinity unless fit_decay is set.  The curve must span at least two
    modulation periods.  Non-convergence raises FitError with the
    optimizer diagnostics attached.
    """
    t = curve.times
    v = curve.visibility
    regions = _null_region_centers(t, v)
    if regions.size < 2:
        raise ValueError(
            "curve spans fewer than 2 modulation periods (need two visibility nulls)"
        )
    d0 = 1.0 / float(np.median(np.diff(t[regions])))
    if (t[-1] - t[0]) * d0 < 1.9:
        raise ValueError("curve spans fewer than 2 modulation periods")

    def model_parts(params):
        d = params[0]
        rate = params[1] if fit_decay else 0.0
        cx = np.cos(math.pi * d * t)
        envelope = np.exp(-rate * t)
        return cx, envelope

    def residual(params):
        cx, envelope = model_parts(params)
        return np.abs(cx) * envelope - v

    def jacobian(params):
        d = params[0]
        cx, envelope = model_parts(params)
        sgn = np.sign(cx)
        d_col = -sgn * np.sin(math.pi * d * t) * math.pi * t * envelope
        if not fit_decay:
            return d_col[:, np.newaxis]
        r_col = -np.abs(cx) * t * envelope
        return np.column_stack([d_col, r_col])

    x0 = np.array([d0, 0.0]) if fit_decay else np.array([d0])
    lower = np.array([1e-300, 0.0]) if fit_decay else np.array([1e-300])
    upper = np.full(x0.size, np.inf)
    result = least_squares(
        residual, x0, jac=jacobian, bounds=(lower, upper), method="trf", max_nfev=500
    )
    if not result.success:
        raise FitError(
            f"beat fit did not converge: status={result.status} "
            f"({result.message}), nfev={result.nfev}, cost={result.cost!r}"
        )
    stderr = _sandwich_stderr(result.jac, result.fun)
    d_hat = float(result.x[0])
    if fit_decay:
        rate = float(result.x[1])
        tau = math.inf if rate == 0.0 else 1.0 / rate
        tau_stderr = None if rate == 0.0 else float(stderr[1]) / rate**2
    else:
        tau, tau_stderr = math.inf, None
    return BeatEstimate(
        delta_f_hz=d_hat,
        stderr_hz=float(stderr[0]),
        tau_s=tau,
        tau_stderr_s=tau_stderr,
        rms_residual=float(np.sqrt(np.mean(result.fun**2))),
    )
