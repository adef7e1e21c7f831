"""Command-line runner: config ingestion, mode dispatch, reproducible output.

Modes mirror the library pipelines:

  fringe            one phase scan at a fixed interrogation time
  visibility        visibility curve over a time grid, nulls, beat fit
  redshift-compare  shifted vs unshifted beat (simulated when scaled,
                    extended-precision analytic when physical)
  stack             cumulative null shift over many periods
  montecarlo        seeded replicate beat estimates under projection noise

Configs are flat JSON objects; unknown keys are rejected by name and
every validation error carries the offending key.  "scaled" units treat
frequencies as dimensionless numbers and allow exaggerated fractional
shifts below 0.1; "physical" units take Hz and metres and keep every
shift on the double-word path, since 1e-16 never survives plain floats.

Outputs are CSV (RFC 4180 fields, LF line endings, shortest round-trip
float formatting) or JSON records, plus a JSON summary and a manifest
with sha256 digests of every data file.  Identical config and seed give
byte-identical data files at any thread count.
"""

from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .ddouble import DoubleDouble
from .dynamics import ClockFrequencies
from .fringes import FitError, estimate_beat, find_nulls, fit_fringe, visibility_amp, visibility_minmax
from .noise import NoiseConfig
from .redshift import MAX_LOWEST_ORDER_EPS, RedshiftContext, redshift_factor, shift_frequencies
from .sequence import (
    PREPARATIONS,
    RamseySequence,
    VisibilityCurve,
    phase_scan,
    reference_amplitude,
    visibility_curve,
)
from .stacking import (
    recover_fractional_shift,
    stacked_null_shift,
    stacking_gain,
    total_signal,
    verify_stacking_by_simulation,
)

MODES = ("fringe", "visibility", "redshift-compare", "stack", "montecarlo")
UNITS = ("scaled", "physical")
FORMATS = ("csv", "json")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

SUMMARY_SCHEMA = "clockbeat-summary.v1"
MANIFEST_SCHEMA = "clockbeat-manifest.v1"
CSV_SCHEMAS = {
    "fringe": "fringe.v1",
    "visibility": "visibility.v1",
    "nulls": "nulls.v1",
    "montecarlo": "montecarlo.v1",
    "extended": "extended.v1",
}


class ConfigError(ValueError):
    """Invalid run configuration; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    mode: str
    f1: float
    f2: float
    units: str = "scaled"
    eps: float | None = None
    g: float = 9.8
    delta_h: float = 1.0
    tau_s: float = 1.0
    prep: str = "tripod"
    interrogation_s: float = 0.0
    t_start: float = 0.0
    t_stop: float | None = None
    t_num: int = 601
    n_phases: int = 64
    n_periods: int = 100
    points_per_period: int = 12
    atoms_per_point: int | None = None
    tau_coherence_s: float | None = None
    tau_clock_s: float | None = None
    tau_trap_s: float | None = None
    replicates: int = 100
    seed: int = 0
    threads: int = 1
    format: str = "csv"
    out_dir: str = "."

    def frequencies(self) -> ClockFrequencies:
        return ClockFrequencies(self.f1, self.f2)

    def redshift_context(self) -> RedshiftContext:
        return RedshiftContext(g_m_s2=self.g, delta_h_m=self.delta_h)

    def noise(self) -> NoiseConfig | None:
        if (
            self.atoms_per_point is None
            and self.tau_coherence_s is None
            and self.tau_clock_s is None
            and self.tau_trap_s is None
        ):
            return None
        return NoiseConfig(
            atoms_per_point=self.atoms_per_point,
            seed=self.seed,
            tau_coherence_s=self.tau_coherence_s or math.inf,
            tau_clock_s=self.tau_clock_s or math.inf,
            tau_trap_s=self.tau_trap_s or math.inf,
        )

    def time_grid(self) -> np.ndarray:
        stop = self.t_stop
        if stop is None:
            stop = self.t_start + 3.0 / (self.f2 - self.f1)
        return np.linspace(self.t_start, stop, self.t_num)


_SCHEMA: dict[str, tuple] = {
    # key: (types, allow_none)
    "mode": (str, False),
    "units": (str, False),
    "f1": ((int, float), False),
    "f2": ((int, float), False),
    "eps": ((int, float), True),
    "g": ((int, float), False),
    "delta_h": ((int, float), False),
    "tau_s": ((int, float), False),
    "prep": (str, False),
    "interrogation_s": ((int, float), False),
    "t_start": ((int, float), False),
    "t_stop": ((int, float), True),
    "t_num": (int, False),
    "n_phases": (int, False),
    "n_periods": (int, False),
    "points_per_period": (int, False),
    "atoms_per_point": (int, True),
    "tau_coherence_s": ((int, float), True),
    "tau_clock_s": ((int, float), True),
    "tau_trap_s": ((int, float), True),
    "replicates": (int, False),
    "seed": (int, False),
    "threads": (int, False),
    "format": (str, False),
    "out_dir": (str, False),
}


def _fail(key: str, message: str):
    raise ConfigError(f"config key '{key}': {message}")


def _validate(cfg: RunConfig) -> RunConfig:
    if cfg.mode not in MODES:
        _fail("mode", f"must be one of {MODES}, got {cfg.mode!r}")
    if cfg.units not in UNITS:
        _fail("units", f"must be one of {UNITS}, got {cfg.units!r}")
    if cfg.format not in FORMATS:
        _fail("format", f"must be one of {FORMATS}, got {cfg.format!r}")
    if cfg.prep not in PREPARATIONS:
        _fail("prep", f"must be one of {PREPARATIONS}, got {cfg.prep!r}")
    if not (cfg.f2 > cfg.f1 > 0.0):
        _fail("f2", "clock 2 must have the larger transition frequency: f2 > f1 > 0")
    if cfg.interrogation_s < 0.0:
        _fail("interrogation_s", "must be nonnegative")
    if cfg.n_phases < 8:
        _fail("n_phases", "must be >= 8 for an identifiable fringe fit")
    if cfg.t_num < 2:
        _fail("t_num", "must be >= 2")
    if cfg.t_start < 0.0:
        _fail("t_start", "must be nonnegative")
    if cfg.t_stop is not None and cfg.t_stop <= cfg.t_start:
        _fail("t_stop", "must exceed t_start")
    if cfg.n_periods < 1:
        _fail("n_periods", "must be >= 1")
    if cfg.points_per_period < 8:
        _fail("points_per_period", "must be >= 8")
    if cfg.replicates < 1:
        _fail("replicates", "must be >= 1")
    if cfg.atoms_per_point is not None and cfg.atoms_per_point < 1:
        _fail("atoms_per_point", "must be >= 1")
    for key in ("tau_coherence_s", "tau_clock_s", "tau_trap_s"):
        value = getattr(cfg, key)
        if value is not None and not value > 0.0:
            _fail(key, "must be positive when given")
    if not cfg.tau_s > 0.0:
        _fail("tau_s", "must be positive")
    if not 0 <= cfg.seed < 2**64:
        _fail("seed", "must fit in an unsigned 64-bit integer")
    if cfg.threads < 1:
        _fail("threads", "must be >= 1")

    if cfg.units == "physical":
        eps = float(redshift_factor(cfg.redshift_context()))
        if abs(eps) >= MAX_LOWEST_ORDER_EPS:
            _fail(
                "delta_h",
                f"drives eps = {eps!r} beyond the lowest-order regime "
                f"(|eps| < {MAX_LOWEST_ORDER_EPS}); use scaled units",
            )
        if cfg.eps is not None:
            _fail("eps", "is derived from g and delta_h in physical units; remove it")
    else:
        if cfg.eps is not None and not abs(cfg.eps) < 0.1:
            _fail("eps", f"must satisfy |eps| < 0.1 in scaled units, got {cfg.eps!r}")
        if cfg.eps is None and cfg.mode in ("redshift-compare", "stack"):
            _fail("eps", f"required for mode {cfg.mode!r} in scaled units")
    if cfg.mode == "montecarlo" and cfg.atoms_per_point is None:
        _fail("atoms_per_point", "required for mode 'montecarlo'")
    return cfg


def parse_config(path, mode_override: str | None = None) -> RunConfig:
    """Load, type-check, and validate a JSON run configuration.

    Unknown keys are rejected; missing keys fall back to defaults
    (n_phases=64, seed=0, ...).  mode_override (from the CLI subcommand)
    must agree with an explicit "mode" key if both are present.
    """
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {p}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    return build_config(raw, mode_override)


def build_config(raw: dict, mode_override: str | None = None) -> RunConfig:
    """Validate a config dictionary (see parse_config)."""
    values: dict = {}
    for key, value in raw.items():
        if key not in _SCHEMA:
            raise ConfigError(f"unknown config key '{key}'")
        types, allow_none = _SCHEMA[key]
        if value is None:
            if not allow_none:
                _fail(key, "must not be null")
        elif not isinstance(value, types) or isinstance(value, bool):
            _fail(key, f"expected {types}, got {type(value).__name__}")
        values[key] = value
    if mode_override is not None:
        if "mode" in values and values["mode"] != mode_override:
            _fail("mode", f"config says {values['mode']!r} but subcommand is {mode_override!r}")
        values["mode"] = mode_override
    if "mode" not in values:
        _fail("mode", "required (or select a subcommand)")
    for key in ("f1", "f2"):
        if key not in values:
            _fail(key, "required")
    return _validate(RunConfig(**values))


# ---------------------------------------------------------------------------
# deterministic threaded curve evaluation
# ---------------------------------------------------------------------------


def _curve(
    cfg: RunConfig,
    freqs: ClockFrequencies,
    t_grid: np.ndarray,
    noise: NoiseConfig | None,
    replicate: int = 0,
) -> VisibilityCurve:
    """Visibility curve, chunked across threads with absolute scan indices.

    Only the stochastic per-point path is chunked: each point there is an
    independent fixed-shape computation keyed by its absolute grid index,
    so thread count cannot change a bit.  The noiseless path is a single
    vectorized call and is never split; BLAS kernels make no bitwise
    promise across batch shapes, so splitting it would break the
    byte-identical-output contract for last-ulp reasons.
    """
    template = RamseySequence(freqs=freqs, prep=cfg.prep)
    stochastic = noise is not None and (
        noise.atoms_per_point is not None or noise.has_decoherence
    )
    if not stochastic or cfg.threads <= 1 or t_grid.size < 16:
        return visibility_curve(
            template, t_grid, cfg.n_phases, noise, scan_index_offset=0, replicate=replicate
        )
    chunk = math.ceil(t_grid.size / cfg.threads)
    starts = list(range(0, t_grid.size, chunk))
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        parts = list(
            pool.map(
                lambda s: visibility_curve(
                    template,
                    t_grid[s : s + chunk],
                    cfg.n_phases,
                    noise,
                    scan_index_offset=s,
                    replicate=replicate,
                ),
                starts,
            )
        )
    return VisibilityCurve(
        times=np.concatenate([p.times for p in parts]),
        visibility=np.concatenate([p.visibility for p in parts]),
        fit_residual=np.concatenate([p.fit_residual for p in parts]),
    )


# ---------------------------------------------------------------------------
# mode pipelines: each returns (summary, {filename: (schema, header, rows)})
# ---------------------------------------------------------------------------


def _visibility_rows(curve: VisibilityCurve) -> list[tuple]:
    return [
        (float(t), float(v), float(r))
        for t, v, r in zip(curve.times, curve.visibility, curve.fit_residual)
    ]


def _beat_summary(curve: VisibilityCurve, fit_decay: bool = False) -> dict:
    est = estimate_beat(curve, fit_decay=fit_decay)
    return {
        "delta_f_hz": est.delta_f_hz,
        "stderr_hz": est.stderr_hz,
        "tau_s": None if math.isinf(est.tau_s) else est.tau_s,
        "rms_residual": est.rms_residual,
    }


def _run_fringe(cfg: RunConfig):
    freqs = cfg.frequencies()
    seq = RamseySequence(freqs=freqs, interrogation_s=cfg.interrogation_s, prep=cfg.prep)
    data = phase_scan(seq, cfg.n_phases, cfg.noise())
    fits = {name: fit_fringe(data, name) for name in ("ground", "c1", "c2")}
    ref = reference_amplitude(seq, cfg.n_phases)
    summary = {
        "interrogation_s": cfg.interrogation_s,
        "reference_amplitude": ref,
        "visibility_amp": visibility_amp(fits["ground"], ref),
        "visibility_minmax": visibility_minmax(data, "ground"),
        "fits": {
            name: {
                "offset": fit.offset,
                "amplitude": fit.amplitude,
                "phase0": fit.phase0,
                "rms_residual": fit.rms_residual,
            }
            for name, fit in fits.items()
        },
    }
    if data.shot_counts is None:
        header = ("phase_rad", "p_g", "p_c1", "p_c2")
        rows = [
            (float(ph), float(p[0]), float(p[1]), float(p[2]))
            for ph, p in zip(data.phases, data.probabilities)
        ]
    else:
        header = ("phase_rad", "p_g", "p_c1", "p_c2", "n_g", "n_c1", "n_c2")
        rows = [
            (float(ph), float(p[0]), float(p[1]), float(p[2]),
             int(c[0]), int(c[1]), int(c[2]))
            for ph, p, c in zip(data.phases, data.probabilities, data.shot_counts)
        ]
    return summary, {"fringe": (CSV_SCHEMAS["fringe"], header, rows)}


def _run_visibility(cfg: RunConfig):
    freqs = cfg.frequencies()
    curve = _curve(cfg, freqs, cfg.time_grid(), cfg.noise())
    nulls = find_nulls(curve, max_count=max(cfg.n_periods, 16))
    summary = {
        "n_points": len(curve),
        "nulls_s": nulls,
        "beat": _beat_summary(curve) if len(nulls) >= 2 else None,
    }
    files = {
        "visibility": (
            CSV_SCHEMAS["visibility"],
            ("t_s", "visibility", "residual"),
            _visibility_rows(curve),
        )
    }
    return summary, files


def _run_redshift_compare(cfg: RunConfig):
    freqs = cfg.frequencies()
    if cfg.units == "scaled":
        shifted = freqs.scaled(DoubleDouble.from_number(1.0) + cfg.eps)
        grid = cfg.time_grid()
        base = _curve(cfg, freqs, grid, cfg.noise())
        comp = _curve(cfg, shifted, grid, cfg.noise())
        est_base = _beat_summary(base)
        est_comp = _beat_summary(comp)
        ratio = est_comp["delta_f_hz"] / est_base["delta_f_hz"]
        summary = {
            "eps_applied": cfg.eps,
            "beat_unshifted": est_base,
            "beat_shifted": est_comp,
            "beat_ratio": ratio,
            "ratio_minus_one": ratio - 1.0,
        }
        files = {
            "visibility_unshifted": (
                CSV_SCHEMAS["visibility"],
                ("t_s", "visibility", "residual"),
                _visibility_rows(base),
            ),
            "visibility_shifted": (
                CSV_SCHEMAS["visibility"],
                ("t_s", "visibility", "residual"),
                _visibility_rows(comp),
            ),
        }
        return summary, files

    ctx = cfg.redshift_context()
    eps = redshift_factor(ctx)
    shifted = shift_frequencies(freqs, eps)
    ratio = shifted.delta_f / freqs.delta_f
    recovered = recover_fractional_shift(freqs.delta_f_hz, float(eps), cfg.tau_s)
    summary = {
        "eps_exact": float(eps),
        "eps_round_c2_9e16": float(redshift_factor(ctx, c_squared=9e16)),
        "beat_ratio_minus_one": float(ratio - 1.0),
        "tau_s": cfg.tau_s,
        "total_signal": float(total_signal(cfg.tau_s, ctx)),
        "recovered_eps": recovered.eps_recovered,
        "recovered_relative_error": recovered.relative_error,
    }
    rows = [
        ("delta_f_hz", freqs.delta_f.hi, freqs.delta_f.lo),
        ("delta_f_shifted_hz", shifted.delta_f.hi, shifted.delta_f.lo),
        ("eps_exact", eps.hi, eps.lo),
        ("beat_ratio_minus_one", (ratio - 1.0).hi, (ratio - 1.0).lo),
    ]
    files = {
        "extended_values": (CSV_SCHEMAS["extended"], ("quantity", "hi", "lo"), rows)
    }
    return summary, files


def _run_stack(cfg: RunConfig):
    freqs = cfg.frequencies()
    delta_f = freqs.delta_f_hz
    if cfg.units == "scaled":
        report = stacked_null_shift(cfg.n_periods, cfg.eps, delta_f)
        check = verify_stacking_by_simulation(
            cfg.eps, delta_f, cfg.n_periods, cfg.points_per_period, cfg.n_phases
        )
        summary = {
            "report": asdict(report),
            "check": asdict(check),
        }
        rows = [
            (
                cfg.n_periods,
                check.null_unshifted_s,
                check.null_shifted_s,
                check.simulated_periods,
            )
        ]
        files = {
            "nulls": (
                CSV_SCHEMAS["nulls"],
                ("null_index", "t_unshifted_s", "t_shifted_s", "shift_periods"),
                rows,
            )
        }
        return summary, files

    ctx = cfg.redshift_context()
    eps = redshift_factor(ctx)
    n = max(1, int(math.floor(cfg.tau_s * delta_f)))
    report = stacked_null_shift(n, float(eps), delta_f, ctx=ctx)
    recovered = recover_fractional_shift(delta_f, float(eps), cfg.tau_s)
    gain = stacking_gain(cfg.tau_s, delta_f)
    signal = total_signal(cfg.tau_s, ctx)
    summary = {
        "report": asdict(report),
        "stacking_gain": float(gain),
        "total_signal": float(signal),
        "recovered_eps": recovered.eps_recovered,
        "recovered_relative_error": recovered.relative_error,
    }
    rows = [
        ("eps_exact", eps.hi, eps.lo),
        ("stacking_gain", gain.hi, gain.lo),
        ("total_signal", signal.hi, signal.lo),
    ]
    files = {
        "extended_values": (CSV_SCHEMAS["extended"], ("quantity", "hi", "lo"), rows)
    }
    return summary, files


def _run_montecarlo(cfg: RunConfig):
    freqs = cfg.frequencies()
    noise = cfg.noise()
    grid = cfg.time_grid()

    def one(rep: int):
        curve = visibility_curve(
            RamseySequence(freqs=freqs, prep=cfg.prep),
            grid,
            cfg.n_phases,
            noise,
            replicate=rep,
        )
        est = estimate_beat(curve)
        return (rep, est.delta_f_hz, est.stderr_hz)

    if cfg.threads <= 1:
        rows = [one(rep) for rep in range(cfg.replicates)]
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(one, range(cfg.replicates)))
    estimates = np.array([r[1] for r in rows])
    stderrs = np.array([r[2] for r in rows])
    scatter = float(np.std(estimates, ddof=1)) if len(rows) > 1 else 0.0
    summary = {
        "replicates": cfg.replicates,
        "atoms_per_point": cfg.atoms_per_point,
        "mean_delta_f_hz": float(estimates.mean()),
        "scatter_delta_f_hz": scatter,
        "mean_stderr_hz": float(stderrs.mean()),
        "stderr_over_scatter": float(stderrs.mean() / scatter) if scatter else None,
    }
    files = {
        "montecarlo": (
            CSV_SCHEMAS["montecarlo"],
            ("replicate", "delta_f_hz", "stderr_hz"),
            rows,
        )
    }
    return summary, files


_PIPELINES = {
    "fringe": _run_fringe,
    "visibility": _run_visibility,
    "redshift-compare": _run_redshift_compare,
    "stack": _run_stack,
    "montecarlo": _run_montecarlo,
}


# ---------------------------------------------------------------------------
# output writing
# ---------------------------------------------------------------------------


def _format_cell(value) -> str:
    if isinstance(value, float):
        return repr(float(value))  # shortest round-trip, numpy scalars normalized
    return str(value)


def _write_table(path: Path, fmt: str, header: tuple, rows: list[tuple]) -> None:
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(_format_cell(v) for v in row) for row in rows]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    else:
        records = [dict(zip(header, row)) for row in rows]
        path.write_text(
            json.dumps(records, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
            newline="\n",
        )


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def verify_manifest(manifest_path) -> bool:
    """Check that every output listed in a manifest still matches its digest."""
    manifest = json.loads(Path(manifest_path).read_text(encoding="utf-8"))
    base = Path(manifest_path).parent
    for name, entry in manifest["outputs"].items():
        target = base / name
        if not target.is_file() or _sha256(target) != entry["sha256"]:
            return False
    return True


def run(cfg: RunConfig) -> dict:
    """Execute one configured run and write its artifacts.

    Returns {"summary": ..., "outputs": [names], "manifest": path}.
    Raises ConfigError / FitError / OSError for the caller to map to
    exit codes.
    """
    started = datetime.datetime.now(datetime.timezone.utc).isoformat()
    summary, tables = _PIPELINES[cfg.mode](cfg)

    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ext = "csv" if cfg.format == "csv" else "json"
    written: dict[str, dict] = {}
    for stem, (schema, header, rows) in tables.items():
        name = f"{stem}.{ext}"
        path = out_dir / name
        _write_table(path, cfg.format, header, rows)
        written[name] = {"schema": schema, "sha256": _sha256(path), "bytes": path.stat().st_size}

    full_summary = {
        "schema": SUMMARY_SCHEMA,
        "mode": cfg.mode,
        "units": cfg.units,
        "seed": cfg.seed,
        "results": summary,
    }
    summary_path = out_dir / "summary.json"
    summary_path.write_text(
        json.dumps(full_summary, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
        newline="\n",
    )

    manifest = {
        "schema": MANIFEST_SCHEMA,
        "tool": "clockbeat",
        "version": __version__,
        "mode": cfg.mode,
        "seed": cfg.seed,
        "config": asdict(cfg),
        "started_utc": started,
        "finished_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "outputs": written,
    }
    manifest_path = out_dir / "run_manifest.json"
    manifest_path.write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
        newline="\n",
    )
    return {
        "summary": full_summary,
        "outputs": sorted(written),
        "manifest": str(manifest_path),
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clockbeat",
        description="Internal clock interferometry simulator and analysis runner",
    )
    sub = parser.add_subparsers(dest="mode", required=True, metavar="|".join(MODES))
    for mode in MODES:
        p = sub.add_parser(mode, help=f"run the {mode} pipeline")
        p.add_argument("--config", required=True, help="path to a JSON run configuration")
        p.add_argument("--out", default=None, help="output directory (overrides config)")
        p.add_argument("--seed", type=int, default=None, help="RNG seed (overrides config)")
        p.add_argument("--threads", type=int, default=None, help="worker threads (overrides config)")
        p.add_argument("--format", choices=FORMATS, default=None, help="data file format (overrides config)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config, mode_override=args.mode)
        overrides = {}
        if args.out is not None:
            overrides["out_dir"] = args.out
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.threads is not None:
            overrides["threads"] = args.threads
        if args.format is not None:
            overrides["format"] = args.format
        if overrides:
            cfg = build_config({**asdict(cfg), **overrides})
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        result = run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FitError, ValueError, ArithmeticError) as exc:
        print(f"numerical failure [{cfg.mode}]: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO

    print(json.dumps(result["summary"], indent=2, sort_keys=True))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
