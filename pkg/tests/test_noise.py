import math

import numpy as np
import pytest

from clockbeat.dynamics import ClockFrequencies, DensityMatrix3, QutritState, tripod_split
from clockbeat.fringes import fit_fringe
from clockbeat.noise import (
    NoiseConfig,
    apply_decoherence,
    counter_stream,
    sample_shots,
    trap_survival,
)
from clockbeat.sequence import RamseySequence, phase_scan, visibility_curve

FREQS = ClockFrequencies(1.0, 2.0)


class TestSampleShots:
    def test_certain_outcome(self):
        counts = sample_shots((1.0, 0.0, 0.0), 1000, counter_stream(0, 0))
        assert counts == (1000, 0, 0)

    def test_counts_sum_to_n(self):
        rng = counter_stream(5, 1, 2)
        for n in (1, 17, 10_000):
            counts = sample_shots((0.5, 0.25, 0.25), n, rng)
            assert sum(counts) == n

    def test_binomial_statistics(self):
        # mean of n_g/n over 100 seeded draws of n = 1e6 atoms within
        # 4 sigma of 0.5, sigma = sqrt(0.25/1e6)
        n = 10**6
        fractions = [
            sample_shots((0.5, 0.25, 0.25), n, counter_stream(seed, 0))[0] / n
            for seed in range(100)
        ]
        sigma = math.sqrt(0.25 / n)
        assert abs(np.mean(fractions) - 0.5) < 4 * sigma

    def test_same_key_same_counts(self):
        a = sample_shots((0.3, 0.3, 0.4), 500, counter_stream(9, 4, 2, 7))
        b = sample_shots((0.3, 0.3, 0.4), 500, counter_stream(9, 4, 2, 7))
        assert a == b

    def test_different_key_different_counts(self):
        a = sample_shots((0.3, 0.3, 0.4), 500, counter_stream(9, 4, 2, 7))
        b = sample_shots((0.3, 0.3, 0.4), 500, counter_stream(9, 4, 2, 8))
        assert a != b

    def test_tiny_negative_probability_tolerated(self):
        counts = sample_shots((1.0 + 5e-13, -5e-13, 0.0), 100, counter_stream(1, 0))
        assert counts == (100, 0, 0)

    def test_bad_probabilities_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            sample_shots((1.1, -0.1, 0.0), 10, counter_stream(0, 0))
        with pytest.raises(ValueError, match="sum"):
            sample_shots((0.5, 0.25, 0.2), 10, counter_stream(0, 0))


class TestApplyDecoherence:
    def rho(self):
        return DensityMatrix3.from_pure(tripod_split(QutritState.ground()))

    def test_infinite_lifetimes_are_identity(self):
        out = apply_decoherence(self.rho(), 3.0, NoiseConfig())
        np.testing.assert_allclose(out.rho, self.rho().rho, atol=0)

    def test_dephasing_scales_ground_clock_coherences(self):
        cfg = NoiseConfig(tau_coherence_s=2.0)
        before = self.rho()
        after = apply_decoherence(before, 2.0, cfg)
        factor = math.exp(-1.0)
        for i, j in ((0, 1), (0, 2)):
            assert abs(after.rho[i, j]) == pytest.approx(
                factor * abs(before.rho[i, j]), abs=1e-12
            )
        # common ground-phase noise leaves the clock-clock coherence alone
        assert abs(after.rho[1, 2]) == pytest.approx(abs(before.rho[1, 2]), abs=1e-12)

    def test_clock_decay_moves_population_to_ground(self):
        cfg = NoiseConfig(tau_clock_s=1.0)
        after = apply_decoherence(self.rho(), 1.0, cfg)
        keep = math.exp(-1.0)
        assert after.populations()[1] == pytest.approx(0.25 * keep, abs=1e-12)
        assert after.populations()[2] == pytest.approx(0.25 * keep, abs=1e-12)
        assert sum(after.populations()) == pytest.approx(1.0, abs=1e-12)

    def test_trace_and_positivity_preserved_on_random_states(self):
        rng = np.random.default_rng(31)
        cfg = NoiseConfig(tau_coherence_s=0.7, tau_clock_s=1.3)
        for _ in range(200):
            a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            rho = a @ a.conj().T
            rho /= np.trace(rho).real
            out = apply_decoherence(DensityMatrix3(rho), float(rng.uniform(0, 5)), cfg)
            assert np.trace(out.rho).real == pytest.approx(1.0, abs=1e-12)
            assert np.linalg.eigvalsh(out.rho).min() >= -1e-10

    def test_dephasing_factorizes_visibility(self):
        # visibility = exp(-t/tau) * |cos(pi df t)| with dephasing only
        tau = 1.5
        noise = NoiseConfig(tau_coherence_s=tau)
        t = np.linspace(0.0, 3.0, 121)
        curve = visibility_curve(RamseySequence(FREQS), t, 32, noise=noise)
        want = np.exp(-t / tau) * np.abs(np.cos(math.pi * t))
        np.testing.assert_allclose(curve.visibility, want, atol=1e-9)

    def test_clock_decay_also_factorizes(self):
        # amplitude damping scales each ground-clock coherence by
        # sqrt(exp(-t/tau)), so the fringe carries exp(-t/2tau)
        tau = 2.0
        noise = NoiseConfig(tau_clock_s=tau)
        t = np.linspace(0.0, 3.0, 61)
        curve = visibility_curve(RamseySequence(FREQS), t, 32, noise=noise)
        want = np.exp(-t / (2 * tau)) * np.abs(np.cos(math.pi * t))
        np.testing.assert_allclose(curve.visibility, want, atol=1e-9)

    def test_input_validation(self):
        with pytest.raises(TypeError):
            apply_decoherence(np.eye(3) / 3, 1.0, NoiseConfig())
        with pytest.raises(ValueError):
            apply_decoherence(self.rho(), -1.0, NoiseConfig())


class TestTrapLoss:
    def test_survival_fraction(self):
        cfg = NoiseConfig(tau_trap_s=10.0)
        assert trap_survival(0.0, cfg) == 1.0
        assert trap_survival(10.0, cfg) == pytest.approx(math.exp(-1), abs=1e-15)

    def test_sampled_scan_loses_atoms(self):
        noise = NoiseConfig(atoms_per_point=10_000, seed=3, tau_trap_s=1.0)
        data = phase_scan(RamseySequence(FREQS, interrogation_s=1.0), 16, noise=noise)
        totals = data.shot_counts.sum(axis=1)
        assert np.all(totals < 10_000)
        assert np.mean(totals) == pytest.approx(10_000 * math.exp(-1), rel=0.05)


class TestShotNoiseScaling:
    def test_fitted_visibility_stderr_scales_as_inverse_root_n(self):
        seq = RamseySequence(FREQS, interrogation_s=0.25)  # visibility ~ 0.707
        stderr = {}
        for n_atoms in (100, 10_000, 1_000_000):
            noise = NoiseConfig(atoms_per_point=n_atoms, seed=12)
            vis = []
            for rep in range(100):
                data = phase_scan(seq, 16, noise=noise, replicate=rep)
                vis.append(fit_fringe(data).amplitude / 0.5)
            stderr[n_atoms] = float(np.std(vis, ddof=1))
        r1 = stderr[100] / stderr[10_000]
        r2 = stderr[10_000] / stderr[1_000_000]
        assert abs(r1 / 10.0 - 1.0) < 0.2
        assert abs(r2 / 10.0 - 1.0) < 0.2


class TestNoiseConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            NoiseConfig(atoms_per_point=0)
        with pytest.raises(ValueError):
            NoiseConfig(tau_clock_s=0.0)
        with pytest.raises(ValueError):
            NoiseConfig(seed=-1)

    def test_has_decoherence(self):
        assert not NoiseConfig().has_decoherence
        assert not NoiseConfig(atoms_per_point=10).has_decoherence
        assert NoiseConfig(tau_coherence_s=1.0).has_decoherence
