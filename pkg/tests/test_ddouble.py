import math

import mpmath as mp
import numpy as np
import pytest

from clockbeat.ddouble import (
    PI,
    TWO_PI,
    DoubleDouble,
    ExtendedPhase,
    dd_frac,
    fractional_cycles,
    two_prod,
    two_sum,
)

mp.mp.prec = 200


def to_mp(x) -> mp.mpf:
    if isinstance(x, DoubleDouble):
        return mp.mpf(x.hi) + mp.mpf(x.lo)
    if isinstance(x, ExtendedPhase):
        return mp.mpf(x.hi) + mp.mpf(x.lo)
    return mp.mpf(x)


def rel_err(got, want) -> float:
    want = to_mp(want)
    if want == 0:
        return float(abs(to_mp(got)))
    return float(abs((to_mp(got) - want) / want))


def test_two_sum_and_two_prod_are_exact():
    rng = np.random.default_rng(7)
    for _ in range(500):
        a = float(rng.uniform(-1, 1) * 10.0 ** rng.integers(-20, 20))
        b = float(rng.uniform(-1, 1) * 10.0 ** rng.integers(-20, 20))
        s, e = two_sum(a, b)
        assert to_mp(s) + to_mp(e) == to_mp(a) + to_mp(b)
        p, f = two_prod(a, b)
        assert to_mp(p) + to_mp(f) == to_mp(a) * to_mp(b)


def test_constants_match_mpmath():
    assert rel_err(TWO_PI, 2 * mp.pi) < 1e-32
    assert rel_err(PI, mp.pi) < 1e-32


@pytest.mark.parametrize("op", ["add", "sub", "mul", "div"])
def test_arithmetic_against_mpmath(op):
    rng = np.random.default_rng(int.from_bytes(op.encode(), "little"))
    for _ in range(300):
        a = DoubleDouble.from_product(
            float(rng.uniform(0.5, 2.0)), float(10.0 ** rng.integers(-8, 9))
        )
        b = DoubleDouble.from_product(
            float(rng.uniform(0.5, 2.0)), float(10.0 ** rng.integers(-8, 9))
        )
        got = {
            "add": a + b,
            "sub": a - b,
            "mul": a * b,
            "div": a / b,
        }[op]
        want = {
            "add": to_mp(a) + to_mp(b),
            "sub": to_mp(a) - to_mp(b),
            "mul": to_mp(a) * to_mp(b),
            "div": to_mp(a) / to_mp(b),
        }[op]
        if want == 0:
            assert abs(to_mp(got)) < 1e-40
        else:
            assert rel_err(got, want) < 1e-29


def test_relative_representation_error_below_1e30():
    # a 1e-16 fractional bump on a number of order 1e9 must be representable
    base = DoubleDouble.from_number(1.0e9)
    bumped = base * (DoubleDouble.from_number(1.0) + 1.1e-16)
    want = mp.mpf(1.0e9) * (1 + mp.mpf(1.1e-16))
    assert rel_err(bumped, want) < 1e-30
    assert float(bumped - base) == pytest.approx(1.1e-16 * 1.0e9, rel=1e-12)


def test_frac_matches_mpmath_for_huge_cycle_counts():
    cases = [
        (1000000000.1, 12345.6789),
        (4.7e15, 0.75),
        (1.25, 2.0),
        (0.25, 2.0),
        (987654321.123, 3.0000000001),
    ]
    for f, t in cases:
        x = DoubleDouble.from_product(f, t)
        frac = x.frac()
        want = mp.fmod(mp.mpf(f) * mp.mpf(t), 1)
        # congruence mod 1, allowing the representative to sit at 1-eps
        diff = (to_mp(frac) - want) % 1
        diff = min(diff, 1 - diff)
        assert float(diff) < 1e-25


def test_frac_array_path_agrees_with_scalar():
    f = DoubleDouble.from_number(1.25)
    t = np.array([0.0, 0.4, 2.0, 3.2, 1e12 + 0.1])
    got = fractional_cycles(f, t)
    for ti, gi in zip(t, got):
        want = float((DoubleDouble.from_number(1.25) * float(ti)).frac())
        assert math.isclose(gi % 1.0, want % 1.0, abs_tol=1e-15) or math.isclose(
            abs((gi - want) % 1.0), 0.0, abs_tol=1e-15
        )


def test_frac_rejects_negative():
    with pytest.raises(ValueError):
        DoubleDouble.from_number(-0.5).frac()


def test_extended_phase_reduction_survives_1e15_cycles():
    f = DoubleDouble.from_number(4.7e15)
    t = 0.75
    cycles = f * t  # 3.525e15 cycles, integer -> phase 0
    ph = ExtendedPhase.from_cycles(cycles)
    assert abs(ph.reduced().radians) < 1e-12 or abs(ph.reduced().radians - 2 * math.pi) < 1e-12
    # adding a quarter cycle shows up exactly
    ph2 = ExtendedPhase.from_cycles(cycles + 0.25)
    assert ph2.reduced().radians == pytest.approx(math.pi / 2, abs=1e-12)


def test_extended_phase_accumulation_matches_mpmath():
    a = ExtendedPhase.from_cycles(DoubleDouble.from_product(123456.789, 3.25))
    b = ExtendedPhase.from_cycles(DoubleDouble.from_product(0.1, 7.0))
    total = (a + b).reduced()
    want = mp.fmod(
        mp.fmod(mp.mpf(123456.789) * mp.mpf(3.25), 1) * 2 * mp.pi
        + mp.fmod(mp.mpf(0.1) * 7, 1) * 2 * mp.pi,
        2 * mp.pi,
    )
    diff = abs(to_mp(total) - want)
    diff = min(diff, abs(float(diff - 2 * mp.pi)))
    assert float(diff) < 1e-25


def test_phasor_uses_reduced_angle():
    ph = ExtendedPhase.from_cycles(DoubleDouble.from_number(0.25))
    z = ph.phasor()
    assert z.real == pytest.approx(0.0, abs=1e-15)
    assert z.imag == pytest.approx(1.0, abs=1e-15)


def test_dd_frac_handles_negative_low_word():
    # value just below an integer: 5 - 1e-17
    h, l = dd_frac(5.0, -1e-17)
    val = (to_mp(h) + to_mp(l)) % 1
    val = min(val, 1 - val)
    assert float(val) == pytest.approx(1e-17, rel=1e-6)


def test_ordering_and_float_conversion():
    a = DoubleDouble(1.0, 1e-20)
    b = DoubleDouble(1.0, 2e-20)
    assert a < b <= b
    assert float(a) == 1.0
    assert abs(a) == a
    assert float(-a) == -1.0
