"""Time averaging, tone projection and the dependence measure."""
import math

import numpy as np
import pytest

from apfid import (
    DegenerateInputError,
    FrequencySet,
    HarmonicModel,
    InvalidArgumentError,
    Signal,
    cos_angle,
    fourier_coeff,
    inner_product,
    project_onto,
    synth_harmonic,
    time_average,
)

from rigs import make_signal, oracle_fourier_coeff, parseval_model, parseval_record


def cosine_record(omega=1.0, count=6284, dt=0.1):
    t = dt * np.arange(count)
    return make_signal(np.cos(omega * t), dt)


class TestTimeAverage:
    def test_constant(self):
        assert time_average(make_signal(np.full(100, 3.0), 0.1)) == pytest.approx(3.0)

    def test_long_cosine_averages_out(self):
        assert abs(time_average(cosine_record())) <= 1e-3

    def test_squared_cosine(self):
        x = cosine_record()
        sq = make_signal(x.samples**2, x.dt)
        assert time_average(sq) == pytest.approx(0.5, abs=1e-3)


class TestInnerProduct:
    def test_self_product_of_cosine(self):
        x = cosine_record()
        assert inner_product(x, x) == pytest.approx(0.5, abs=1e-3)

    def test_incommensurable_tones_nearly_orthogonal(self):
        # T must cover 200/(sqrt(2)-1) seconds for the bound to bite
        dt = 0.1
        count = 5001
        t = dt * np.arange(count)
        x = make_signal(np.cos(t), dt)
        y = make_signal(np.cos(math.sqrt(2.0) * t), dt)
        assert abs(inner_product(x, y)) <= 0.01

    def test_zero_operand(self):
        x = cosine_record(count=100)
        z = make_signal(np.zeros(100), 0.1)
        assert inner_product(x, z) == 0.0

    def test_mismatched_records_rejected(self):
        a = make_signal(np.zeros(10), 0.1)
        with pytest.raises(InvalidArgumentError):
            inner_product(a, make_signal(np.zeros(11), 0.1))
        with pytest.raises(InvalidArgumentError):
            inner_product(a, make_signal(np.zeros(10), 0.2))

    def test_decay_bound_over_gap_grid(self):
        rng = np.random.RandomState(31)
        for _ in range(60):
            dt = rng.uniform(0.05, 0.5)
            count = rng.randint(500, 5000)
            w1 = rng.uniform(0.5, 3.0)
            gap = rng.uniform(0.05, 2.0)
            w2 = w1 + gap
            if w2 * dt >= 0.9 * math.pi:
                continue
            t = dt * np.arange(count)
            x = make_signal(np.cos(w1 * t), dt)
            y = make_signal(np.cos(w2 * t), dt)
            span = (count - 1) * dt
            assert abs(inner_product(x, y)) <= 2.0 / (span * gap) + 2.0 / count


class TestFourierCoeff:
    def test_cosine_gives_real_unit(self):
        c = fourier_coeff(cosine_record(), 1.0)
        assert abs(c - 1.0) <= 0.01

    def test_sine_gives_negative_imag_unit(self):
        dt = 0.1
        t = dt * np.arange(6284)
        c = fourier_coeff(make_signal(np.sin(t), dt), 1.0)
        assert abs(c - (-1j)) <= 0.01

    def test_zero_signal(self):
        assert fourier_coeff(make_signal(np.zeros(64), 0.1), 1.0) == 0.0

    def test_range_validation(self):
        x = make_signal(np.zeros(64), 0.1)
        with pytest.raises(InvalidArgumentError):
            fourier_coeff(x, 0.0)
        with pytest.raises(InvalidArgumentError):
            fourier_coeff(x, -1.0)
        with pytest.raises(InvalidArgumentError):
            fourier_coeff(x, math.pi / 0.1)

    def test_matches_direct_sum_oracle(self):
        rng = np.random.RandomState(42)
        dt = 0.21
        samples = rng.randn(257)
        x = make_signal(samples, dt)
        for omega in (0.3, 1.0, 4.7, 11.0):
            got = fourier_coeff(x, omega)
            want = oracle_fourier_coeff(samples, dt, omega)
            assert got == pytest.approx(want, abs=1e-10)

    def test_linear_in_signal(self):
        rng = np.random.RandomState(7)
        a = rng.randn(400)
        b = rng.randn(400)
        dt = 0.2
        lhs = fourier_coeff(make_signal(3.0 * a - 0.5 * b, dt), 1.7)
        rhs = 3.0 * fourier_coeff(make_signal(a, dt), 1.7) - 0.5 * fourier_coeff(
            make_signal(b, dt), 1.7
        )
        assert lhs == pytest.approx(rhs, abs=1e-12)


class TestProjectOnto:
    def test_rejects_unlisted_tone(self):
        dt = 0.1
        t = dt * np.arange(6284)
        x = make_signal(np.cos(t) + np.cos(5.0 * t), dt)
        model = project_onto(x, FrequencySet.from_values([1.0], 0.1))
        assert len(model.terms) == 1
        assert model.terms[0][0] == 1.0
        assert abs(model.terms[0][1] - 1.0) <= 0.02

    def test_empty_set_keeps_dc_only(self):
        x = make_signal(np.full(64, 1.5), 0.1)
        model = project_onto(x, FrequencySet(omegas=np.array([]), delta=0.1))
        assert model.terms == ()
        assert model.dc == pytest.approx(1.5)

    def test_three_term_round_trip(self):
        model = HarmonicModel(
            dc=0.3,
            terms=((0.7, 1.0 - 0.5j), (1.9, -0.8 + 0.2j), (3.3, 0.4 + 1.1j)),
        )
        x = synth_harmonic(model, count=40001, dt=0.05)
        got = project_onto(x, FrequencySet.from_values(model.omegas, 0.05))
        for (w0, c0), (w1, c1) in zip(model.terms, got.terms):
            assert w1 == w0
            assert abs(c1 - c0) <= 0.01 * abs(c0)

    def test_bin_aligned_idempotence_is_exact(self):
        # tones on the sampling lattice make the projection kernel the
        # identity, so project -> synth -> project must reproduce itself
        count, dt = 1024, 0.25
        base = 2.0 * math.pi / (count * dt)
        freqs = FrequencySet.from_values([12 * base, 50 * base, 131 * base], base)
        rng = np.random.RandomState(11)
        x = make_signal(rng.randn(count), dt)
        first = project_onto(x, freqs)
        replay = synth_harmonic(first, count, dt)
        second = project_onto(replay, freqs)
        assert second.dc == pytest.approx(first.dc, abs=1e-12)
        for c1, c2 in zip(first.coeffs, second.coeffs):
            assert abs(c2 - c1) <= 1e-12

    def test_generic_idempotence_within_tolerance(self):
        # off-lattice tones: the residual is pure leakage, which the long
        # record pushes below 1e-6
        count, dt = 4_000_001, 0.5
        t = dt * np.arange(count)
        x = make_signal(np.cos(1.0 * t) + 0.5 * np.sin(3.0 * t), dt)
        freqs = FrequencySet.from_values([1.0, 3.0], 0.1)
        first = project_onto(x, freqs)
        replay = synth_harmonic(first, count, dt)
        second = project_onto(replay, freqs)
        for c1, c2 in zip(first.coeffs, second.coeffs):
            assert abs(c2 - c1) <= 1e-6 * max(1.0, abs(c1))


class TestCosAngle:
    def test_identical(self):
        x = cosine_record(count=500)
        assert cos_angle(x, x) == pytest.approx(1.0, abs=1e-12)

    def test_negated_and_scaled(self):
        x = cosine_record(count=500)
        y = make_signal(-2.0 * x.samples, x.dt)
        assert cos_angle(x, y) == pytest.approx(-1.0, abs=1e-12)

    def test_incommensurable_tones(self):
        dt = 0.1
        count = 6284
        t = dt * np.arange(count)
        x = make_signal(np.cos(t), dt)
        y = make_signal(np.cos(math.sqrt(2.0) * t), dt)
        assert abs(cos_angle(x, y)) <= 0.02

    def test_zero_norm_rejected(self):
        x = cosine_record(count=100)
        with pytest.raises(DegenerateInputError):
            cos_angle(x, make_signal(np.zeros(100), 0.1))


class TestParsevalConsistency:
    def test_seeded_models(self):
        rng = np.random.RandomState(88)
        for _ in range(50):
            model, base = parseval_model(rng)
            x = parseval_record(model, base, periods=100)
            sq = make_signal(x.samples**2, x.dt)
            want = model.mean_square()
            assert time_average(sq) == pytest.approx(want, rel=1e-3)
