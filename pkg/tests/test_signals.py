import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specpredict import (
    DegeneracyClass,
    GeneratorConfig,
    TimeSeries,
    add_noise,
    class_norm,
    counterexample_pair,
    forward_transform,
    make_grid,
    norm,
    sample_bandlimited,
    sample_class_member,
    spectrum_l1,
    weight_h,
)
from specpredict.degeneracy import log_weight

GRID = make_grid(2**12, 0.02)
CLS = DegeneracyClass(2.0, 1.0)


def cfg(seed=0, **kw):
    return GeneratorConfig(seed=seed, grid=GRID, **kw)


class TestDegeneracyClass:
    @pytest.mark.parametrize("q", [1.0, 0.5, 0.99, -2.0])
    def test_rejects_inadmissible_q(self, q):
        with pytest.raises(ValueError):
            DegeneracyClass(q, 1.0)

    @pytest.mark.parametrize("c", [0.0, -1.0])
    def test_rejects_inadmissible_c(self, c):
        with pytest.raises(ValueError):
            DegeneracyClass(2.0, c)

    def test_min_sharpness(self):
        assert DegeneracyClass(2.0, 1.0).min_sharpness_exponent == pytest.approx(2.0)
        assert DegeneracyClass(5.0, 1.0).min_sharpness_exponent == pytest.approx(0.5)


class TestWeight:
    def test_value_at_unit_frequency(self):
        assert weight_h(np.array([1.0]), CLS)[0] == pytest.approx(math.e)

    def test_limit_at_high_frequency(self):
        assert weight_h(np.array([1e9]), CLS)[0] == pytest.approx(1.0)

    def test_infinite_at_origin(self):
        assert weight_h(np.array([0.0]), CLS)[0] == math.inf

    def test_log_form_avoids_overflow(self):
        lw = log_weight(np.array([1e-3]), 2.0, 1.0)
        assert lw[0] == pytest.approx(1e6)
        assert weight_h(np.array([1e-3]), CLS)[0] == math.inf


class TestClassNorm:
    def test_zero_signal(self):
        assert class_norm(TimeSeries(GRID, np.zeros(GRID.n)), CLS) == 0.0

    def test_exact_envelope_has_unit_norm(self):
        from specpredict import Spectrum, inverse_transform

        om = GRID.omegas()
        vals = np.where(
            (np.abs(om) > 0) & (np.abs(om) <= 1.0), np.exp(-log_weight(om, 2.0, 1.0)), 0.0
        ).astype(complex)
        x = inverse_transform(Spectrum(GRID, vals))
        assert class_norm(TimeSeries(GRID, x.samples.real + 0j), CLS) == pytest.approx(
            1.0, rel=1e-5
        )

    def test_white_signal_is_not_a_member(self):
        rng = np.random.Generator(np.random.Philox(5))
        white = TimeSeries(GRID, rng.standard_normal(GRID.n) + 0j)
        assert class_norm(white, CLS) == math.inf


class TestClassMember:
    def test_finite_class_norm(self):
        # equality nodes re-evaluate with roundtrip roundoff on top, so the
        # norm can sit a hair above the envelope amplitude
        x = sample_class_member(CLS, cfg(1))
        assert class_norm(x, CLS) <= 1.0 + 1e-3

    def test_deterministic(self):
        a = sample_class_member(CLS, cfg(42))
        b = sample_class_member(CLS, cfg(42))
        assert np.array_equal(a.samples, b.samples)
        c = sample_class_member(CLS, cfg(43))
        assert not np.array_equal(a.samples, c.samples)

    def test_real_output(self):
        assert sample_class_member(CLS, cfg(2)).is_real

    def test_deep_degeneracy_bound(self):
        # emitted spectrum obeys |X| <= exp(-c/w^q) exactly, so near w = 0.1
        # the content is at the e^{-100} scale, far below roundoff
        x = sample_class_member(CLS, cfg(3))
        X = forward_transform(x).values
        om = np.abs(GRID.omegas())
        node = int(np.argmin(np.abs(om - 0.1)))
        floor = 1e-12 * np.max(np.abs(X))
        assert abs(X[node]) <= max(math.exp(-1.0 / om[node] ** 2), floor)

    def test_degeneracy_inequality_at_every_node(self):
        # evaluated above a spectral roundoff floor; the floor keeps roundtrip
        # junk (absolute ~1e-16 of the peak) out of the enormous weights
        x = sample_class_member(CLS, cfg(4))
        X = forward_transform(x).values
        om = GRID.omegas()
        mags = np.abs(X)
        floor = 1e-10 * np.max(mags)
        live = mags > floor
        live[0] = False
        weighted = mags[live] * np.exp(np.minimum(log_weight(om[live], CLS.q, CLS.c), 700.0))
        assert np.max(weighted) <= 1.0 + 1e-2

    def test_middle_half_guard(self):
        # guard quality needs a window long enough for the Gaussian taper
        # edge to outrun the envelope edge; T ~ 655 gives ~1e-7
        g = make_grid(2**14, 0.04)
        x = sample_class_member(CLS, GeneratorConfig(seed=5, grid=g))
        t = g.times()
        guard = np.abs(t) > g.span / 4
        peak = np.max(np.abs(x.samples.real))
        assert np.max(np.abs(x.samples.real[guard])) <= 1e-5 * peak

    def test_gaussian_profile(self):
        x = sample_class_member(CLS, cfg(6, profile="gaussian", sigma=1.5))
        X = np.abs(forward_transform(x).values)
        om = np.abs(GRID.omegas())
        envelope = np.exp(-(om**2) / (2 * 1.5**2) - np.minimum(log_weight(om, 2.0, 1.0), 700.0))
        floor = 1e-10 * np.max(X)
        live = X > floor
        live[0] = False
        assert np.all(X[live] <= np.maximum(envelope[live] * (1 + 1e-2), floor))


class TestGeneratorConfig:
    def test_rejects_bad_profile(self):
        with pytest.raises(ValueError):
            GeneratorConfig(seed=0, grid=GRID, profile="triangle")

    def test_gaussian_needs_sigma(self):
        with pytest.raises(ValueError):
            GeneratorConfig(seed=0, grid=GRID, profile="gaussian")

    def test_band_must_be_interior(self):
        with pytest.raises(ValueError):
            GeneratorConfig(seed=0, grid=GRID, band=(0.0, 1.0))
        with pytest.raises(ValueError):
            GeneratorConfig(seed=0, grid=GRID, band=(1.0, GRID.omega_max))

    def test_rejects_bad_seed(self):
        with pytest.raises(ValueError):
            GeneratorConfig(seed=-1, grid=GRID)


class TestBandlimited:
    def test_exact_support(self):
        x = sample_bandlimited(2.0, cfg(7))
        X = forward_transform(x).values
        outside = np.abs(GRID.omegas()) > 2.0
        assert np.max(np.abs(X[outside])) < 1e-13 * np.max(np.abs(X))

    def test_subresolution_band_gives_fundamental_pair(self):
        x = sample_bandlimited(GRID.delta_omega / 2, cfg(8))
        X = forward_transform(x).values
        big = np.abs(X) > 1e-8 * np.max(np.abs(X))
        populated = np.abs(GRID.omegas())[big]
        assert np.allclose(populated, GRID.delta_omega)

    def test_membership_with_degeneracy_gap(self):
        member_cfg = cfg(9, band=(0.5, 2.0))
        x = sample_bandlimited(2.0, member_cfg)
        for q, c in [(2.0, 1.0), (1.5, 0.5), (3.0, 2.0)]:
            assert math.isfinite(class_norm(x, DegeneracyClass(q, c)))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            sample_bandlimited(GRID.omega_max, cfg(1))
        with pytest.raises(ValueError):
            sample_bandlimited(0.0, cfg(1))


class TestCounterexamplePair:
    def test_partition_of_unit_modulus(self):
        x1, x2 = counterexample_pair(0.5, cfg(10))
        X1 = forward_transform(x1).values
        X2 = forward_transform(x2).values
        mags = np.abs(X1) + np.abs(X2)
        assert np.max(np.abs(mags - 1.0)) < 1e-12
        assert np.max(np.abs(X1) * np.abs(X2)) < 1e-12

    def test_first_part_is_bandlimited(self):
        x1, _ = counterexample_pair(0.5, cfg(11))
        X1 = forward_transform(x1).values
        outside = np.abs(GRID.omegas()) >= 0.5
        assert np.max(np.abs(X1[outside])) < 1e-13

    def test_grid_energy_identity(self):
        # Parseval of the unit-modulus split: total energy (1/2pi)*2*omega_max
        x1, x2 = counterexample_pair(0.5, cfg(12))
        total = norm(x1, 2) ** 2 + norm(x2, 2) ** 2
        assert total == pytest.approx(2 * GRID.omega_max / (2 * math.pi), rel=1e-10)

    def test_rejects_out_of_range_split(self):
        with pytest.raises(ValueError):
            counterexample_pair(GRID.omega_max * 1.1, cfg(1))


class TestAddNoise:
    def test_zero_intensity_is_identity(self):
        x = sample_class_member(CLS, cfg(13))
        noisy, N = add_noise(x, 0.0, cfg(13))
        assert np.array_equal(noisy.samples, x.samples)
        assert np.all(N.values == 0)

    @settings(max_examples=15, deadline=None)
    @given(nu=st.floats(1e-6, 10.0), seed=st.integers(0, 2**32 - 1))
    def test_exact_l1_calibration(self, nu, seed):
        x = TimeSeries(GRID, np.zeros(GRID.n))
        _, N = add_noise(x, nu, cfg(seed))
        assert spectrum_l1(N) == pytest.approx(nu, rel=1e-12)

    def test_flat_band_magnitude(self):
        # flat profile over 2K nodes means each carries nu / (2K delta_omega)
        band = (1.0, 2.0)
        noise_cfg = cfg(14, band=band)
        om = np.abs(GRID.omegas())
        count = int(np.count_nonzero((om >= band[0]) & (om <= band[1])))
        x = TimeSeries(GRID, np.zeros(GRID.n))
        _, N = add_noise(x, 1.0, noise_cfg)
        sel = np.abs(N.values) > 0
        assert int(np.count_nonzero(sel)) == count
        assert np.allclose(np.abs(N.values[sel]), 1.0 / (count * GRID.delta_omega))

    def test_noise_is_real_in_time(self):
        x = TimeSeries(GRID, np.zeros(GRID.n))
        noisy, N = add_noise(x, 0.3, cfg(15))
        assert noisy.is_real
        from specpredict import Spectrum

        assert Spectrum(GRID, N.values).is_hermitian

    def test_rejects_negative_intensity(self):
        with pytest.raises(ValueError):
            add_noise(TimeSeries(GRID, np.zeros(GRID.n)), -0.1, cfg(1))
