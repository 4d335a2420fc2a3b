import dataclasses
import math

import numpy as np
import pytest

from specpredict import (
    AnticausalKernel,
    DegeneracyClass,
    TimeSeries,
    build_predictor,
    causality_defect,
    eval_v_factor,
    find_gamma0,
    inverse_transform,
    lemma_check,
    make_grid,
    norm,
    orthogonality_residual,
    predict,
    transfer,
    v_minus_one,
)
from specpredict.predictor import factor_exponent

KERNEL = AnticausalKernel((1.0,), (1.0,))


class TestVFactor:
    def test_zero_at_pole(self):
        assert eval_v_factor(1.0, 1.0, 50.0, 4.0) == 0.0
        assert abs(eval_v_factor(2.5, 2.5, 3.0, 0.5)) < 1e-15

    def test_factor_dev_below_one_outside_band(self):
        # |V_j - 1| < 1 wherever |omega| exceeds the band edge
        for gamma in (0.5, 10.0, 1000.0):
            alpha = gamma ** (-4.0)
            edge = math.sqrt(alpha)
            om = np.linspace(edge * 1.01, 50.0, 300)
            dev = np.abs(eval_v_factor(1j * om, 1.0, gamma, 4.0) - 1.0)
            assert np.all(dev < 1.0)

    def test_sharp_gamma_drives_factor_to_one(self):
        v = eval_v_factor(1j * 1.0, 1.0, 1000.0, 4.0)
        assert abs(v - 1.0) < 1e-12

    def test_modulus_identity(self):
        # |V_j(iw) - 1| = exp(-gamma * Re((iw-a)/(iw+gamma^-r))) pointwise
        gamma, r, a = 7.0, 1.5, 0.8
        om = np.linspace(0.05, 40.0, 500)
        dev = np.abs(eval_v_factor(1j * om, a, gamma, r) - 1.0)
        expected = np.exp(factor_exponent(1j * om, a, gamma, r).real)
        assert np.max(np.abs(dev - expected) / expected) < 1e-12

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            eval_v_factor(1j, 1.0, -1.0, 4.0)
        with pytest.raises(ValueError):
            eval_v_factor(1j, 1.0, 10.0, 0.0)
        with pytest.raises(ValueError):
            eval_v_factor(1j, -2.0, 10.0, 4.0)

    def test_v_minus_one_keeps_precision_for_tiny_deviation(self):
        om = np.array([1.0, 5.0])
        dev = v_minus_one(om, KERNEL, 100.0, 4.0)
        expected = np.exp(factor_exponent(1j * om, 1.0, 100.0, 4.0).real)
        assert np.all(np.abs(dev) == pytest.approx(expected, rel=1e-10))
        # naive evaluation would round these ~1e-44 deviations to zero
        assert 0 < abs(dev[0]) < 1e-40


class TestBuildPredictor:
    def test_large_gamma_transfer_approaches_kernel(self, small_grid):
        pt = build_predictor(KERNEL, 1000.0, 4.0, small_grid)
        K = transfer(KERNEL, small_grid).values
        nz = small_grid.omegas() != 0.0
        assert np.max(np.abs(pt.khat_values[nz] - K[nz])) < 1e-10

    def test_omega_threshold_formula(self, small_grid):
        pt = build_predictor(KERNEL, 100.0, 4.0, small_grid)
        assert pt.omega_threshold == pytest.approx(1e-4)

    def test_khat_is_nodewise_product(self, small_grid):
        pt = build_predictor(KERNEL, 20.0, 2.0, small_grid)
        K = transfer(KERNEL, small_grid).values
        finite = ~pt.saturated
        assert np.allclose(pt.khat_values[finite], (pt.v_values * K)[finite])

    def test_hermitian_khat_and_real_kernel(self, small_grid):
        from specpredict import Spectrum

        pt = build_predictor(AnticausalKernel((0.5, 2.0), (0.1, 1.0)), 15.0, 1.0, small_grid)
        assert Spectrum(small_grid, pt.khat_values).is_hermitian
        assert pt.khat_time.is_real

    def test_kappa_sup_is_grid_max(self, small_grid):
        pt = build_predictor(KERNEL, 12.0, 0.8, small_grid)
        assert pt.kappa_sup == pytest.approx(np.max(np.abs(pt.khat_values)))

    def test_saturation_flagged_and_clamped(self):
        g = make_grid(2**12, 0.01)
        pt = build_predictor(KERNEL, 100.0, 4.0, g)
        assert pt.any_saturated
        assert np.all(np.isfinite(pt.khat_values[~pt.saturated].view(float)))
        assert math.isfinite(pt.kappa_sup)

    def test_pointwise_convergence_in_gamma(self, small_grid):
        devs = []
        om = small_grid.omegas()
        k = int(np.argmin(np.abs(om - 1.0)))
        for gamma in (10.0, 100.0, 1000.0, 10000.0):
            dev = abs(v_minus_one(np.array([om[k]]), KERNEL, gamma, 4.0)[0])
            devs.append(dev)
        assert all(a >= b for a, b in zip(devs, devs[1:]))
        assert devs[-1] == 0.0

    def test_gain_growth_along_sweep(self):
        # nondecreasing grid gain; strict growth at a representable config
        g = make_grid(2**14, 0.01)
        kern = AnticausalKernel((0.01,), (1.0,))
        kappas = [build_predictor(kern, gamma, 0.6, g).kappa_sup for gamma in (10, 30, 100, 300)]
        assert all(b > a for a, b in zip(kappas, kappas[1:]))


class TestPredict:
    def test_zero_signal(self, small_grid):
        pt = build_predictor(KERNEL, 10.0, 1.0, small_grid)
        y = predict(pt, TimeSeries(small_grid, np.zeros(small_grid.n)))
        assert norm(y, 2) == 0.0

    def test_grid_mismatch_rejected(self, small_grid):
        pt = build_predictor(KERNEL, 10.0, 1.0, small_grid)
        other = make_grid(small_grid.n * 2, small_grid.delta_t)
        with pytest.raises(ValueError):
            predict(pt, TimeSeries(other, np.zeros(other.n)))

    def test_identity_transfer_predicts_target_exactly(self, small_grid):
        # artificial V = 1 makes the "prediction" equal the anti-causal output
        from specpredict import apply_anticausal

        pt = build_predictor(KERNEL, 10.0, 1.0, small_grid)
        K = transfer(KERNEL, small_grid).values
        fake = dataclasses.replace(
            pt,
            khat_values=K,
            v_values=np.ones(small_grid.n, dtype=complex),
            khat_time=inverse_transform(transfer(KERNEL, small_grid)),
        )
        rng = np.random.Generator(np.random.Philox(4))
        x = TimeSeries(small_grid, rng.standard_normal(small_grid.n) + 0j)
        y = apply_anticausal(KERNEL, x)
        y_hat = predict(fake, x)
        assert norm(TimeSeries(small_grid, y_hat.samples - y.samples), 2) < 1e-12 * norm(y, 2)


class TestCausalityDefect:
    def _pt_with_kernel(self, grid, samples):
        pt = build_predictor(KERNEL, 10.0, 1.0, grid)
        return dataclasses.replace(pt, khat_time=TimeSeries(grid, samples))

    def test_exact_causal_support_gives_zero(self, small_grid):
        s = np.zeros(small_grid.n)
        s[small_grid.n // 2 :] = 1.0
        assert causality_defect(self._pt_with_kernel(small_grid, s)) == 0.0

    def test_time_reversed_kernel(self, small_grid):
        t = small_grid.times()
        s = np.where(t >= 0, np.exp(-np.abs(t)), 0.0)
        # reversal around t = 0 keeps that sample in place
        n = small_grid.n
        rev = s[(n - np.arange(n)) % n]
        d_causal = causality_defect(self._pt_with_kernel(small_grid, s))
        d_rev = causality_defect(self._pt_with_kernel(small_grid, rev))
        share_t0 = s[n // 2] ** 2 / np.sum(s**2)
        assert d_causal == 0.0
        assert d_rev == pytest.approx(1.0 - share_t0)

    def test_zero_kernel_defined_as_zero(self, small_grid):
        assert causality_defect(self._pt_with_kernel(small_grid, np.zeros(small_grid.n))) == 0.0

    def test_certifies_causal_support_at_representable_config(self):
        # band edge resolved, gain representable: the inverse transform is
        # genuinely supported on t >= 0 up to discretization leakage
        g = make_grid(2**17, 0.01)
        pt = build_predictor(AnticausalKernel((0.01,), (1.0,)), 30.0, 0.6, g)
        assert not pt.any_saturated
        assert causality_defect(pt) < 1e-6


class TestLemmaChecks:
    @pytest.mark.parametrize("gamma", [10.0, 100.0, 1000.0])
    def test_high_band_bounds(self, gamma):
        g = make_grid(2**14, 0.01)
        pt = build_predictor(KERNEL, gamma, 4.0, g)
        rep = lemma_check(pt, DegeneracyClass(2.0, 1.0))
        assert rep.pass_positivity and rep.pass_factor_dev

    def test_tail_deviation_decreases(self):
        g = make_grid(2**14, 0.01)
        prev = math.inf
        for gamma in (10.0, 100.0, 1000.0):
            rep = lemma_check(build_predictor(KERNEL, gamma, 4.0, g), DegeneracyClass(2.0, 1.0))
            assert rep.tail_dev_max < prev
            prev = rep.tail_dev_max

    def test_low_band_log_domain_bound(self):
        # gamma small enough that the band contains many nodes
        g = make_grid(2**14, 0.01)
        pt = build_predictor(KERNEL, 2.0, 4.0, g)
        rep = lemma_check(pt, DegeneracyClass(2.0, 1.0))
        assert rep.low_band_nodes > 10
        assert rep.pass_low_band

    def test_rejects_out_of_band_floor(self):
        g = make_grid(2**10, 0.01)
        pt = build_predictor(KERNEL, 10.0, 1.0, g)
        with pytest.raises(ValueError):
            lemma_check(pt, DegeneracyClass(2.0, 1.0), omega_floor=g.omega_max * 2)

    def test_gamma0_located(self):
        g = make_grid(2**14, 0.01)
        g0 = find_gamma0(KERNEL, DegeneracyClass(2.0, 1.0), 4.0, g, bracket=(0.5, 2000.0))
        assert math.isfinite(g0) and g0 >= 0.5
        for gamma in (max(g0, 10.0), 100.0, 1000.0):
            rep = lemma_check(build_predictor(KERNEL, gamma, 4.0, g), DegeneracyClass(2.0, 1.0))
            assert rep.pass_low_band


class TestOrthogonality:
    def test_identical_copies_give_maximal_residual(self, small_grid):
        pt = build_predictor(KERNEL, 10.0, 1.0, small_grid)
        K = transfer(KERNEL, small_grid)
        with np.errstate(divide="ignore"):
            log_k = np.log(np.abs(K.values))
        fake = dataclasses.replace(
            pt, khat_log_mag=log_k.copy(), khat_phase=np.angle(K.values).copy()
        )
        assert orthogonality_residual(fake) == pytest.approx(1.0, rel=1e-9)

    def test_zero_predictor_residual_zero(self, small_grid):
        pt = build_predictor(KERNEL, 10.0, 1.0, small_grid)
        fake = dataclasses.replace(pt, khat_log_mag=np.full(small_grid.n, -np.inf))
        assert orthogonality_residual(fake) == 0.0

    def test_small_residual_at_representable_config(self):
        g = make_grid(2**17, 0.01)
        pt = build_predictor(AnticausalKernel((0.01,), (1.0,)), 30.0, 0.6, g)
        assert orthogonality_residual(pt) < 1e-2


class TestSerialization:
    def test_round_trip_rebuilds_identical_transfer(self, small_grid):
        from specpredict import predictor_from_json, predictor_to_json

        pt = build_predictor(AnticausalKernel((0.5, 2.0), (0.1, 1.0)), 15.0, 1.0, small_grid)
        clone = predictor_from_json(predictor_to_json(pt))
        assert clone.gamma == pt.gamma and clone.r == pt.r
        assert clone.grid == pt.grid and clone.kernel == pt.kernel
        assert np.array_equal(clone.khat_values, pt.khat_values)

    def test_unknown_fields_rejected(self):
        from specpredict import predictor_from_json

        with pytest.raises(ValueError):
            predictor_from_json('{"kernel": {"poles": [1.0]}, "gamma": 1, "r": 1, "grid": {"n": 8, "delta_t": 1.0}, "extra": 0}')
