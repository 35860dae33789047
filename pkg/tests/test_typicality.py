import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, stats

from mixedcorr import dqc1, linalg, typicality as ty
from mixedcorr.linalg import BipartitionMask

from conftest import kron_hadamard


def r_first_row_by_enumeration(n):
    """R_z = 2^{-n} sum_x (-1)^{x.z + sum_i x_i x_{i+1}}, directly."""
    row = []
    for z in itertools.product((0, 1), repeat=n):
        total = 0
        for x in itertools.product((0, 1), repeat=n):
            e = sum(a * b for a, b in zip(x, z)) + sum(x[i] * x[i + 1] for i in range(n - 1))
            total += (-1) ** e
        row.append(total / 2**n)
    return np.array(row)


def brute_graph_negativity(phases):
    """Build U explicitly with Kronecker Hadamards and CZ gates, then PT the DQC1 state."""
    n = int(math.log2(len(phases)))
    H = kron_hadamard(n)
    CZ = np.diag([1, 1, 1, -1])
    C = np.eye(2**n)
    for i in range(n - 1):
        C = linalg.embed_gate(CZ, (i, i + 1), n) @ C
    U = C @ H @ np.diag(np.exp(1j * np.asarray(phases))) @ H @ C
    state = dqc1.build_dqc1_state(U)
    return dqc1.negativity_brute(state, BipartitionMask.alternating(n)), U


class TestErfc:
    @given(st.floats(-6, 12))
    def test_matches_stdlib(self, x):
        assert abs(ty.erfc(x) - math.erfc(x)) < 1e-14

    def test_reference_points(self):
        assert ty.erfc(0) == 1
        assert ty.erfc(30) < 1e-300
        for x in (0.3, 1.7, 3.2):
            assert ty.erfc(-x) == pytest.approx(2 - ty.erfc(x), abs=1e-15)


class TestClosedForm:
    def test_values(self):
        assert ty.closed_form_E("1d") == pytest.approx(0.166631, abs=1e-6)
        assert ty.closed_form_E("2d") == pytest.approx(0.139403, abs=1e-6)
        for mode in ("1d", "2d"):
            assert 0 < ty.closed_form_E(mode) < 1

    def test_quadrature(self):
        # Scaled displacement u: half-normal (1D) and Rayleigh with E u^2 = 1 (2D).
        half_normal = lambda u: math.sqrt(2 / math.pi) * math.exp(-u * u / 2)
        rayleigh = lambda u: 2 * u * math.exp(-u * u)
        e1, _ = integrate.quad(lambda u: half_normal(u) * (u - 1), 1, np.inf, epsabs=1e-14)
        e2, _ = integrate.quad(lambda u: rayleigh(u) * (u - 1), 1, np.inf, epsabs=1e-14)
        assert ty.closed_form_E("1d") == pytest.approx(e1, abs=1e-12)
        assert ty.closed_form_E("2d") == pytest.approx(e2, abs=1e-12)

    def test_finite_n_binary_walk_converges(self):
        # Exact binomial expectation at finite n approaches the closed form.
        errors = []
        for n in (4, 8, 12):
            N = 2**n
            k = np.arange(N + 1)
            u = np.abs(2 * k - N) / 2 ** (n / 2)
            errors.append(abs((stats.binom.pmf(k, N, 0.5) * np.maximum(u - 1, 0)).sum() - ty.closed_form_E("1d")))
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] < 1e-4

    def test_unknown(self):
        with pytest.raises(ValueError):
            ty.closed_form_E("3d")


class TestRTransform:
    def test_base_case_first_row(self):
        e0 = np.zeros(4)
        e0[0] = 1
        row = np.real(ty.apply_r(e0, 2))
        assert list(row) == [0.5, 0.5, 0.5, -0.5]
        assert np.allclose(row, r_first_row_by_enumeration(2))

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_first_row_matches_enumeration(self, n):
        e0 = np.zeros(2**n)
        e0[0] = 1
        assert np.allclose(np.real(ty.apply_r(e0, n)), r_first_row_by_enumeration(n), atol=1e-14)

    def test_identity_phases(self):
        lam = ty.r_transform(np.zeros(64))
        assert np.array_equal(lam, np.ones(64))
        assert ty.negativity_from_eigenvector(lam) == 1

    @given(st.integers(1, 8), st.integers(0, 2**32 - 1))
    def test_norm_preserved(self, n, seed):
        phases = np.random.default_rng(seed).uniform(0, 2 * np.pi, 2**n)
        lam = ty.r_transform(phases)
        assert abs(np.linalg.norm(lam) - 2 ** (n / 2)) < 1e-10

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            ty.apply_r(np.ones(8), 2)
        with pytest.raises(ValueError):
            ty.r_transform(np.ones(6))

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_moduli_match_pt_spectrum(self, n):
        rng = np.random.default_rng(n)
        for model in ty.MODELS:
            phases = ty.draw_phases(n, model, rng)
            report, U = brute_graph_negativity(phases)
            # rho_y has eigenvalues (1 +- d)/2^{n+1}; recover d from the upper half.
            ev = np.sort(report.spectrum.values)[::-1][: 2**n]
            d = ev * 2 ** (n + 1) - 1
            assert linalg.spectra_match(d, np.abs(ty.r_transform(phases)), 1e-9)

    def test_graph_unitary_matches_explicit(self):
        phases = np.random.default_rng(1).uniform(0, 2 * np.pi, 16)
        _, U = brute_graph_negativity(phases)
        assert np.allclose(ty.graph_unitary(phases), U)


class TestNegativityFromEigenvector:
    def test_values(self):
        assert ty.negativity_from_eigenvector(np.exp(1j * np.arange(8))) == pytest.approx(1)
        assert ty.negativity_from_eigenvector([2, 0, 0, 0]) == 1.25

    @pytest.mark.parametrize("n", [2, 4])
    def test_matches_brute(self, n):
        rng = np.random.default_rng(40 + n)
        for model in ty.MODELS:
            for _ in range(10):
                phases = ty.draw_phases(n, model, rng)
                report, _ = brute_graph_negativity(phases)
                assert abs(report.m_value - ty.negativity_from_eigenvector(ty.r_transform(phases))) < 1e-9


class TestLemma:
    @pytest.mark.parametrize("n,pos,neg", [(2, 3, 1), (4, 10, 6), (6, 36, 28)])
    def test_counts(self, n, pos, neg):
        r = ty.verify_lemma(n)
        assert (r.positive, r.negative) == (pos, neg) == (r.expected_positive, r.expected_negative)
        assert r.holds

    def test_row_shift(self):
        r = ty.verify_lemma(8, shift_pairs=100, seed=3)
        assert r.shift_checks == 100 and r.shift_max_error < 1e-12

    def test_first_row_sums_to_one(self):
        for n in (2, 4, 6, 8, 10):
            assert abs(ty.verify_lemma(n, shift_pairs=0).row_sum - 1) <= 1e-10

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            ty.verify_lemma(5)

    def test_odd_n_moduli_not_flat(self):
        # The flat-modulus property really needs even n.
        e0 = np.zeros(8)
        e0[0] = 1
        assert len(set(np.round(np.abs(ty.apply_r(e0, 3)), 12))) > 1


class _HeadsRng:
    def integers(self, low, high, size):
        return np.zeros(size, dtype=int)


class TestWalks:
    def test_all_heads(self):
        assert ty.walk_statistic(6, "binary", _HeadsRng()) == pytest.approx(8)

    @pytest.mark.parametrize("model", ty.MODELS)
    def test_second_moment(self, model):
        rng = np.random.default_rng(4)
        s2 = np.array([ty.walk_statistic(6, model, rng) ** 2 for _ in range(4000)])
        assert abs(s2.mean() - 1) < 3 * s2.std(ddof=1) / math.sqrt(s2.size)

    def test_limit_distributions(self):
        rng = np.random.default_rng(5)
        one_d = [ty.walk_statistic(10, "binary", rng) for _ in range(3000)]
        two_d = [ty.walk_statistic(10, "uniform", rng) for _ in range(3000)]
        assert stats.kstest(one_d, stats.halfnorm.cdf).pvalue > 1e-3
        # |sum| / 2^{n/2} with E u^2 = 1 is Rayleigh with scale 1/sqrt 2.
        assert stats.kstest(two_d, stats.rayleigh(scale=1 / math.sqrt(2)).cdf).pvalue > 1e-3

    def test_estimate_basic(self):
        est = ty.estimate_E(6, "2d", 400, seed=1)
        assert est.e_hat >= 0 and est.samples == 400
        assert est.e_closed == ty.closed_form_E("2d")
        with pytest.raises(ValueError):
            ty.estimate_E(6, "2d", 50, seed=1)
        with pytest.raises(ValueError):
            ty.estimate_E(6, "3d", 500, seed=1)

    def test_std_err_shrinks(self):
        a = ty.estimate_E(8, "1d", 2000, seed=2).std_err
        b = ty.estimate_E(8, "1d", 4000, seed=3).std_err
        assert b / a == pytest.approx(1 / math.sqrt(2), rel=0.2)

    def test_parallel_determinism(self):
        assert ty.estimate_E(6, "2d", 300, seed=9) == ty.estimate_E(6, "2d", 300, seed=9, workers=3)


class TestTypicalityMC:
    def test_summary(self):
        s = ty.typicality_mc(6, "binary", 200, seed=1)
        assert s.mean_M >= 1 and s.prediction == pytest.approx(1 + ty.closed_form_E("1d"))
        assert s.discrepancy == s.mean_M - s.prediction

    def test_n10_close_to_prediction(self):
        s = ty.typicality_mc(10, "binary", 1000, seed=7)
        assert abs(s.discrepancy) / s.prediction < 0.1

    def test_variance_decreases(self):
        sds = [ty.typicality_mc(n, "uniform", 400, seed=n).std_dev for n in (4, 6, 8, 10)]
        assert all(b < a for a, b in zip(sds, sds[1:]))

    def test_guards(self):
        with pytest.raises(ValueError):
            ty.typicality_mc(5, "binary", 10, seed=1)
        with pytest.raises(ValueError):
            ty.typicality_mc(14, "binary", 10, seed=1)


class TestFixedTrace:
    def test_spec_validation(self):
        assert ty.FixedTraceSpec(4, Fraction(1, 4), 10).plus_count == 10
        with pytest.raises(ValueError):
            ty.FixedTraceSpec(4, Fraction(1, 3), 10)
        with pytest.raises(ValueError):
            ty.FixedTraceSpec(4, Fraction(3, 2), 10)

    def test_phase_counts(self):
        spec = ty.FixedTraceSpec(6, Fraction(5, 8), 1)
        phases = ty.fixed_trace_phases(spec, np.random.default_rng(0))
        assert (phases == 0).sum() == spec.plus_count
        assert np.cos(phases).sum() / 64 == pytest.approx(5 / 8)

    def test_identity(self):
        s = ty.fixed_trace_mc(ty.FixedTraceSpec(6, Fraction(1), 50), seed=1)
        assert s.mean_M == 1 and s.std_err == 0

    def test_negativity_cap(self):
        for f in (Fraction(-1, 2), Fraction(0), Fraction(1, 4)):
            s = ty.fixed_trace_mc(ty.FixedTraceSpec(6, f, 200), seed=2)
            assert s.max_M <= 1.25 + 1e-9
