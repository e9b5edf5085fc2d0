import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irsdm.beamformers import (
    IterationTrace,
    MaxSrSlnrConfig,
    MrtVariant,
    align_phases_to_direct_path,
    an_beamformer,
    benchmark_phase,
    benchmark_solution,
    flops_max_sr_slnr,
    flops_mrt_nsp_pa,
    max_sr_cm,
    max_sr_slnr,
    mrt_cm,
    mrt_nsp_pa,
    pa_phase,
    slnr_phase,
)
from irsdm.channel import (
    PathLossModel,
    SteeringConfig,
    build_channels,
    reference_geometry,
)
from irsdm.linalg import null_space_projector, rayleigh_quotient
from irsdm.metrics import (
    BeamformingSolution,
    cascaded_power_bob,
    evaluate,
    make_power_budget,
    slnr,
    slnr_quadratic_forms,
)
from irsdm.oracle import GridSpec, grid_max_cascaded_power, sample_max_quotient


def make_channels(na=16, ns=32, seed=None):
    geom = reference_geometry()
    if seed is not None:
        rng = np.random.default_rng(seed)
        geom.theta_alice_irs = rng.uniform(0.2, np.pi - 0.2)
        geom.theta_alice_bob = rng.uniform(0.2, np.pi - 0.2)
        geom.theta_alice_eve = rng.uniform(0.2, np.pi - 0.2)
    return build_channels(geom, SteeringConfig(na), SteeringConfig(ns), PathLossModel())


@pytest.fixture(scope="module")
def channels():
    return make_channels()


@pytest.fixture(scope="module")
def budget():
    return make_power_budget(30.0, 0.8, -40.0)


class TestAnBeamformer:
    def test_unit_norm_and_nulling(self, channels):
        v = an_beamformer(channels)
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
        assert abs(np.vdot(channels.alice_bob, v)) <= 1e-10
        assert np.linalg.norm(channels.alice_irs @ v) <= 1e-10

    def test_maximizes_power_toward_eve_in_null_space(self, channels):
        v = an_beamformer(channels)
        achieved = abs(np.vdot(channels.alice_eve, v)) ** 2
        constraints = np.vstack(
            [channels.alice_bob.conj()[None, :], channels.alice_irs_tx.conj()[None, :]]
        )
        t = null_space_projector(constraints)
        rng = np.random.default_rng(17)
        n = channels.alice_elements
        for _ in range(2000):
            x = t @ (rng.standard_normal(n) + 1j * rng.standard_normal(n))
            x /= np.linalg.norm(x)
            assert abs(np.vdot(channels.alice_eve, x)) ** 2 <= achieved + 1e-12

    def test_no_degrees_of_freedom(self):
        # Two independent constraint rows exhaust a 2-element array.
        ch = make_channels(na=2, ns=4)
        with pytest.raises(ValueError, match="no AN degrees of freedom"):
            an_beamformer(ch)

    def test_eve_inside_constraint_span(self):
        geom = reference_geometry()
        geom.theta_alice_eve = geom.theta_alice_bob
        ch = build_channels(geom, SteeringConfig(8), SteeringConfig(4), PathLossModel())
        with pytest.raises(ValueError, match="AN cannot reach Eve"):
            an_beamformer(ch)

    def test_phase_rescaled_eve_channel_gives_same_beam(self, channels):
        import copy

        rotated = copy.copy(channels)
        rotated.alice_eve = channels.alice_eve * np.exp(0.4j)
        v = an_beamformer(channels)
        w = an_beamformer(rotated)
        assert abs(np.vdot(v, w)) == pytest.approx(1.0, abs=1e-12)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_nulling_holds_on_random_geometries(self, seed):
        ch = make_channels(na=8, ns=6, seed=seed)
        try:
            v = an_beamformer(ch)
        except ValueError:
            return  # degenerate draw: Eve aligned with a constraint direction
        assert abs(np.vdot(ch.alice_bob, v)) <= 1e-10
        assert np.linalg.norm(ch.alice_irs @ v) <= 1e-10
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)


class TestMaxSrCm:
    def test_unit_norm(self, channels, budget):
        phases = benchmark_phase("random_phase", channels.irs_elements, 3)
        v = max_sr_cm(channels, phases, an_beamformer(channels), budget)
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-10)

    def test_beats_random_beams(self, channels, budget):
        phases = benchmark_phase("random_phase", channels.irs_elements, 5)
        an = an_beamformer(channels)
        best = max_sr_cm(channels, phases, an, budget)
        target = evaluate(
            channels, BeamformingSolution(best, an, phases), budget
        ).secrecy_rate
        rng = np.random.default_rng(9)
        n = channels.alice_elements
        for _ in range(500):
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            x /= np.linalg.norm(x)
            sr = evaluate(
                channels, BeamformingSolution(x, an, phases), budget
            ).secrecy_rate
            assert sr <= target + 1e-9

    def test_beats_mrt_for_fixed_phases(self, channels, budget):
        an = an_beamformer(channels)
        for variant in (MrtVariant.toward_ab(), MrtVariant.toward_ai()):
            cm = mrt_cm(channels, variant)
            phases = pa_phase(channels, cm)
            phases = align_phases_to_direct_path(channels, cm, phases)
            best = max_sr_cm(channels, phases, an, budget)
            sr_best = evaluate(
                channels, BeamformingSolution(best, an, phases), budget
            ).secrecy_rate
            sr_mrt = evaluate(
                channels, BeamformingSolution(cm, an, phases), budget
            ).secrecy_rate
            assert sr_best >= sr_mrt - 1e-9


class TestSlnrPhase:
    def test_unit_modulus(self, channels, budget):
        theta = slnr_phase(channels, mrt_cm(channels), budget)
        np.testing.assert_allclose(np.abs(theta), 1.0, atol=1e-12)

    def test_unconstrained_optimum_bounds_unit_modulus_candidates(self, budget):
        # The unit-circle projection is a heuristic, so the projected phases
        # need not dominate every unit-modulus candidate; the eigenvector
        # optimum of the underlying quotient bounds them all.
        from irsdm.linalg import dominant_gen_eigvec

        ch = make_channels(na=8, ns=6)
        cm = mrt_cm(ch)
        a, b = slnr_quadratic_forms(ch, cm, budget)
        bound = rayleigh_quotient(a, b, dominant_gen_eigvec(a, b))
        theta = slnr_phase(ch, cm, budget)
        assert slnr(ch, cm, theta, budget) <= bound * (1.0 + 1e-10)
        rng = np.random.default_rng(31)
        for _ in range(2000):
            cand = np.exp(2j * np.pi * rng.uniform(size=6))
            assert slnr(ch, cm, cand, budget) <= bound * (1.0 + 1e-10)

    def test_eigenvector_quotient_dominates_sampling(self, budget):
        ch = make_channels(na=8, ns=5)
        cm = mrt_cm(ch)
        a, b = slnr_quadratic_forms(ch, cm, budget)
        theta = slnr_phase(ch, cm, budget)
        # Before the unit-circle projection the eigenvector is exactly optimal.
        from irsdm.linalg import dominant_gen_eigvec

        u = dominant_gen_eigvec(a, b)
        q = rayleigh_quotient(a, b, u)
        assert sample_max_quotient(a, b, 50_000, 4) <= q * (1.0 + 1e-10)
        # The projected phases cannot beat the unconstrained optimum.
        assert rayleigh_quotient(a, b, theta) <= q * (1.0 + 1e-10)

    def test_no_eve_leakage_reduces_to_phase_alignment(self, budget):
        ch = make_channels(na=8, ns=6)
        ch.irs_eve = np.zeros(6, dtype=complex)
        cm = mrt_cm(ch)
        theta = slnr_phase(ch, cm, budget)
        aligned = pa_phase(ch, cm)
        # Equal up to a single global phase.
        ratio = theta / aligned
        np.testing.assert_allclose(ratio, ratio[0], atol=1e-8)

    def test_single_element(self, budget):
        ch = make_channels(na=8, ns=1)
        theta = slnr_phase(ch, mrt_cm(ch), budget)
        assert theta.shape == (1,)
        assert abs(theta[0]) == pytest.approx(1.0, abs=1e-12)


class TestPaPhase:
    def test_all_ones_for_real_positive_coefficients(self):
        ch = make_channels(na=4, ns=3)
        cm = mrt_cm(ch)
        coeff = ch.irs_bob.conj() * (ch.alice_irs @ cm)
        # Rotate each element so its coefficient is real positive; then the
        # aligned phases of the rotated channel are exactly one.
        ch.irs_bob = ch.irs_bob * np.exp(1j * np.angle(coeff))
        theta = pa_phase(ch, cm)
        np.testing.assert_allclose(theta, np.ones(3), atol=1e-12)

    def test_matches_grid_oracle_two_elements(self, budget):
        ch = make_channels(na=8, ns=2)
        cm = mrt_cm(ch)
        theta = pa_phase(ch, cm)
        exact = cascaded_power_bob(ch, cm, theta, budget)
        _, gridded = grid_max_cascaded_power(ch, cm, budget, GridSpec(360, 2))
        assert gridded <= exact * (1.0 + 1e-12)
        assert gridded >= exact * (1.0 - 1e-3)

    def test_zero_coefficient_convention(self, budget):
        ch = make_channels(na=8, ns=4)
        ch.irs_bob = ch.irs_bob.copy()
        ch.irs_bob[2] = 0.0
        theta = pa_phase(ch, mrt_cm(ch))
        assert theta[2] == 1.0 + 0.0j
        np.testing.assert_allclose(np.abs(theta), 1.0, atol=1e-12)


class TestAlignPhases:
    def test_reflected_matches_direct_phase(self, channels, budget):
        cm = mrt_cm(channels)
        theta = align_phases_to_direct_path(channels, cm, pa_phase(channels, cm))
        direct = np.vdot(channels.alice_bob, cm) * np.sqrt(channels.gain_bob)
        coeff = channels.irs_bob.conj() * (channels.alice_irs @ cm)
        reflected = np.sqrt(channels.gain_cascade_bob) * np.sum(theta * coeff)
        assert np.angle(reflected) == pytest.approx(np.angle(direct), abs=1e-10)

    def test_preserves_slnr(self, channels, budget):
        cm = mrt_cm(channels)
        theta = slnr_phase(channels, cm, budget)
        aligned = align_phases_to_direct_path(channels, cm, theta)
        assert slnr(channels, cm, aligned, budget) == pytest.approx(
            slnr(channels, cm, theta, budget), rel=1e-12
        )

    def test_zero_reflection_returned_unchanged(self, channels):
        cm = mrt_cm(channels)
        theta = np.zeros(channels.irs_elements, dtype=complex)
        np.testing.assert_array_equal(
            align_phases_to_direct_path(channels, cm, theta), theta
        )


class TestMaxSrSlnr:
    def test_keep_best_contract(self, budget):
        ch = make_channels(na=16, ns=32)
        sol, trace = max_sr_slnr(ch, budget, rng=np.random.default_rng(0))
        returned = evaluate(ch, sol, budget).secrecy_rate
        assert returned == pytest.approx(trace.best_secrecy_rate, rel=1e-12)
        assert trace.best_secrecy_rate == max(trace.secrecy_rates)
        assert trace.best_secrecy_rate >= trace.secrecy_rates[0]

    def test_converges_on_reference_scenario(self, budget):
        ch = make_channels(na=16, ns=128)
        _, trace = max_sr_slnr(ch, budget, rng=np.random.default_rng(1))
        assert trace.converged
        assert not trace.hit_max_iterations
        assert trace.iterations <= 100

    def test_iteration_cap(self, budget):
        ch = make_channels(na=16, ns=32)
        cfg = MaxSrSlnrConfig(epsilon=1e-15, max_iterations=1)
        _, trace = max_sr_slnr(ch, budget, cfg, rng=np.random.default_rng(2))
        assert trace.iterations == 1
        assert trace.hit_max_iterations or trace.converged

    def test_trace_counts_initial_point(self, budget):
        ch = make_channels(na=16, ns=32)
        _, trace = max_sr_slnr(ch, budget, rng=np.random.default_rng(3))
        assert len(trace.secrecy_rates) == trace.iterations + 1

    def test_initial_phases_respected(self, budget):
        ch = make_channels(na=16, ns=32)
        start = pa_phase(ch, mrt_cm(ch))
        cfg = MaxSrSlnrConfig(initial_phases=start, max_iterations=1, epsilon=1e-15)
        sol, trace = max_sr_slnr(ch, budget, cfg, rng=np.random.default_rng(4))
        warm = evaluate(
            ch, BeamformingSolution(ch.alice_irs_tx, an_beamformer(ch), start), budget
        ).secrecy_rate
        assert trace.secrecy_rates[0] == pytest.approx(warm, rel=1e-12)

    def test_restarts_never_hurt(self, budget):
        ch = make_channels(na=16, ns=32)
        _, single = max_sr_slnr(
            ch, budget, MaxSrSlnrConfig(restarts=1), rng=np.random.default_rng(7)
        )
        _, multi = max_sr_slnr(
            ch, budget, MaxSrSlnrConfig(restarts=3), rng=np.random.default_rng(7)
        )
        assert multi.best_secrecy_rate >= single.best_secrecy_rate - 1e-12

    def test_beats_closed_form_on_reference_scenario(self, budget):
        for ns in (16, 64):
            ch = make_channels(na=16, ns=ns)
            sol, _ = max_sr_slnr(ch, budget, rng=np.random.default_rng(11))
            iterative = evaluate(ch, sol, budget).secrecy_rate
            closed = evaluate(ch, mrt_nsp_pa(ch, budget), budget).secrecy_rate
            assert iterative >= closed - 1e-9

    def test_config_validation(self):
        with pytest.raises(ValueError):
            MaxSrSlnrConfig(epsilon=0.0)
        with pytest.raises(ValueError):
            MaxSrSlnrConfig(max_iterations=0)
        with pytest.raises(ValueError):
            MaxSrSlnrConfig(restarts=0)


class TestMrtCm:
    def test_toward_ab_is_bob_channel(self, channels):
        np.testing.assert_allclose(
            mrt_cm(channels, MrtVariant.toward_ab()), channels.alice_bob, atol=1e-14
        )

    def test_toward_ai_is_default(self, channels):
        np.testing.assert_allclose(
            mrt_cm(channels), mrt_cm(channels, MrtVariant.toward_ai()), atol=0
        )
        np.testing.assert_allclose(mrt_cm(channels), channels.alice_irs_tx, atol=1e-14)

    def test_toward_sum_normalized(self, channels):
        v = mrt_cm(channels, MrtVariant.toward_sum())
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
        combined = channels.alice_irs_tx + channels.alice_bob
        np.testing.assert_allclose(v, combined / np.linalg.norm(combined), atol=1e-14)

    def test_toward_angle_uses_steering_vector(self, channels):
        from irsdm.channel import steering_vector

        v = mrt_cm(channels, MrtVariant.toward_angle(1.1))
        np.testing.assert_allclose(
            v, steering_vector(1.1, channels.alice_array), atol=1e-14
        )

    def test_degenerate_sum_rejected(self, channels):
        import copy

        ch = copy.copy(channels)
        ch.alice_bob = -ch.alice_irs_tx
        with pytest.raises(ValueError, match="degenerate MRT direction"):
            mrt_cm(ch, MrtVariant.toward_sum())

    def test_variant_validation(self):
        with pytest.raises(ValueError):
            MrtVariant("toward_mars")
        with pytest.raises(ValueError):
            MrtVariant.toward_angle(4.0)
        with pytest.raises(ValueError):
            MrtVariant("toward_angle")


class TestMrtNspPa:
    def test_solution_invariants(self, channels, budget):
        sol = mrt_nsp_pa(channels, budget)
        assert np.linalg.norm(sol.cm_vector) == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.norm(sol.an_vector) == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(np.abs(sol.irs_phases), 1.0, atol=1e-12)

    def test_positive_secrecy_rate_on_reference_scenario(self, channels, budget):
        sr = evaluate(channels, mrt_nsp_pa(channels, budget), budget).secrecy_rate
        assert sr > 0.0

    def test_irs_pointing_wins_for_large_surface(self, budget):
        ch = make_channels(na=16, ns=1024)
        toward_irs = evaluate(
            ch, mrt_nsp_pa(ch, budget, MrtVariant.toward_ai()), budget
        ).secrecy_rate
        toward_bob = evaluate(
            ch, mrt_nsp_pa(ch, budget, MrtVariant.toward_ab()), budget
        ).secrecy_rate
        assert toward_irs >= toward_bob

    def test_bob_pointing_wins_for_small_surface(self, budget):
        ch = make_channels(na=16, ns=16)
        toward_irs = evaluate(
            ch, mrt_nsp_pa(ch, budget, MrtVariant.toward_ai()), budget
        ).secrecy_rate
        toward_bob = evaluate(
            ch, mrt_nsp_pa(ch, budget, MrtVariant.toward_ab()), budget
        ).secrecy_rate
        assert toward_bob >= toward_irs


class TestBenchmarks:
    def test_no_irs_phases_are_zero(self):
        np.testing.assert_array_equal(benchmark_phase("no_irs", 5, 0), np.zeros(5))

    def test_random_phase_deterministic_per_seed(self):
        a = benchmark_phase("random_phase", 16, 42)
        b = benchmark_phase("random_phase", 16, 42)
        c = benchmark_phase("random_phase", 16, 43)
        np.testing.assert_array_equal(a, b)
        assert np.any(a != c)
        np.testing.assert_allclose(np.abs(a), 1.0, atol=1e-12)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            benchmark_phase("mystery", 4, 0)
        with pytest.raises(ValueError):
            benchmark_phase("no_irs", 0, 0)

    def test_solutions_share_beams(self, channels):
        no_irs = benchmark_solution(channels, "no_irs")
        rand = benchmark_solution(channels, "random_phase", seed=1)
        np.testing.assert_array_equal(no_irs.cm_vector, rand.cm_vector)
        np.testing.assert_array_equal(no_irs.an_vector, rand.an_vector)

    def test_random_phases_average_below_alignment(self, budget):
        ch = make_channels(na=16, ns=64)
        aligned = evaluate(ch, mrt_nsp_pa(ch, budget), budget).secrecy_rate
        rates = [
            evaluate(ch, benchmark_solution(ch, "random_phase", seed=s), budget).secrecy_rate
            for s in range(200)
        ]
        assert np.mean(rates) < aligned


class TestFlops:
    def test_closed_form_reference_value(self):
        assert flops_mrt_nsp_pa(16, 100).total == 23574

    def test_closed_form_polynomial(self):
        na, ns = 7, 13
        expected = 2 * ns**2 + 2 * na * ns - 2 * ns + 4 * na + 2 * na**2 - 2
        assert flops_mrt_nsp_pa(na, ns).total == expected

    def test_alternating_polynomial(self):
        na, ns, d1, d2 = 4, 5, 3, 2
        inner = ns**3 + 7 * ns**2 + 8 * na * ns - 2 * ns - 2 + 2 * na**3 + 4 * na**2
        assert flops_max_sr_slnr(na, ns, d1, d2).total == d1 * (
            d2 * inner + 2 * na**2 + na - 1
        )

    def test_cubic_versus_quadratic_growth(self):
        # Doubling the surface multiplies the leading terms by ~8 vs ~4, so
        # the cost ratio between the methods keeps growing.
        ratios = [
            flops_max_sr_slnr(16, ns, 1, 1).total / flops_mrt_nsp_pa(16, ns).total
            for ns in (64, 128, 256, 512, 1024)
        ]
        assert all(b > a for a, b in zip(ratios, ratios[1:]))
        assert ratios[0] >= 10.0

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            flops_mrt_nsp_pa(0, 4)
        with pytest.raises(ValueError):
            flops_max_sr_slnr(4, 4, 0, 1)


class TestIterationTrace:
    def test_best_is_max(self):
        trace = IterationTrace(secrecy_rates=[1.0, 3.0, 2.0], iterations=2)
        assert trace.best_secrecy_rate == 3.0
