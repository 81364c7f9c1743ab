import math

import numpy as np
import pytest

from overlap_shor.builder import custom_code
from overlap_shor.decoder import build_grouped, build_lookup, correctability_census
from overlap_shor.errors import InvalidParameter
from overlap_shor.pauli import PauliOperator
from overlap_shor.simulator import (
    NoiseModel,
    SimulationSummary,
    errors_from_uniforms,
    gain_scan,
    loglog_slope,
    replay_shot,
    run_monte_carlo,
    sample_error,
    sample_shot,
    shot_uniforms,
    summaries_to_csv,
)


@pytest.fixture(scope="module")
def lookup1(shor3):
    return build_lookup(shor3, 1)


class TestSampling:
    def test_zero_model(self):
        rng = np.random.default_rng(0)
        assert all(sample_error(NoiseModel(0, 0, 0), 9, rng) == PauliOperator.identity(9) for _ in range(100))

    def test_full_depolarizing(self):
        rng = np.random.default_rng(1)
        assert all(sample_error(NoiseModel.depolarizing(1.0), 1, rng).support == 1 for _ in range(200))

    def test_mean_weight(self):
        u = np.random.default_rng(2).random((100_000, 9))
        x, z = errors_from_uniforms(NoiseModel.depolarizing(0.1), u)
        weights = (x | z).sum(axis=1)
        sigma = math.sqrt(9 * 0.1 * 0.9 / 100_000)
        assert abs(weights.mean() - 0.9) < 3 * sigma

    def test_letter_frequencies(self):
        u = shot_uniforms(9, 0, 50_000, 4)
        x, z = errors_from_uniforms(NoiseModel(0.1, 0.2, 0.3), u)
        freq = [np.mean(x & ~z & 1), np.mean(x & z), np.mean(z & ~x & 1)]
        assert np.allclose(freq, [0.1, 0.2, 0.3], atol=0.01)

    @pytest.mark.parametrize("probs", [(-0.1, 0, 0), (0.5, 0.5, 0.5)])
    def test_invalid_model(self, probs):
        with pytest.raises(InvalidParameter):
            NoiseModel(*probs)

    @pytest.mark.parametrize("n", [1, 4, 9, 13])
    def test_shot_matches_block_slice(self, n):
        block = shot_uniforms(77, 100, 20, n)
        for i in (0, 7, 19):
            assert np.array_equal(shot_uniforms(77, 100 + i, 1, n)[0], block[i])


class TestMonteCarlo:
    def test_p_zero(self, shor3, lookup1):
        s = run_monte_carlo(shor3, lookup1, NoiseModel.depolarizing(0.0), 5000, 3)
        assert (s.failures, s.detections) == (0, 0)

    def test_deterministic_across_threads(self, shor3, lookup1):
        model = NoiseModel.depolarizing(0.02)
        runs = [run_monte_carlo(shor3, lookup1, model, 20_000, 11, threads=t) for t in (1, 3, 8)]
        assert len({(r.failures, r.detections, tuple(r.failure_shots)) for r in runs}) == 1

    def test_thread_env(self, shor3, lookup1, monkeypatch):
        model = NoiseModel.depolarizing(0.02)
        base = run_monte_carlo(shor3, lookup1, model, 20_000, 4)
        monkeypatch.setenv("OVERLAP_SHOR_THREADS", "4")
        again = run_monte_carlo(shor3, lookup1, model, 20_000, 4)
        assert (base.failures, base.detections) == (again.failures, again.detections)

    def test_failure_witnesses_replay(self, shor3, lookup1):
        model = NoiseModel.depolarizing(0.05)
        s = run_monte_carlo(shor3, lookup1, model, 3000, 21)
        assert s.failures > 0 and len(s.failure_shots) == s.failures
        for i in s.failure_shots:
            e, label = replay_shot(shor3, lookup1, model, 21, i)
            assert label == "miscorrected"
            assert e == sample_shot(model, 9, 21, i)

    def test_summary_invariants(self, shor3, lookup1):
        s = run_monte_carlo(shor3, lookup1, NoiseModel.depolarizing(0.05), 4000, 8)
        lo, hi = s.wilson_interval_95
        assert s.failures + s.detections <= s.shots
        assert lo <= s.failure_rate <= hi
        assert s.decoder == "lookup:1"

    def test_wilson_zero_failures(self):
        lo, hi = SimulationSummary(shots=100, failures=0, detections=0, seed=0).wilson_interval_95
        assert lo == 0.0 and 0 < hi < 0.05

    def test_rejects_invalid_code(self):
        code = custom_code(["X0", "Z0"], n=1, k=0, claimed_distance=1)
        with pytest.raises(InvalidParameter):
            run_monte_carlo(code, build_lookup(code, 1), NoiseModel.depolarizing(0.1), 10, 0)

    @pytest.mark.parametrize("shots,seed", [(0, 1), (10, -1), (10, 2**64)])
    def test_rejects_bad_inputs(self, shor3, lookup1, shots, seed):
        with pytest.raises(InvalidParameter):
            run_monte_carlo(shor3, lookup1, NoiseModel.depolarizing(0.1), shots, seed)

    def test_csv(self, shor3, lookup1):
        s = run_monte_carlo(shor3, lookup1, NoiseModel.depolarizing(0.0), 10, 5)
        lines = summaries_to_csv([s]).splitlines()
        assert lines[0] == "p,decoder,shots,failures,detections,rate,ci_lo,ci_hi,seed"
        assert lines[1].startswith("0.0,lookup:1,10,0,0,0.0,")


def test_lookup2_vs_lookup1_over_seeds(shor3, lookup1):
    # lookup(2) corrects weight-2 syndromes that lookup(1) only flags, so its
    # failures alone may exceed lookup(1)'s; failures plus flags may not.
    lookup2 = build_lookup(shor3, 2)
    model = NoiseModel.depolarizing(1e-2)
    total1 = total2 = 0
    for seed in range(10):
        a = run_monte_carlo(shor3, lookup1, model, 20_000, seed)
        b = run_monte_carlo(shor3, lookup2, model, 20_000, seed)
        total1 += a.failures + a.detections
        total2 += b.failures + b.detections
    assert total2 < total1


def test_lookup_unsuccessful_counts_exact(shor3, lookup1):
    # Exhaustive weight-2 census backing the comparison above.
    one = correctability_census(shor3, lookup1, 2)
    two = correctability_census(shor3, build_lookup(shor3, 2), 2)
    assert (one.miscorrected, one.detected_only) == (63, 216)
    assert (two.miscorrected, two.detected_only) == (117, 0)
    assert two.miscorrected < one.miscorrected + one.detected_only


def test_grouped_and_lookup1_differ_only_beyond_weight_one(shor3, lookup1):
    model = NoiseModel.depolarizing(1e-3)
    grouped = build_grouped(shor3)
    a = run_monte_carlo(shor3, lookup1, model, 100_000, 2025)
    b = run_monte_carlo(shor3, grouped, model, 100_000, 2025)
    assert set(a.failure_shots) <= set(b.failure_shots)
    for i in set(b.failure_shots) - set(a.failure_shots):
        e, label = replay_shot(shor3, lookup1, model, 2025, i)
        assert e.support.bit_count() >= 2 and label == "detected_only"


def exact_failure_probability(code, dec, p):
    total = 0.0
    for w in range(code.n + 1):
        f = correctability_census(code, dec, w).miscorrected if w else 0
        total += f * (p / 3) ** w * (1 - p) ** (code.n - w)
    return total


def test_exact_probability_slope(shor3, lookup1):
    ps = [1e-3, 3e-3, 1e-2]
    probs = [exact_failure_probability(shor3, lookup1, p) for p in ps]
    assert probs == pytest.approx([6.96e-6, 6.19e-5, 6.61e-4], rel=0.01)
    slope = np.polyfit(np.log(ps), np.log(probs), 1)[0]
    assert slope == pytest.approx(1.98, abs=0.01)


class TestSlopeFit:
    def test_recovers_exponent(self):
        ps = [1e-3, 3e-3, 1e-2]
        shots = [10**9] * 3
        failures = [round(5.0 * p**2 * 1e9) for p in ps]
        assert loglog_slope(ps, failures, shots) == pytest.approx(2.0, abs=1e-3)

    def test_zero_point_still_counts(self):
        assert loglog_slope([1e-3, 1e-2], [0, 100], [10**5] * 2) > 0

    def test_all_zero(self):
        with pytest.raises(InvalidParameter):
            loglog_slope([0.1, 0.2], [0, 0], [10, 10])


class TestGainScan:
    def test_shor3(self, shor3):
        (row,) = gain_scan(shor3, [0.01])
        assert (row["c"], row["c_prime"]) == (16, 256)
        assert row["gain"] == pytest.approx(0.99**-240, rel=1e-9)

    def test_p_zero(self, shor3):
        assert gain_scan(shor3, [0.0])[0]["gain"] == 1.0

    def test_shor5(self, shor5):
        (row,) = gain_scan(shor5, [0.001])
        assert (row["c"], row["c_prime"]) == (96, 2**24)
        assert row["log_gain"] == pytest.approx(-(2**24 - 96) * math.log(0.999), rel=1e-12)
        assert math.isinf(row["gain"])

    def test_empty_grid(self, shor3):
        with pytest.raises(InvalidParameter):
            gain_scan(shor3, [])
