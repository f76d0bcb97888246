"""Monte-Carlo runs of the protocol against the analytic bounds."""
import numpy as np
import pytest

from coset_qkd.cv import expected_mismatch_position
from coset_qkd.qkd import (
    ChannelModel, ProtocolParams, completeness_bound, completeness_bound_agwn, correctness_bound,
    make_header, monte_carlo, replay_transcript, run_session, write_transcript,
)
from coset_qkd.resource.loader import load_preset
from coset_qkd.rng import child_seed

TRIALS = 1000


@pytest.fixture(scope="module")
def desk16_summary(desk16):
    return monte_carlo(desk16, ChannelModel.identity(), TRIALS, seed=2024)


@pytest.fixture(scope="module")
def desk64_summary(desk64):
    return monte_carlo(desk64, ChannelModel.identity(), TRIALS, seed=2025)


class TestBoundDominance:
    """Test suite comparing simulated rates with the finite-size bounds."""

    @pytest.mark.parametrize("preset", ["desk16", "desk64"])
    def test_abort_rate_below_completeness(self, preset, request):
        """Observed aborts stay within three standard errors of the completeness bound."""
        params = request.getfixturevalue(preset)
        summary = request.getfixturevalue(f"{preset}_summary")
        bound = completeness_bound(params)
        assert summary.abort_rate <= bound + 3 * summary.abort_stderr
        assert summary.abort_rate <= completeness_bound_agwn(params, 0.0, 0.0) + 3 * summary.abort_stderr

    @pytest.mark.parametrize("preset", ["desk16", "desk64"])
    def test_key_mismatch_below_correctness(self, preset, request):
        """Accepted sessions with unequal keys stay within the correctness bound."""
        params = request.getfixturevalue(preset)
        summary = request.getfixturevalue(f"{preset}_summary")
        assert summary.key_mismatch_rate <= correctness_bound(params) + 3 * summary.key_mismatch_stderr

    def test_intervals_cover_rates(self, desk16_summary):
        """Wilson intervals contain the point estimates."""
        low, high = desk16_summary.abort_ci
        assert low <= desk16_summary.abort_rate <= high
        low, high = desk16_summary.key_mismatch_ci
        assert low <= desk16_summary.key_mismatch_rate <= high

    def test_diagnostics_averaged(self, desk16_summary):
        """Per-session diagnostics are averaged into the summary."""
        assert "pe_mismatches" in desk16_summary.mean_diagnostics
        assert desk16_summary.mean_diagnostics["resamples"] >= 0


class TestNoiselessEstimation:
    """Test suite for parameter estimation without channel noise."""

    def test_pe_mismatches_rare(self):
        """With strong squeezing and wide position bins PE almost never disagrees."""
        values = dict(load_preset("desk16"), a="5e-9", b="5e7", delta="4")
        params = ProtocolParams.from_mapping(values)
        mismatches = [run_session(params, ChannelModel.identity(), child_seed(31, t)).diagnostics["pe_mismatches"]
                      for t in range(TRIALS)]
        expected = TRIALS * params.pe_size * expected_mismatch_position(params.a, params.b, params.delta)
        assert expected < 1.0
        assert sum(mismatches) <= 5
        assert np.count_nonzero(mismatches) <= 5


class TestReproducibility:
    """Test suite for seeded Monte-Carlo runs."""

    def test_same_seed_same_summary(self, desk16):
        """Equal seeds give equal counts and diagnostics."""
        channel = ChannelModel.agwn(0.3, 0.01)
        first = monte_carlo(desk16, channel, 25, seed=5)
        second = monte_carlo(desk16, channel, 25, seed=5)
        assert (first.aborts, first.key_mismatches) == (second.aborts, second.key_mismatches)
        assert first.mean_diagnostics == second.mean_diagnostics
        assert first.aborts_by_stage == second.aborts_by_stage

    def test_trial_transcripts_replay(self, tmp_path, desk16):
        """Any single Monte-Carlo trial can be written out and replayed."""
        channel = ChannelModel.agwn(0.3, 0.01)
        for trial in (0, 7, 19):
            result = run_session(desk16, channel, child_seed(5, trial))
            path = tmp_path / f"trial{trial}.jsonl"
            write_transcript(path, make_header(desk16, channel, 5, trial=trial), result)
            report = replay_transcript(path)
            assert report.matches
            assert report.accepted == result.accepted
