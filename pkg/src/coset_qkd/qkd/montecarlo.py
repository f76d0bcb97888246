"""Monte-Carlo estimates of the abort and key-mismatch rates of run_session."""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

from scipy.stats import norm

from coset_qkd.config import Config
from coset_qkd.errors import ValidationError
from coset_qkd.qkd.channel import ChannelModel
from coset_qkd.qkd.params import ProtocolParams
from coset_qkd.qkd.session import SessionResult, run_session
from coset_qkd.rng import SeedLike, child_seed

logger = logging.getLogger(__name__)


def wilson_interval(successes: int, trials: int, confidence: Optional[float] = None) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValidationError(f"trials must be at least 1, got {trials}")
    if not 0 <= successes <= trials:
        raise ValidationError(f"successes must lie in [0, {trials}], got {successes}")
    confidence = Config.CONFIDENCE_LEVEL if confidence is None else confidence
    if not 0.0 < confidence < 1.0:
        raise ValidationError(f"confidence must lie in (0, 1), got {confidence}")
    z = norm.ppf(0.5 + confidence / 2.0)
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def standard_error(rate: float, trials: int) -> float:
    return math.sqrt(rate * (1.0 - rate) / trials)


@dataclass
class MonteCarloSummary:
    trials: int
    aborts: int
    key_mismatches: int          # accepted sessions with K ≠ K̂
    confidence: float
    abort_ci: Tuple[float, float]
    key_mismatch_ci: Tuple[float, float]
    mean_diagnostics: Dict[str, float] = field(default_factory=dict)
    aborts_by_stage: Dict[str, int] = field(default_factory=dict)

    @property
    def abort_rate(self) -> float:
        return self.aborts / self.trials

    @property
    def key_mismatch_rate(self) -> float:
        """Pr[K ≠ K̂ and F = 1]."""
        return self.key_mismatches / self.trials

    @property
    def abort_stderr(self) -> float:
        return standard_error(self.abort_rate, self.trials)

    @property
    def key_mismatch_stderr(self) -> float:
        return standard_error(self.key_mismatch_rate, self.trials)

    def to_row(self) -> Dict[str, object]:
        row = {
            "trials": self.trials,
            "abort_rate": self.abort_rate,
            "abort_ci_low": self.abort_ci[0],
            "abort_ci_high": self.abort_ci[1],
            "key_mismatch_rate": self.key_mismatch_rate,
            "key_mismatch_ci_low": self.key_mismatch_ci[0],
            "key_mismatch_ci_high": self.key_mismatch_ci[1],
        }
        for key in sorted(self.mean_diagnostics):
            row[f"mean_{key}"] = self.mean_diagnostics[key]
        return row


def summarize_sessions(results: Iterable[SessionResult], confidence: Optional[float] = None) -> MonteCarloSummary:
    """Fold session results into abort and key-mismatch counts with intervals."""
    confidence = Config.CONFIDENCE_LEVEL if confidence is None else confidence
    trials = aborts = mismatches = 0
    totals: Dict[str, float] = {}
    counts: Dict[str, int] = {}
    by_stage: Dict[str, int] = {}
    for result in results:
        trials += 1
        if not result.accepted:
            aborts += 1
            by_stage[result.abort_stage] = by_stage.get(result.abort_stage, 0) + 1
        elif not result.keys_match:
            mismatches += 1
        for key, value in result.diagnostics.items():
            totals[key] = totals.get(key, 0.0) + value
            counts[key] = counts.get(key, 0) + 1
    if trials == 0:
        raise ValidationError("no session results to summarize")
    means = {key: totals[key] / counts[key] for key in totals}
    logger.info(f"monte carlo: {trials} trials, {aborts} aborts, {mismatches} key mismatches")
    return MonteCarloSummary(
        trials, aborts, mismatches, confidence,
        wilson_interval(aborts, trials, confidence),
        wilson_interval(mismatches, trials, confidence),
        means, by_stage,
    )


def monte_carlo(params: ProtocolParams, channel: ChannelModel, trials: int, seed: SeedLike,
                confidence: Optional[float] = None) -> MonteCarloSummary:
    """Run ``trials`` sessions; trial t uses child_seed(seed, t)."""
    if int(trials) != trials or trials < 1:
        raise ValidationError(f"trials must be a positive integer, got {trials}")
    results = (run_session(params, channel, child_seed(seed, t)) for t in range(trials))
    return summarize_sessions(results, confidence)
