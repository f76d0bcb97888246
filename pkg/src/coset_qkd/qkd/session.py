"""One run of the squeezed-state coset QKD protocol as a two-party state machine.

Randomness is split into three streams derived from the session seed: Alice's
state preparation, Bob's measurement outcomes and the public choices (estimation
subset, reconciliation subset and hash seed). Changing the channel therefore
never changes what Alice prepared.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from coset_qkd.coding.binning import signed_bin_index, signed_bin_word
from coset_qkd.coding.gray import gray_decode_array, gray_encode_array
from coset_qkd.coding.linear_code import decode_with_syndrome, syndrome
from coset_qkd.coding.toeplitz import ToeplitzHash, toeplitz_apply
from coset_qkd.cv.homodyne import MOMENTUM, POSITION, homodyne_measure, rescale_momentum
from coset_qkd.cv.sampling import sample_coset_params
from coset_qkd.cv.states import RegisterSubspace
from coset_qkd.qkd.channel import ChannelModel
from coset_qkd.qkd.messages import (
    PARAMETER_ESTIMATION, RECONCILIATION,
    Abort, Ack, BasisAndPE, HashSeed, Message, Reconcile, Syndrome,
)
from coset_qkd.qkd.params import ProtocolParams
from coset_qkd.rng import SeedLike, as_generator, child_seed

logger = logging.getLogger(__name__)

STATE_PREPARATION = "state_preparation"

PREPARATION_STREAM = 0
MEASUREMENT_STREAM = 1
PUBLIC_STREAM = 2


@dataclass(eq=False)
class SessionResult:
    accepted: bool                              # the flag F
    alice_key: Optional[np.ndarray]             # K, None on abort
    bob_key: Optional[np.ndarray]               # K̂, None on abort
    transcript: List[Message] = field(default_factory=list)
    diagnostics: Dict[str, int] = field(default_factory=dict)
    abort_stage: Optional[str] = None

    @property
    def keys_match(self) -> bool:
        return self.accepted and bool(np.array_equal(self.alice_key, self.bob_key))

    def transcript_records(self) -> List[Dict[str, str]]:
        return [message.to_record() for message in self.transcript]


def _clip_to_range(values: np.ndarray, cutoff: float) -> np.ndarray:
    """Outcomes outside [−cutoff, cutoff) are replaced with 0."""
    inside = (values >= -cutoff) & (values < cutoff)
    return np.where(inside, values, 0.0)


def run_session(params: ProtocolParams, channel: ChannelModel, seed: SeedLike) -> SessionResult:
    """Run all stages once; the result is a pure function of (params, channel, seed)."""
    n = params.n
    # a per-mode channel of the wrong length is rejected before anything is drawn
    channel.noise_for(range(n), n)

    # -- state preparation ---------------------------------------------------
    prep = as_generator(child_seed(seed, PREPARATION_STREAM))
    subspace = RegisterSubspace.random(n, prep)
    sample = sample_coset_params(subspace, params.a, params.b,
                                 params.pos_bins.cutoff, params.mom_bins.cutoff, prep)
    positions_at = subspace.complement
    momenta_at = subspace.I

    # -- Bob's homodyne measurements -----------------------------------------
    meas = as_generator(child_seed(seed, MEASUREMENT_STREAM))
    q_hat = homodyne_measure(POSITION, sample.q, params.a, params.b,
                             channel.noise_for(positions_at, n), meas)
    p_raw = homodyne_measure(MOMENTUM, sample.p, params.a, params.b,
                             channel.noise_for(momenta_at, n), meas)
    q_hat = _clip_to_range(np.atleast_1d(q_hat), params.pos_bins.cutoff)
    p_hat = _clip_to_range(np.atleast_1d(rescale_momentum(p_raw, params.a, params.b)),
                           params.mom_bins.cutoff)

    public = as_generator(child_seed(seed, PUBLIC_STREAM))
    transcript: List[Message] = []
    diagnostics = {"resamples": sample.resamples}

    def abort(stage: str) -> SessionResult:
        transcript.append(Abort(stage))
        logger.debug(f"session aborted at {stage}: {diagnostics}")
        return SessionResult(False, None, None, transcript, diagnostics, stage)

    # -- parameter estimation ------------------------------------------------
    pe_positions = np.sort(public.choice(len(positions_at), size=params.pe_size, replace=False))
    alice_pe_index = signed_bin_index(sample.q[pe_positions], params.pos_bins)
    pe_bits = gray_encode_array(alice_pe_index, params.n_M).reshape(-1)
    transcript.append(BasisAndPE(
        tuple(int(b) for b in subspace.mask()),
        tuple(int(positions_at[i]) for i in pe_positions),
        tuple(int(b) for b in pe_bits),
    ))
    announced = gray_decode_array(pe_bits.reshape(-1, params.n_M))
    bob_pe_index = signed_bin_index(q_hat[pe_positions], params.pos_bins)
    mismatches = int(np.count_nonzero(announced != bob_pe_index))
    diagnostics["pe_mismatches"] = mismatches
    if mismatches > params.pe_threshold:
        return abort(PARAMETER_ESTIMATION)
    transcript.append(Ack())

    # -- error correction ----------------------------------------------------
    alice_word = signed_bin_word(sample.p, params.mom_bins)
    bob_word = signed_bin_word(p_hat, params.mom_bins)
    target = syndrome(params.code, alice_word)
    transcript.append(Syndrome(tuple(int(b) for b in target)))
    corrected = decode_with_syndrome(params.code, bob_word, target)
    diagnostics["corrected_distance"] = int(np.count_nonzero(corrected != bob_word))
    diagnostics["residual_errors"] = int(np.count_nonzero(corrected != alice_word))

    # -- information reconciliation -----------------------------------------
    subset = np.sort(public.choice(params.block, size=params.reconcile_size, replace=False))
    transcript.append(Reconcile(tuple(int(j) for j in subset),
                                tuple(int(b) for b in alice_word[subset])))
    if not np.array_equal(corrected[subset], alice_word[subset]):
        return abort(RECONCILIATION)

    # -- privacy amplification -----------------------------------------------
    h = ToeplitzHash.random(params.block, params.key_len, public)
    transcript.append(HashSeed(h.diag))
    alice_key = toeplitz_apply(h, alice_word)
    bob_key = toeplitz_apply(h, corrected)
    logger.debug(f"session accepted: {diagnostics}")
    return SessionResult(True, alice_key, bob_key, transcript, diagnostics)
