from coset_qkd.qkd.analytic import (
    completeness_bound, completeness_bound_agwn, correctness_bound, correctness_bound_exact,
    secrecy_bracket, secrecy_epsilon,
)
from coset_qkd.qkd.channel import ChannelModel
from coset_qkd.qkd.messages import (
    Abort, Ack, BasisAndPE, HashSeed, Message, Reconcile, Syndrome, message_from_record,
)
from coset_qkd.qkd.montecarlo import MonteCarloSummary, monte_carlo, summarize_sessions, wilson_interval
from coset_qkd.qkd.params import ProtocolParams, SecrecyInputs
from coset_qkd.qkd.session import SessionResult, run_session
from coset_qkd.qkd.transcript import (
    ReplayReport, TranscriptEntry, TranscriptStore, make_header, read_transcript,
    replay_transcript, write_transcript,
)

__all__ = [
    "Abort", "Ack", "BasisAndPE", "ChannelModel", "HashSeed", "Message", "MonteCarloSummary",
    "ProtocolParams", "Reconcile", "ReplayReport", "SecrecyInputs", "SessionResult", "Syndrome",
    "TranscriptEntry", "TranscriptStore", "completeness_bound", "completeness_bound_agwn",
    "correctness_bound", "correctness_bound_exact", "make_header", "message_from_record",
    "monte_carlo", "read_transcript", "replay_transcript", "run_session", "secrecy_bracket",
    "secrecy_epsilon", "summarize_sessions", "wilson_interval", "write_transcript",
]
