"""`coset-qkd qkd`: protocol simulation, replay, finite-size analysis and key rates."""
import logging
from pathlib import Path
from typing import Dict, Optional

import click
import mpmath

from coset_qkd.analysis import (
    AsymptoticParams, asymptotic_lhs, completeness_constrained_rate, completeness_report, emit,
    noise_thresholds, tolerance_curve,
)
from coset_qkd.commands.run_logging import logged_command
from coset_qkd.commands.utils import format_option, handle_errors, json_response, merge_params
from coset_qkd.config import get_workdir
from coset_qkd.errors import InternalError, PreconditionError, ValidationError
from coset_qkd.qkd import (
    ChannelModel, ProtocolParams, TranscriptStore, completeness_bound_agwn, correctness_bound,
    correctness_bound_exact, make_header, monte_carlo, replay_transcript, run_session,
    secrecy_bracket, secrecy_epsilon, summarize_sessions, write_transcript,
)
from coset_qkd.resource.loader import list_presets, load_preset
from coset_qkd.rng import child_seed

logger = logging.getLogger("coset-qkd")

# (option, parameter key) pairs shared by the protocol commands
PROTOCOL_OPTIONS = [
    ("--n", "n"), ("--a", "a"), ("--b", "b"), ("--squeeze", "squeeze"),
    ("--delta", "delta"), ("--epsilon", "epsilon"), ("--n-M", "n_M"), ("--n-N", "n_N"),
    ("--theta", "theta"), ("--gamma", "gamma"), ("--eta", "eta"), ("--key-len", "key_len"),
    ("--tau", "tau"), ("--code", "code"), ("--d", "d"),
]
ASYMPTOTIC_OPTIONS = [
    ("--squeeze", "squeeze"), ("--delta", "delta"), ("--epsilon", "epsilon"),
    ("--n-M", "n_M"), ("--n-N", "n_N"),
]


def _param_options(pairs):
    def decorate(func):
        for flag, key in reversed(pairs):
            func = click.option(flag, key, default=None, help=f"Override '{key}'")(func)
        func = click.option("--preset", default=None, help="Bundled preset (see resource/presets.yaml)")(func)
        return click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
                            help="key=value parameter file")(func)
    return decorate


def _split(kwargs: Dict[str, object], pairs):
    overrides = {key: kwargs.pop(key) for _, key in pairs}
    return merge_params(kwargs.pop("config"), kwargs.pop("preset"), overrides)


def _agwn_parts(channel: ChannelModel):
    if channel.kind == "agwn":
        return channel.noise[0].x, channel.noise[0].y
    return 0.0, 0.0


@logged_command
def simulate_cmd(values: Dict[str, object], channel: str, trials: int, seed: int,
                 transcript: Optional[str], store: bool, fmt: str, output: str) -> str:
    params = ProtocolParams.from_mapping(values)
    model = ChannelModel.parse(channel)
    if transcript or store:
        if trials != 1:
            raise click.UsageError("--transcript and --store need --trials 1")
        result = run_session(params, model, child_seed(seed, 0))
        if transcript:
            write_transcript(Path(transcript), make_header(params, model, seed, trial=0), result)
        if store:
            entry = TranscriptStore(get_workdir()).save(params, model, seed, result, trial=0)
            logger.info(f"Stored transcript {entry.transcript_id}")
        summary = summarize_sessions([result])
    else:
        summary = monte_carlo(params, model, trials, seed)
    row = {"channel": model.describe(), "seed": seed}
    row.update(summary.to_row())
    return emit([row], fmt, output)


@logged_command
def presets_cmd() -> str:
    return json_response("success", {name: load_preset(name) for name in list_presets()})


@logged_command
def replay_cmd(path: str) -> str:
    report = replay_transcript(Path(path))
    text = json_response("success" if report.matches else "diverged", {
        "path": str(report.path),
        "matches": report.matches,
        "recorded": report.recorded,
        "replayed": report.replayed,
        "first_divergence": report.first_divergence,
        "accepted": report.accepted,
    })
    if not report.matches:
        click.echo(text)
        raise InternalError(f"transcript diverges at record {report.first_divergence}")
    return text


@logged_command
def analyze_cmd(values: Dict[str, object], channel: str, fmt: str, output: str) -> str:
    params = ProtocolParams.from_mapping(values)
    x, y = _agwn_parts(ChannelModel.parse(channel))
    row: Dict[str, object] = {"n": params.n, "d": params.code.d}
    for key, evaluate in (("correctness", correctness_bound),
                          ("correctness_exact", correctness_bound_exact)):
        try:
            row[key] = evaluate(params)
        except PreconditionError:
            row[key] = None
    report = completeness_report(params)
    row["completeness"] = report["identity"]
    row["completeness_agwn_zero"] = report["agwn_zero"]
    try:
        row["completeness_agwn"] = completeness_bound_agwn(params, x, y)
    except PreconditionError as e:
        row["completeness_agwn"] = None
        logger.info(f"AGWN completeness does not apply: {e}")
    try:
        row["secrecy_bracket"] = secrecy_bracket(params)
        row["secrecy_epsilon"] = mpmath.nstr(secrecy_epsilon(params), 17)
    except (PreconditionError, ValidationError) as e:
        row["secrecy_bracket"] = row["secrecy_epsilon"] = None
        logger.info(f"secrecy not evaluated: {e}")
    # the asymptotic relation only exists for minimum-uncertainty damping, ab = 1/4
    if abs(params.a * params.b - 0.25) < 1e-9:
        asym = AsymptoticParams((2 * params.a) ** 0.5, params.delta, params.epsilon, params.n_M, params.n_N)
        row["asymptotic_lhs"] = asymptotic_lhs(params.gamma, asym)
    else:
        row["asymptotic_lhs"] = None
    return emit([row], fmt, output)


@logged_command
def keyrate_cmd(values: Dict[str, object], grid_points: int, summary: bool, x: float, y: float,
                fmt: str, output: str) -> str:
    p = AsymptoticParams.from_mapping(values)
    curve = tolerance_curve(p, grid_points)
    if not summary:
        return emit(curve.to_rows(), fmt, output)
    constrained = completeness_constrained_rate(p, x, y)
    x_max, y_max = noise_thresholds(p)
    return emit([{
        "lhs_at_zero": asymptotic_lhs(0.0, p),
        "gamma_max": curve.gamma_max,
        "r_max": curve.r_max,
        "constrained_rate": constrained.rate,
        "constrained_gamma": constrained.gamma,
        "binding": constrained.binding,
        "violated": constrained.violated,
        "x_threshold": x_max,
        "y_threshold": y_max,
    }], fmt, output)


def register(cli: click.Group):
    """Attach the `qkd` command group."""

    @cli.group("qkd")
    def qkd():
        """Protocol simulation and key-rate analysis."""

    @qkd.command("simulate")
    @_param_options(PROTOCOL_OPTIONS)
    @click.option("--channel", default="identity", show_default=True,
                  help="identity | agwn:x=..,y=.. | per-mode:x=..,y=..;...")
    @click.option("--trials", type=int, default=1, show_default=True)
    @click.option("--seed", type=int, required=True)
    @click.option("--transcript", type=click.Path(dir_okay=False), default=None,
                  help="Write the session transcript here (needs --trials 1)")
    @click.option("--store", is_flag=True, help="Keep the transcript in the workdir store")
    @format_option
    @handle_errors
    def simulate(**kwargs):
        """Run sessions and print the Monte-Carlo summary row."""
        values = _split(kwargs, PROTOCOL_OPTIONS)
        return simulate_cmd(values, **kwargs)

    @qkd.command("replay")
    @click.argument("path", type=click.Path(exists=True, dir_okay=False))
    @handle_errors
    def replay(path):
        """Re-run a transcript and compare it record by record."""
        return replay_cmd(path)

    @qkd.command("analyze")
    @_param_options(PROTOCOL_OPTIONS)
    @click.option("--channel", default="identity", show_default=True)
    @format_option
    @handle_errors
    def analyze(**kwargs):
        """Finite-size correctness, completeness and secrecy values."""
        values = _split(kwargs, PROTOCOL_OPTIONS)
        return analyze_cmd(values, **kwargs)

    @qkd.command("keyrate")
    @_param_options(ASYMPTOTIC_OPTIONS)
    @click.option("--grid-points", type=int, default=101, show_default=True)
    @click.option("--summary", is_flag=True, help="One row: gamma_max, r_max, constrained rate, noise margins")
    @click.option("--x", type=float, default=0.0, show_default=True, help="AGWN position scale")
    @click.option("--y", type=float, default=0.0, show_default=True, help="AGWN momentum scale")
    @format_option
    @handle_errors
    def keyrate(**kwargs):
        """Asymptotic error tolerance as a function of key rate."""
        values = _split(kwargs, ASYMPTOTIC_OPTIONS)
        return keyrate_cmd(values, **kwargs)

    @qkd.command("presets")
    @handle_errors
    def presets():
        """List the bundled parameter presets and their values."""
        return presets_cmd()
