"""`coset-qkd bounds`: closed-form winning-probability bounds of the continuous games."""
import logging

import click

from coset_qkd.analysis.emit import emit
from coset_qkd.bounds import (
    GameSpecGkp, GameSpecRn, GameSpecSo3, GameSpecU1, bound_complex, bound_gkp, bound_rn,
    bound_rn_mode_failure, bound_so3, bound_so3_sum, bound_u1, so3_coset_overlap,
    so3_coset_overlap_exact, so3_overlap_mc,
)
from coset_qkd.commands.run_logging import logged_command
from coset_qkd.commands.utils import format_option, handle_errors, parse_float_list, parse_int_list
from coset_qkd.rng import child_seed

logger = logging.getLogger("coset-qkd")


@logged_command
def u1_cmd(primes: str, epsilon: float, fmt: str, output: str) -> str:
    report = bound_u1(GameSpecU1(parse_int_list(primes), epsilon))
    return emit([report], fmt, output)


@logged_command
def complex_cmd(n: int, delta: float, epsilon: float, fmt: str, output: str) -> str:
    return emit([bound_complex(n, delta, epsilon)], fmt, output)


@logged_command
def rn_cmd(n: int, delta: float, epsilon: float, fmt: str, output: str) -> str:
    report = bound_rn(GameSpecRn(n, delta, epsilon))
    row = report.to_row()
    row["closed_form"] = report.details["closed_form"]
    return emit([row], fmt, output)


@logged_command
def rn_failure_cmd(n: int, delta: float, epsilon: float, gamma: float, fmt: str, output: str) -> str:
    return emit([bound_rn_mode_failure(GameSpecRn(n, delta, epsilon, gamma))], fmt, output)


@logged_command
def gkp_cmd(alphas: str, epsilon: float, cutoffs: str, a: float, fmt: str, output: str) -> str:
    report = bound_gkp(GameSpecGkp(parse_int_list(alphas), epsilon, parse_float_list(cutoffs), a))
    row = report.to_row()
    row["best_M"] = report.details["M"]
    return emit([row], fmt, output)


@logged_command
def so3_cmd(n: int, epsilon: float, fmt: str, output: str) -> str:
    spec = GameSpecSo3(n, epsilon)
    row = bound_so3(spec).to_row()
    row["sum_bound"] = bound_so3_sum(spec)
    return emit([row], fmt, output)


@logged_command
def so3_overlap_cmd(theta: str, epsilon: str, trials: int, seed: int, fmt: str, output: str) -> str:
    rows = []
    thetas, epsilons = parse_float_list(theta), parse_float_list(epsilon)
    for i, th in enumerate(thetas):
        for j, eps in enumerate(epsilons):
            row = {"theta": th, "epsilon": eps,
                   "closed_form": so3_coset_overlap(th, eps),
                   "exact": so3_coset_overlap_exact(th, eps)}
            if trials:
                mc = so3_overlap_mc(th, eps, trials, child_seed(seed, i * len(epsilons) + j))
                row.update({"mc": mc.estimate, "mc_stderr": mc.std_error, "beta": mc.beta})
            rows.append(row)
    return emit(rows, fmt, output)


def register(cli: click.Group):
    """Attach the `bounds` command group."""

    @cli.group("bounds")
    def bounds():
        """Winning-probability bounds (CSV rows: game,params,bound,flags)."""

    @bounds.command("u1")
    @click.option("--primes", required=True, help="Ascending primes, e.g. 3,5,7")
    @click.option("--epsilon", type=float, required=True)
    @format_option
    @handle_errors
    def u1(**kwargs):
        """U(1) coset game over prime-order subgroups."""
        return u1_cmd(**kwargs)

    @bounds.command("complex")
    @click.option("--n", type=int, required=True, help="Multiple of 4")
    @click.option("--delta", type=float, required=True)
    @click.option("--epsilon", type=float, required=True)
    @format_option
    @handle_errors
    def complex_(**kwargs):
        """Complex-plane coset game."""
        return complex_cmd(**kwargs)

    @bounds.command("rn")
    @click.option("--n", type=int, required=True, help="Even mode count")
    @click.option("--delta", type=float, required=True)
    @click.option("--epsilon", type=float, required=True)
    @format_option
    @handle_errors
    def rn(**kwargs):
        """R^n register-subspace game: exact sum and closed form."""
        return rn_cmd(**kwargs)

    @bounds.command("rn-failure")
    @click.option("--n", type=int, required=True)
    @click.option("--delta", type=float, required=True)
    @click.option("--epsilon", type=float, required=True)
    @click.option("--gamma", type=float, required=True, help="Tolerated fraction of failed modes")
    @format_option
    @handle_errors
    def rn_failure(**kwargs):
        """R^n game allowing a gamma fraction of failed modes."""
        return rn_failure_cmd(**kwargs)

    @bounds.command("gkp")
    @click.option("--alphas", required=True, help="Ascending primes, e.g. 2,3,5")
    @click.option("--epsilon", type=float, required=True)
    @click.option("--M", "cutoffs", required=True, help="Cutoff(s) to minimize over, e.g. 10,20,40")
    @click.option("--a", type=float, required=True, help="Damping parameter")
    @format_option
    @handle_errors
    def gkp(**kwargs):
        """GKP-lattice coset game."""
        return gkp_cmd(**kwargs)

    @bounds.command("so3")
    @click.option("--N", "n", type=int, required=True, help="Even number of subgroups")
    @click.option("--epsilon", type=float, required=True)
    @format_option
    @handle_errors
    def so3(**kwargs):
        """SO(3) game with N one-parameter subgroups."""
        return so3_cmd(**kwargs)

    @bounds.command("so3-overlap")
    @click.option("--theta", required=True, help="Angle(s), comma-separated")
    @click.option("--epsilon", required=True, help="Blur radius (or radii), comma-separated")
    @click.option("--trials", type=int, default=0, show_default=True,
                  help="Monte-Carlo samples per point; 0 skips the estimate")
    @click.option("--seed", type=int, default=None)
    @format_option
    @handle_errors
    def so3_overlap(**kwargs):
        """Closed-form, exact and sampled SO(3) coset overlaps."""
        if kwargs["trials"] and kwargs["seed"] is None:
            raise click.UsageError("--seed is required with --trials")
        return so3_overlap_cmd(**kwargs)
