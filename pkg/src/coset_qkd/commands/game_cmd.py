"""`coset-qkd game`: finite coset monogamy games."""
import logging
from typing import List, Sequence

import click

from coset_qkd.analysis.emit import emit
from coset_qkd.commands.run_logging import logged_command
from coset_qkd.commands.utils import format_option, handle_errors, json_response, parse_int_list
from coset_qkd.errors import ValidationError
from coset_qkd.finite import (
    GroupTable, Subgroup, all_subgroups, construct_group, coset_basis, finite_bound, irreps,
    overlap_check, register_subspace, seesaw_lower_bound, subgroup_from_labels,
)

logger = logging.getLogger("coset-qkd")


def select_subgroups(G: GroupTable, subgroups: Sequence[str], registers: Sequence[str],
                     use_all: bool) -> List[Subgroup]:
    """Subgroups from generator labels (``r^3;t``), z2^n coordinates (``0,2``) or the full lattice."""
    chosen = [subgroup_from_labels(G, [lab.strip() for lab in spec.split(";") if lab.strip()])
              for spec in subgroups]
    chosen += [register_subspace(G, parse_int_list(spec)) for spec in registers]
    if use_all:
        chosen += all_subgroups(G)
    if not chosen:
        raise ValidationError("name at least one subgroup (--subgroup, --register or --all)")
    return chosen


def _describe(H: Subgroup) -> dict:
    return {
        "label": H.label(),
        "order": H.order,
        "abelian": H.is_abelian,
        "cosets": H.parent.order // H.order,
        "irrep_dims": [irrep.dim for irrep in irreps(H).irreps],
    }


@logged_command
def build_cmd(group: str, subgroup, register, use_all) -> str:
    G = construct_group(group)
    S = select_subgroups(G, subgroup, register, use_all)
    return json_response("success", {
        "group": G.name,
        "order": G.order,
        "abelian": G.is_abelian,
        "subgroups": [_describe(H) for H in S],
    })


@logged_command
def check_cmd(group: str, subgroup, register, use_all, sweep: bool) -> str:
    G = construct_group(group)
    G.validate()
    S = select_subgroups(G, subgroup, register, use_all)
    gram = {}
    bases = []
    for H in S:
        basis = coset_basis(G, H)
        basis.irrep_set.check()
        gram[H.label()] = basis.gram_error()
        bases.append(basis)
    result = {"group": G.name, "max_gram_error": max(gram.values()), "gram_error": gram}
    if sweep:
        checked, worst = 0, 0.0
        for H, basis in zip(S, bases):
            elements = basis.irrep_set.matrix_elements()
            for K in S:
                for q, _ in K.cosets():
                    for mu in range(len(elements)):
                        overlap = overlap_check(G, H, K, mu, q, basis)
                        worst = max(worst, overlap.norm - overlap.bound)
                        checked += 1
        result.update({"overlap_checks": checked, "max_excess": worst})
        logger.info(f"overlap sweep on {G.name}: {checked} cases, max excess {worst:.3g}")
    return json_response("success", result)


@logged_command
def bound_cmd(group: str, subgroup, register, use_all, fmt: str, output: str) -> str:
    G = construct_group(group)
    report = finite_bound(G, select_subgroups(G, subgroup, register, use_all))
    row = report.to_row()
    row["unclamped"] = report.details["unclamped"]
    return emit([row], fmt, output)


@logged_command
def seesaw_cmd(group: str, subgroup, register, use_all, seed: int, iters: int, restarts: int,
               dims: str, fmt: str, output: str) -> str:
    G = construct_group(group)
    S = select_subgroups(G, subgroup, register, use_all)
    ancilla = parse_int_list(dims) if dims else None
    if ancilla is not None and len(ancilla) != 2:
        raise ValidationError(f"--dims takes two values d_B,d_C, got {dims!r}")
    result = seesaw_lower_bound(G, S, seed, iters=iters, restarts=restarts, dims=ancilla)
    upper = finite_bound(G, S).bound
    return emit([{
        "group": G.name,
        "subgroups": " ".join(H.label() for H in S),
        "seesaw_value": result.value,
        "naive_value": result.naive_value,
        "finite_bound": upper,
        "converged": result.converged,
        "rounds": len(result.history),
    }], fmt, output)


def _subgroup_options(func):
    func = click.option("--all", "use_all", is_flag=True, help="Use every subgroup of the group")(func)
    func = click.option("--register", multiple=True,
                        help="z2^n coordinate subspace, e.g. 0,2 (repeatable)")(func)
    func = click.option("--subgroup", multiple=True,
                        help="Generator labels separated by ';', e.g. 'r^5;t' (repeatable)")(func)
    return click.option("--group", required=True, help="Group spec: z6, z2^4, d15, z2xz3, ...")(func)


def register(cli: click.Group):
    """Attach the `game` command group."""

    @cli.group("game")
    def game():
        """Finite coset monogamy games."""

    @game.command("build")
    @_subgroup_options
    @handle_errors
    def build(**kwargs):
        """Describe a group and subgroup family (JSON)."""
        return build_cmd(**kwargs)

    @game.command("check")
    @_subgroup_options
    @click.option("--sweep", is_flag=True, help="Check the overlap lemma on every subgroup pair")
    @handle_errors
    def check(**kwargs):
        """Validate tables, irreps and coset bases (JSON)."""
        return check_cmd(**kwargs)

    @game.command("bound")
    @_subgroup_options
    @format_option
    @handle_errors
    def bound(**kwargs):
        """Upper bound on the winning probability."""
        return bound_cmd(**kwargs)

    @game.command("seesaw")
    @_subgroup_options
    @click.option("--seed", type=int, required=True)
    @click.option("--iters", type=int, default=50, show_default=True)
    @click.option("--restarts", type=int, default=3, show_default=True)
    @click.option("--dims", default=None, help="Ancilla dimensions d_B,d_C (default |G|,|G|)")
    @format_option
    @handle_errors
    def seesaw(**kwargs):
        """Lower bound from alternating optimization over strategies."""
        return seesaw_cmd(**kwargs)
