"""Shared helpers for the CLI commands."""
import functools
import json
import logging
from typing import Callable, Dict, Mapping, Optional

import click

from coset_qkd.config import load_params_file
from coset_qkd.errors import CosetQkdError

logger = logging.getLogger("coset-qkd")


def json_response(status: str, result=None, error=None) -> str:
    """Format a JSON document for command output."""
    response = {"status": status}
    if result is not None:
        response["result"] = result
    if error is not None:
        response["error"] = error
    return json.dumps(response, ensure_ascii=False, sort_keys=True, default=str)


def handle_errors(func: Callable) -> Callable:
    """Echo the command's returned text and map library errors to exit codes."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            output = func(*args, **kwargs)
        except CosetQkdError as e:
            logger.debug(f"{type(e).__name__}: {e}")
            constraint = getattr(e, "constraint", None)
            suffix = f" [constraint: {constraint}]" if constraint else ""
            click.echo(f"Error: {e}{suffix}", err=True)
            raise SystemExit(e.exit_code)
        except OSError as e:
            click.echo(f"Error: {e}", err=True)
            raise SystemExit(1)
        if output is not None:
            click.echo(output, nl=not output.endswith("\n"))
    return wrapper


def merge_params(config: Optional[str], preset: Optional[str],
                 overrides: Mapping[str, object]) -> Dict[str, object]:
    """Preset, then config file, then flags; later sources win."""
    values: Dict[str, object] = {}
    if preset:
        from coset_qkd.resource.loader import load_preset
        values.update(load_preset(preset))
    values.update(load_params_file(config))
    values.update({k: v for k, v in overrides.items() if v is not None})
    return values


def parse_int_list(text: str):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}")


def parse_float_list(text: str):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {text!r}")


def parse_bits(text: str):
    if not text or set(text) - {"0", "1"}:
        raise click.BadParameter(f"expected a bit string, got {text!r}")
    return [int(c) for c in text]


def format_option(func: Callable) -> Callable:
    func = click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
                        help="Also write the data to this file")(func)
    return click.option("--format", "fmt", type=click.Choice(["csv", "gnuplot-data"]), default="csv",
                        show_default=True, help="Output format")(func)
