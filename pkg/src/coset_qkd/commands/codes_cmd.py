"""`coset-qkd codes`: linear codes and Toeplitz hashing."""
import logging
from pathlib import Path
from typing import Optional

import click
import numpy as np

from coset_qkd.analysis.emit import emit
from coset_qkd.coding import LinearCode, decode_with_syndrome, make_code, syndrome, universality_check
from coset_qkd.commands.run_logging import logged_command
from coset_qkd.commands.utils import format_option, handle_errors, parse_bits
from coset_qkd.errors import ValidationError

logger = logging.getLogger("coset-qkd")


def load_code(spec: Optional[str], path: Optional[str], d: Optional[int] = None) -> LinearCode:
    if bool(spec) == bool(path):
        raise ValidationError("give exactly one of --spec or --file")
    if path:
        return LinearCode.from_text(Path(path).read_text())
    return make_code(spec, d=d)


def _bits(values) -> str:
    return "".join(str(int(b)) for b in values)


@logged_command
def make_cmd(spec: str, d: Optional[int], output: Optional[str]) -> str:
    text = make_code(spec, d=d).to_text()
    if output:
        Path(output).write_text(text)
    return text


@logged_command
def distance_cmd(spec: Optional[str], file: Optional[str], fmt: str, output: str) -> str:
    code = load_code(spec, file)
    return emit([{"code": code.name, "n": code.n, "k": code.k, "d": code.d}], fmt, output)


@logged_command
def decode_cmd(spec: Optional[str], file: Optional[str], word: str, target: Optional[str]) -> str:
    code = load_code(spec, file)
    received = np.array(parse_bits(word), dtype=np.uint8)
    wanted = np.zeros(code.s, dtype=np.uint8) if target is None else np.array(parse_bits(target), dtype=np.uint8)
    corrected = decode_with_syndrome(code, received, wanted)
    flipped = int(np.count_nonzero(corrected != received))
    logger.info(f"decode: {flipped} bit(s) flipped, syndrome {_bits(syndrome(code, corrected))}")
    return _bits(corrected)


@logged_command
def hashcheck_cmd(in_len: int, out_len: int, fmt: str, output: str) -> str:
    collision = universality_check(in_len, out_len)
    return emit([{
        "in_len": in_len,
        "out_len": out_len,
        "max_collision": str(collision),
        "ideal": f"1/{2 ** out_len}",
        "universal": collision <= 2.0 ** -out_len,
    }], fmt, output)


def _code_source(func):
    func = click.option("--file", type=click.Path(exists=True, dir_okay=False), default=None,
                        help="Code in 'n k d' + hex-row text form")(func)
    return click.option("--spec", default=None,
                        help="hamming:n,k | repetition:n | random:n,k,seed | parity:n,k:hex")(func)


def register(cli: click.Group):
    """Attach the `codes` command group."""

    @cli.group("codes")
    def codes():
        """Binary linear codes and universal hashing."""

    @codes.command("make")
    @click.argument("spec")
    @click.option("--d", type=int, default=None, help="Declared distance when it cannot be computed")
    @click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
    @handle_errors
    def make(**kwargs):
        """Build a code and print its text form."""
        return make_cmd(**kwargs)

    @codes.command("distance")
    @_code_source
    @format_option
    @handle_errors
    def distance(**kwargs):
        """Minimum distance (blank when out of enumeration reach)."""
        return distance_cmd(**kwargs)

    @codes.command("decode")
    @_code_source
    @click.option("--word", required=True, help="Received bits")
    @click.option("--syndrome", "target", default=None, help="Target syndrome bits (default all zero)")
    @handle_errors
    def decode(**kwargs):
        """Nearest word with the given syndrome."""
        return decode_cmd(**kwargs)

    @codes.command("hashcheck")
    @click.option("--in-len", type=int, required=True)
    @click.option("--out-len", type=int, required=True)
    @format_option
    @handle_errors
    def hashcheck(**kwargs):
        """Exhaustive collision check of the Toeplitz family."""
        return hashcheck_cmd(**kwargs)
