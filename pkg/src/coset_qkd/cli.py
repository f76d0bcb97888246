"""coset-qkd command-line entry point."""
import logging
from pathlib import Path
from typing import Optional

import click

from coset_qkd import __version__
from coset_qkd.config import Config, get_workdir

logger = logging.getLogger("coset-qkd")


def _get_log_path() -> Path:
    """Store logs alongside the other run artifacts."""
    return get_workdir() / "coset-qkd.log"


def setup_logging(level: Optional[str] = None):
    """Log to <workdir>/coset-qkd.log and stderr; stdout carries only data."""
    logging.basicConfig(
        level=getattr(logging, (level or Config.LOG_LEVEL).upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(_get_log_path(), encoding="utf-8"),
            logging.StreamHandler(),
        ],
        force=True,
    )


def register_all_commands(group: click.Group):
    """
    注册所有命令组。

    命令分组:
    - bounds: u1, complex, rn, rn-failure, gkp, so3, so3-overlap
    - game:   build, check, bound, seesaw
    - qkd:    simulate, replay, analyze, keyrate
    - codes:  make, distance, decode, hashcheck
    """
    from coset_qkd.commands import bounds_cmd
    bounds_cmd.register(group)

    from coset_qkd.commands import game_cmd
    game_cmd.register(group)

    from coset_qkd.commands import qkd_cmd
    qkd_cmd.register(group)

    from coset_qkd.commands import codes_cmd
    codes_cmd.register(group)


@click.group()
@click.version_option(__version__, prog_name="coset-qkd")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              default=None, help="Override LOG_LEVEL")
def cli(log_level):
    """Coset monogamy games and squeezed-state CV-QKD toolkit."""
    setup_logging(log_level)


register_all_commands(cli)


def main():
    """Entry point for console script."""
    cli()


if __name__ == "__main__":
    cli()
