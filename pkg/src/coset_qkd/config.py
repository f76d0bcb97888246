import os
from pathlib import Path
from typing import Dict, Optional

# Load environment variables from .env file (optional)
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # dotenv is optional


class Config:
    # Logging
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    LOG_COMMAND_CALLS = os.getenv("LOG_COMMAND_CALLS", "true").lower() == "true"

    # Run workdir (logs, command-call log, transcripts)
    WORKDIR_BASE = os.getenv("COSET_QKD_WORKDIR", "/tmp/coset-qkd-runs")

    # Finite groups: refuse tables larger than this
    GROUP_ORDER_CAP = int(os.getenv("GROUP_ORDER_CAP", "4096"))

    # Linear codes
    # Minimum distance is brute-forced when n is at most DISTANCE_BRUTE_FORCE_LENGTH,
    # or when k (codewords) or n-k (dual words, MacWilliams) fits DISTANCE_ENUMERATION_BITS
    DISTANCE_BRUTE_FORCE_LENGTH = int(os.getenv("DISTANCE_BRUTE_FORCE_LENGTH", "24"))
    DISTANCE_ENUMERATION_BITS = int(os.getenv("DISTANCE_ENUMERATION_BITS", "16"))
    SYNDROME_TABLE_MAX_BITS = int(os.getenv("SYNDROME_TABLE_MAX_BITS", "20"))

    # Truncated Gaussian sampling
    MIN_ACCEPTANCE = float(os.getenv("MIN_ACCEPTANCE", "1e-6"))
    MAX_RESAMPLE_ROUNDS = int(os.getenv("MAX_RESAMPLE_ROUNDS", "10000"))

    # Numerical oracles
    SO3_BETA_GRID = int(os.getenv("SO3_BETA_GRID", "720"))
    FLOOR_GRID_POINTS = int(os.getenv("FLOOR_GRID_POINTS", "4001"))

    # Monte-Carlo summaries
    CONFIDENCE_LEVEL = float(os.getenv("CONFIDENCE_LEVEL", "0.99"))


def get_workdir() -> Path:
    """Return the run workdir, creating it on first use."""
    workdir = Path(Config.WORKDIR_BASE)
    workdir.mkdir(parents=True, exist_ok=True)
    return workdir


def load_params_file(path: Optional[str]) -> Dict[str, str]:
    """Parse a plain-text key=value parameter file.

    Blank lines and ``#`` comments are ignored. Keys without a value are dropped.
    """
    if not path:
        return {}
    from dotenv import dotenv_values

    values = dotenv_values(path)
    return {k: v for k, v in values.items() if v is not None}
