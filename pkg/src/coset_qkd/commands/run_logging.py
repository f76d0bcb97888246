"""Command call logging.

Appends one JSON line per CLI command to <workdir>/command_calls.jsonl.
"""
import functools
import inspect
import json
import logging
import time
from datetime import datetime
from pathlib import Path
from typing import Any, Callable

from coset_qkd.config import Config, get_workdir

logger = logging.getLogger("coset-qkd")

# Command call log file handle
_command_log_file = None


def _get_command_log_path() -> Path:
    return get_workdir() / "command_calls.jsonl"


def _init_command_log():
    global _command_log_file
    if _command_log_file is None and Config.LOG_COMMAND_CALLS:
        log_path = _get_command_log_path()
        _command_log_file = open(log_path, "a", buffering=1)  # Line buffered
        logger.debug(f"Command call logging enabled: {log_path}")


def _log_command_call(command: str, args: dict, result: Any, duration_ms: float, error: str = None):
    """Log a single command call to the JSONL file."""
    if not Config.LOG_COMMAND_CALLS:
        return
    if _command_log_file is None:
        _init_command_log()
    if _command_log_file is None:
        return

    # Truncate large outputs
    result_str = str(result)
    if len(result_str) > 2000:
        result_str = result_str[:2000] + f"... (truncated, total {len(result_str)} chars)"

    entry = {
        "timestamp": datetime.now().isoformat(),
        "command": command,
        "args": args,
        "duration_ms": round(duration_ms, 2),
    }
    if error:
        entry["error"] = error
    else:
        entry["result"] = result_str

    try:
        _command_log_file.write(json.dumps(entry, ensure_ascii=False, default=str) + "\n")
    except Exception as e:
        logger.warning(f"Failed to log command call: {e}")


def logged_command(func: Callable) -> Callable:
    """Decorator recording arguments, duration and output of a command body.

    Usage:
        @logged_command
        def simulate(params, seed):
            ...
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        command = func.__name__.replace("_cmd", "").replace("_", "-")
        params = list(inspect.signature(func).parameters.keys())
        logged_args = {params[i]: arg for i, arg in enumerate(args) if i < len(params)}
        logged_args.update(kwargs)

        start_time = time.perf_counter()
        error_msg = None
        result = None
        try:
            result = func(*args, **kwargs)
            return result
        except Exception as e:
            error_msg = str(e)
            raise
        finally:
            duration_ms = (time.perf_counter() - start_time) * 1000
            _log_command_call(command, logged_args, result, duration_ms, error_msg)

    return wrapper


def close_command_log():
    """Close the command call log file."""
    global _command_log_file
    if _command_log_file:
        _command_log_file.close()
        _command_log_file = None
