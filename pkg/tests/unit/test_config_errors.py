"""Test configuration, seeds, error mapping and command-call logging."""
import json

import click
import numpy as np
import pytest
from click.testing import CliRunner

from coset_qkd.commands.run_logging import close_command_log, logged_command
from coset_qkd.commands.utils import handle_errors, json_response, merge_params
from coset_qkd.config import Config, get_workdir, load_params_file
from coset_qkd.errors import (
    CosetQkdError, InternalError, PreconditionError, ResourceError, UnsupportedParametersError,
    UnsupportedStructureError, ValidationError,
)
from coset_qkd.rng import as_generator, as_seed_sequence, child_seed


class TestErrors:
    """Test suite for the error hierarchy."""

    def test_exit_codes(self):
        """Each error class carries its CLI exit code."""
        assert ValidationError.exit_code == 2
        assert UnsupportedStructureError.exit_code == 2
        assert PreconditionError.exit_code == 3
        assert ResourceError.exit_code == 4
        assert UnsupportedParametersError.exit_code == 4
        assert InternalError.exit_code == 1

    def test_hierarchy(self):
        """Domain errors are also ValueError; all share the package base class."""
        assert issubclass(ValidationError, ValueError)
        assert issubclass(UnsupportedParametersError, ResourceError)
        for cls in (ValidationError, PreconditionError, ResourceError, InternalError):
            assert issubclass(cls, CosetQkdError)

    def test_constraint_name(self):
        """Precondition errors name the failing inequality."""
        err = PreconditionError("gamma too small", "gamma")
        assert err.constraint == "gamma"
        assert str(err) == "gamma too small"


class TestConfig:
    """Test suite for configuration helpers."""

    def test_workdir_created(self, tmp_path, monkeypatch):
        """get_workdir creates the configured directory."""
        target = tmp_path / "nested" / "runs"
        monkeypatch.setattr(Config, "WORKDIR_BASE", str(target))
        assert get_workdir() == target
        assert target.is_dir()

    def test_params_file(self, tmp_path):
        """Comments, blank lines and keys without values are skipped."""
        path = tmp_path / "params.env"
        path.write_text("# desk run\nn=16\n\ngamma = 0.25\ncode=random:24,16,7\nd\n")
        values = load_params_file(str(path))
        assert values == {"n": "16", "gamma": "0.25", "code": "random:24,16,7"}

    def test_no_params_file(self):
        """No path means no values."""
        assert load_params_file(None) == {}

    def test_merge_precedence(self, tmp_path):
        """Flags beat the config file, which beats the preset."""
        path = tmp_path / "params.env"
        path.write_text("gamma=0.125\nkey_len=2\n")
        values = merge_params(str(path), "desk16", {"key_len": "3", "theta": None})
        assert values["gamma"] == "0.125"
        assert values["key_len"] == "3"
        assert values["theta"] == "0.5"
        assert values["code"] == "random:24,16,7"

    def test_unknown_preset(self):
        """Unknown presets are validation errors."""
        with pytest.raises(ValidationError):
            merge_params(None, "nonexistent", {})


class TestSeeds:
    """Test suite for seed derivation."""

    def test_child_matches_spawn(self):
        """child_seed(s, i) is the i-th spawned child of SeedSequence(s)."""
        children = np.random.SeedSequence(1234).spawn(4)
        for i, child in enumerate(children):
            assert np.array_equal(child_seed(1234, i).generate_state(4), child.generate_state(4))

    def test_nested_children(self):
        """Children of children extend the spawn key."""
        grandchild = child_seed(child_seed(7, 2), 5)
        assert tuple(grandchild.spawn_key) == (2, 5)

    def test_generator_passthrough(self):
        """A Generator is used as is; ints build a fresh one."""
        rng = np.random.default_rng(0)
        assert as_generator(rng) is rng
        assert as_generator(3).integers(0, 1 << 30) == as_generator(3).integers(0, 1 << 30)

    def test_seed_required(self):
        """There is no ambient entropy."""
        with pytest.raises(TypeError):
            as_seed_sequence(None)


class TestHandleErrors:
    """Test suite for CLI error mapping."""

    @staticmethod
    def _command(exc):
        @click.command()
        @handle_errors
        def failing():
            raise exc
        return failing

    def test_precondition_exit_code(self):
        """Precondition errors exit 3 and name the constraint on stderr."""
        result = CliRunner().invoke(self._command(PreconditionError("d too small", "distance")))
        assert result.exit_code == 3
        assert "Error: d too small [constraint: distance]" in result.stderr
        assert result.stdout == ""

    def test_validation_exit_code(self):
        """Validation errors exit 2."""
        result = CliRunner().invoke(self._command(ValidationError("bad width")))
        assert result.exit_code == 2

    def test_resource_exit_code(self):
        """Resource errors exit 4."""
        result = CliRunner().invoke(self._command(ResourceError("too big")))
        assert result.exit_code == 4

    def test_output_echoed(self):
        """Returned text goes to stdout with one trailing newline."""
        @click.command()
        @handle_errors
        def ok():
            return "a,b\n1,2\n"
        result = CliRunner().invoke(ok)
        assert result.exit_code == 0
        assert result.stdout == "a,b\n1,2\n"

    def test_json_response(self):
        """Responses are sorted JSON with optional result and error."""
        assert json_response("success", {"b": 1, "a": 2}) == '{"result": {"a": 2, "b": 1}, "status": "success"}'
        assert json.loads(json_response("error", error="boom")) == {"status": "error", "error": "boom"}


class TestCommandLog:
    """Test suite for the command-call log."""

    def test_records_call(self, monkeypatch):
        """Each call appends a JSON line with command name, arguments and result."""
        monkeypatch.setattr(Config, "LOG_COMMAND_CALLS", True)

        @logged_command
        def sample_run_cmd(seed, trials=1):
            return f"ran {trials}"

        try:
            sample_run_cmd(5, trials=2)
        finally:
            close_command_log()
        lines = (get_workdir() / "command_calls.jsonl").read_text().splitlines()
        entry = json.loads(lines[-1])
        assert entry["command"] == "sample-run"
        assert entry["args"] == {"seed": 5, "trials": 2}
        assert entry["result"] == "ran 2"

    def test_records_error(self, monkeypatch):
        """Failures are logged with the error text and re-raised."""
        monkeypatch.setattr(Config, "LOG_COMMAND_CALLS", True)

        @logged_command
        def broken_cmd():
            raise ValidationError("no")

        try:
            with pytest.raises(ValidationError):
                broken_cmd()
        finally:
            close_command_log()
        entry = json.loads((get_workdir() / "command_calls.jsonl").read_text().splitlines()[-1])
        assert entry["command"] == "broken"
        assert entry["error"] == "no"

    def test_disabled(self):
        """Nothing is written when logging is off."""
        @logged_command
        def quiet_cmd():
            return "x"

        assert quiet_cmd() == "x"
        assert not (get_workdir() / "command_calls.jsonl").exists()
