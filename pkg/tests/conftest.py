"""Pytest configuration and shared fixtures for coset-qkd tests."""
import sys
import os

# Add src to path for all tests
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

import pytest

from coset_qkd.config import Config


@pytest.fixture(autouse=True)
def isolated_runs(tmp_path, monkeypatch):
    """Keep logs and command-call records out of the real workdir."""
    monkeypatch.setattr(Config, "WORKDIR_BASE", str(tmp_path / "runs"))
    monkeypatch.setattr(Config, "LOG_COMMAND_CALLS", False)


@pytest.fixture
def temp_workdir(tmp_path):
    """Create a temporary working directory."""
    workdir = tmp_path / "coset_workdir"
    workdir.mkdir()
    return workdir


@pytest.fixture(scope="session")
def desk16():
    """Compliant 16-mode protocol parameters."""
    from coset_qkd.qkd import ProtocolParams
    from coset_qkd.resource.loader import load_preset
    return ProtocolParams.from_mapping(load_preset("desk16"))


@pytest.fixture(scope="session")
def desk64():
    """Compliant 64-mode protocol parameters."""
    from coset_qkd.qkd import ProtocolParams
    from coset_qkd.resource.loader import load_preset
    return ProtocolParams.from_mapping(load_preset("desk64"))


@pytest.fixture(scope="session")
def reference():
    """Asymptotic key-rate parameters: squeeze 0.001, delta 4, epsilon 1/64, n_M = n_N = 16."""
    from coset_qkd.analysis import AsymptoticParams
    return AsymptoticParams(0.001, 4.0, 1 / 64, 16, 16)
