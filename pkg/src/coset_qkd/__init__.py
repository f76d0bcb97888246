"""Coset monogamy-game bounds and squeezed-state CVQKD protocol simulation."""

__version__ = "0.1.0"
