"""Reaction-diffusion systems with a tridiagonal 2-Toeplitz diffusion matrix."""

from ._core import *  # noqa: F401,F403
from ._core import datasets, run_cli  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
