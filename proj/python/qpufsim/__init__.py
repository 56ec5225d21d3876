"""Quantum PUF simulator: Haar-random measurement channels, their
phase-estimation approximation, analytic security bounds, and the
Monte Carlo experiment harness."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
