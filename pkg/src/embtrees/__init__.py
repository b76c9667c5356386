"""Labelled plane trees: exact series, brute-force oracles, uniform sampling
and the associated limit laws."""

from .kernels import BACKEND

__all__ = ["BACKEND", "__version__"]
__version__ = "0.1.0"
