"""Algebraic extremal bipartite graphs over finite fields, grid search and grid obstructions."""

from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
