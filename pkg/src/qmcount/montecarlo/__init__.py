"""Monte Carlo checks of the smooth-count integrals."""
from ._accel import HAVE_NUMBA, resolve_backend
from .integrate import (BLOCK_SIZE, BUILTIN_IDS, Integrand, MCEstimate, MonteCarloError,
                        builtin_integrand, custom_integrand, default_threads, integrate_mc)
from .kernels import fs_density

__all__ = [
    "BLOCK_SIZE", "BUILTIN_IDS", "HAVE_NUMBA", "Integrand", "MCEstimate", "MonteCarloError",
    "builtin_integrand", "custom_integrand", "default_threads", "fs_density", "integrate_mc",
    "resolve_backend",
]
