"""Backend selection for the sampling kernels.

numba is used when importable unless QMC_DISABLE_NUMBA is set to a true
value; the pure-numpy kernels compute the same weights.
"""
import os

try:
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

DISABLE_ENV = "QMC_DISABLE_NUMBA"


def numba_disabled() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() in ("1", "true", "yes", "on")


def resolve_backend(backend: str = "auto") -> str:
    if backend == "auto":
        return "numba" if HAVE_NUMBA and not numba_disabled() else "numpy"
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend
