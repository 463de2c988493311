"""Block-parallel importance sampling with bit-exact reproducible reduction.

Samples are cut into blocks of BLOCK_SIZE.  Block b draws its uniforms from
a Philox generator keyed by the seed whose counter starts at (0, 0, 0, b);
a block consumes far fewer than 2^64 counter steps, so blocks never overlap.
Block statistics (count, mean, M2) are merged in block-index order with the
pairwise update of Chan et al., so the result depends on (seed, samples)
only, whatever the number of threads.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from . import kernels
from ._accel import resolve_backend

BLOCK_SIZE = 1 << 16
MAX_REJECT_FRACTION = 1e-4
BUILTIN_IDS = ("one_or_two", "one_or_four", "one_or_sixteen")
SEED_MASK = (1 << 64) - 1


class MonteCarloError(RuntimeError):
    pass


@dataclass(frozen=True)
class Integrand:
    """density maps an (N, arity) complex array to N non-negative reals."""
    id: str
    arity: int
    density: Callable[[np.ndarray], np.ndarray]

    def __call__(self, z) -> np.ndarray:
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        return self.density(z)


def builtin_integrand(integrand_id: str) -> Integrand:
    key = integrand_id.replace("-", "_")
    if key not in BUILTIN_IDS:
        raise ValueError(f"unknown integrand {integrand_id!r}; built-ins are {', '.join(BUILTIN_IDS)}")
    arity = 2 if key == "one_or_two" else 4
    return Integrand(key, arity, kernels.NUMPY_DENSITIES[key])


def custom_integrand(density: Callable[[np.ndarray], np.ndarray], arity: int) -> Integrand:
    if arity < 1:
        raise ValueError("arity must be positive")
    return Integrand("custom", arity, density)


@dataclass(frozen=True)
class MCEstimate:
    samples: int
    mean: float
    std_error: float
    seed: int
    wall_time: float
    integrand: str = "custom"
    threads: int = 1
    rejected: int = 0
    backend: str = "numpy"

    def key(self) -> Tuple[int, float, float, int, int]:
        """Everything that must reproduce bit-for-bit (wall time excluded)."""
        return (self.samples, self.mean, self.std_error, self.seed, self.rejected)

    def to_json(self) -> dict:
        return asdict(self)

    def format(self) -> str:
        return f"{self.mean:.6g} ± {self.std_error:.6g}"


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed & SEED_MASK, counter=[0, 0, 0, block]))


def _block_stats(f: Integrand, seed: int, block: int, size: int, backend: str):
    u = block_generator(seed, block).random((size, 2 * f.arity))
    w = kernels.weights(f.id, f.density, u, backend)
    finite = np.isfinite(w)
    rejected = int(size - np.count_nonzero(finite))
    if rejected:
        w = w[finite]
    n = w.shape[0]
    if n == 0:
        return 0, 0.0, 0.0, rejected
    mean = float(np.mean(w))
    m2 = float(np.sum((w - mean) ** 2))
    return n, mean, m2, rejected


def _merge(a, b):
    na, ma, qa = a
    nb, mb, qb = b
    n = na + nb
    if n == 0:
        return 0, 0.0, 0.0
    delta = mb - ma
    return n, ma + delta * (nb / n), qa + qb + delta * delta * (na * nb / n)


def default_threads() -> int:
    env = os.environ.get("QMC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise MonteCarloError(f"QMC_THREADS must be a positive integer, got {env!r}") from None
    return os.cpu_count() or 1


def integrate_mc(f: Integrand, samples: int, seed: int = 0, threads: Optional[int] = None,
                 backend: str = "auto") -> MCEstimate:
    """Estimate the integral of f over C^arity by sampling the product Fubini-Study density."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    threads = default_threads() if threads is None else int(threads)
    if threads < 1:
        raise ValueError("threads must be at least 1")
    backend = resolve_backend(backend)
    seed = int(seed) & SEED_MASK
    nblocks = -(-samples // BLOCK_SIZE)
    sizes = [BLOCK_SIZE] * (nblocks - 1) + [samples - BLOCK_SIZE * (nblocks - 1)]

    def run(b):
        return _block_stats(f, seed, b, sizes[b], backend)

    start = time.perf_counter()
    if threads == 1 or nblocks == 1:
        results = map(run, range(nblocks))
        acc, rejected = (0, 0.0, 0.0), 0
        for n, m, q, r in results:
            acc = _merge(acc, (n, m, q))
            rejected += r
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            acc, rejected = (0, 0.0, 0.0), 0
            for n, m, q, r in pool.map(run, range(nblocks)):
                acc = _merge(acc, (n, m, q))
                rejected += r
    wall = time.perf_counter() - start

    if rejected > MAX_REJECT_FRACTION * samples:
        raise MonteCarloError(f"{rejected} of {samples} sample weights were non-finite")
    n, mean, m2 = acc
    if n == 0:
        raise MonteCarloError("no finite sample weights")
    std_error = float(np.sqrt(m2 / (n - 1) / n)) if n > 1 else 0.0
    return MCEstimate(samples, mean, std_error, seed, wall, f.id, threads, rejected, backend)
