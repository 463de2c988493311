"""Importance weights f(z)/p(z) for the built-in integrands.

Each row of the uniform matrix u holds two numbers per complex coordinate:
u[:, 2c] sets |z_c|^2 = u/(1-u) and u[:, 2c+1] the phase.  This is exact
inverse-CDF sampling of the Fubini-Study density p(z) = 1/(pi (1+|z|^2)^2),
so dividing by p is multiplying by pi (1+|z|^2)^2.
"""
import math

import numpy as np

from ._accel import HAVE_NUMBA, numba

TWO_PI = 2.0 * math.pi
PI = math.pi


# pure numpy

def fs_points(u: np.ndarray) -> np.ndarray:
    """Map uniforms of shape (N, 2a) to chart coordinates of shape (N, a)."""
    s = u[:, 0::2] / (1.0 - u[:, 0::2])
    return np.sqrt(s) * np.exp(1j * TWO_PI * u[:, 1::2])


def fs_density(z: np.ndarray) -> np.ndarray:
    """Product Fubini-Study density on C^a, for z of shape (N, a)."""
    return np.prod(1.0 / (PI * (1.0 + np.abs(z) ** 2) ** 2), axis=1)


def density_one_or_two(z: np.ndarray) -> np.ndarray:
    b, x = z[:, 0], z[:, 1]
    ax = np.abs(x) ** 2
    return (2.0 / PI ** 2) * ax / (1.0 + np.abs(b * x) ** 2 + np.abs((1.0 + b) * x) ** 2) ** 3


def density_one_or_four(z: np.ndarray) -> np.ndarray:
    a, b, w1, w2 = z[:, 0], z[:, 1], z[:, 2], z[:, 3]
    aa, bb = np.abs(a) ** 2, np.abs(b) ** 2

    def F(w):
        return 1.0 + aa * np.abs(w) ** 2 + bb * np.abs(1.0 - w) ** 2

    return (4.0 / PI ** 4) * aa * bb * np.abs(w1 - w2) ** 2 / (F(w1) * F(w2)) ** 3


def density_one_or_sixteen(z: np.ndarray) -> np.ndarray:
    a, b, z1, z2 = z[:, 0], z[:, 1], z[:, 2], z[:, 3]
    aa, bb = np.abs(a) ** 2, np.abs(b) ** 2

    def F(w):
        ww, vv = np.abs(w) ** 2, np.abs(1.0 - w) ** 2
        return ww + aa * vv + bb * ww * vv

    num = (aa * bb * np.abs(z1) ** 2 * np.abs(z2) ** 2 * np.abs(1.0 - z1) ** 2
           * np.abs(1.0 - z2) ** 2 * np.abs(z1 - z2) ** 2)
    return (4.0 / PI ** 4) * num / (F(z1) * F(z2)) ** 3


def weights_numpy(density, u: np.ndarray) -> np.ndarray:
    z = fs_points(u)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return density(z) / fs_density(z)


# numba: fused transform and weight, one row at a time

if HAVE_NUMBA:
    jit = numba.njit(nogil=True, cache=True, error_model="numpy")

    @jit
    def _fs(u, i, c):
        s = u[i, 2 * c] / (1.0 - u[i, 2 * c])
        t = TWO_PI * u[i, 2 * c + 1]
        r = math.sqrt(s)
        return complex(r * math.cos(t), r * math.sin(t)), PI * (1.0 + s) ** 2

    @jit
    def _abs2(z):
        return z.real * z.real + z.imag * z.imag

    @jit
    def _weights_one_or_two(u, out):
        for i in range(u.shape[0]):
            b, gb = _fs(u, i, 0)
            x, gx = _fs(u, i, 1)
            ax = _abs2(x)
            f = (2.0 / PI ** 2) * ax / (1.0 + _abs2(b * x) + _abs2((1.0 + b) * x)) ** 3
            out[i] = f * gb * gx

    @jit
    def _weights_one_or_four(u, out):
        for i in range(u.shape[0]):
            a, ga = _fs(u, i, 0)
            b, gb = _fs(u, i, 1)
            w1, g1 = _fs(u, i, 2)
            w2, g2 = _fs(u, i, 3)
            aa, bb = _abs2(a), _abs2(b)
            F1 = 1.0 + aa * _abs2(w1) + bb * _abs2(1.0 - w1)
            F2 = 1.0 + aa * _abs2(w2) + bb * _abs2(1.0 - w2)
            f = (4.0 / PI ** 4) * aa * bb * _abs2(w1 - w2) / (F1 * F2) ** 3
            out[i] = f * ga * gb * g1 * g2

    @jit
    def _weights_one_or_sixteen(u, out):
        for i in range(u.shape[0]):
            a, ga = _fs(u, i, 0)
            b, gb = _fs(u, i, 1)
            z1, g1 = _fs(u, i, 2)
            z2, g2 = _fs(u, i, 3)
            aa, bb = _abs2(a), _abs2(b)
            s1, v1 = _abs2(z1), _abs2(1.0 - z1)
            s2, v2 = _abs2(z2), _abs2(1.0 - z2)
            F1 = s1 + aa * v1 + bb * s1 * v1
            F2 = s2 + aa * v2 + bb * s2 * v2
            num = aa * bb * s1 * s2 * v1 * v2 * _abs2(z1 - z2)
            f = (4.0 / PI ** 4) * num / (F1 * F2) ** 3
            out[i] = f * ga * gb * g1 * g2

    NUMBA_KERNELS = {
        "one_or_two": _weights_one_or_two,
        "one_or_four": _weights_one_or_four,
        "one_or_sixteen": _weights_one_or_sixteen,
    }
else:  # pragma: no cover
    NUMBA_KERNELS = {}


NUMPY_DENSITIES = {
    "one_or_two": density_one_or_two,
    "one_or_four": density_one_or_four,
    "one_or_sixteen": density_one_or_sixteen,
}


def weights(integrand_id: str, density, u: np.ndarray, backend: str) -> np.ndarray:
    if backend == "numba" and integrand_id in NUMBA_KERNELS:
        out = np.empty(u.shape[0])
        NUMBA_KERNELS[integrand_id](u, out)
        return out
    return weights_numpy(density, u)
