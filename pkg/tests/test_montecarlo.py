import math

import numpy as np
import pytest

from qmcount.montecarlo import (BLOCK_SIZE, BUILTIN_IDS, HAVE_NUMBA, MonteCarloError, builtin_integrand,
                                custom_integrand, fs_density, integrate_mc, resolve_backend)
from qmcount.montecarlo import kernels
from qmcount.montecarlo.integrate import block_generator

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


def test_builtin_point_values():
    f2 = builtin_integrand("one_or_two")
    for z in (0.3 + 0.1j, 2.0, -1j):
        assert f2([0, z])[0] == pytest.approx(2 / math.pi ** 2 * abs(z) ** 2 / (1 + abs(z) ** 2) ** 3, rel=1e-14)
    f4 = builtin_integrand("one-or-four")
    assert f4([0.5, 1 + 1j, 0.2 - 0.3j, 0.2 - 0.3j])[0] == 0
    f16 = builtin_integrand("one_or_sixteen")
    assert f16([0.5, 1j, 0.0, 2.0])[0] == 0
    assert f16([0.5, 1j, 1.0, 2.0])[0] == 0
    assert f2.arity == 2 and f4.arity == 4 and f16.arity == 4
    with pytest.raises(ValueError):
        builtin_integrand("one_or_three")


def test_source_point_swap_symmetry():
    rng = np.random.default_rng(0)
    z = rng.normal(size=(100, 4)) + 1j * rng.normal(size=(100, 4))
    swapped = z[:, [0, 1, 3, 2]]
    for name in ("one_or_four", "one_or_sixteen"):
        f = builtin_integrand(name)
        np.testing.assert_allclose(f(z), f(swapped), rtol=1e-13)


def test_densities_nonnegative():
    rng = np.random.default_rng(1)
    z = (rng.normal(size=(1000, 4)) + 1j * rng.normal(size=(1000, 4))) * 3
    for name in BUILTIN_IDS:
        f = builtin_integrand(name)
        assert np.all(f(z[:, :f.arity]) >= 0)


def test_reference_density_integrates_to_one_exactly():
    f = custom_integrand(fs_density, 3)
    est = integrate_mc(f, 50_000, seed=4, threads=1)
    assert est.mean == 1.0 and est.std_error == 0.0


def test_fs_sampling_matches_density():
    # |z|^2 = u/(1-u) has P(|z|^2 <= t) = t/(1+t), the FS radial law
    u = block_generator(7, 0).random((200_000, 2))
    z = kernels.fs_points(u)[:, 0]
    t = 1.7
    assert np.mean(np.abs(z) ** 2 <= t) == pytest.approx(t / (1 + t), abs=4e-3)
    assert abs(np.mean(z)) < 0.05


@needs_numba
@pytest.mark.parametrize("name", BUILTIN_IDS)
def test_numba_matches_numpy(name):
    f = builtin_integrand(name)
    u = block_generator(3, 0).random((20_000, 2 * f.arity))
    a = kernels.weights(name, f.density, u, "numba")
    b = kernels.weights(name, f.density, u, "numpy")
    np.testing.assert_allclose(a, b, rtol=1e-10, atol=0)


@pytest.mark.parametrize("name", BUILTIN_IDS)
def test_deterministic_across_runs_and_threads(name):
    f = builtin_integrand(name)
    n = 3 * BLOCK_SIZE + 123
    a = integrate_mc(f, n, seed=42, threads=1)
    b = integrate_mc(f, n, seed=42, threads=1)
    c = integrate_mc(f, n, seed=42, threads=4)
    assert a.key() == b.key() == c.key()
    assert integrate_mc(f, n, seed=43, threads=1).mean != a.mean


def test_backend_env_flag(monkeypatch):
    monkeypatch.setenv("QMC_DISABLE_NUMBA", "1")
    assert resolve_backend() == "numpy"
    est = integrate_mc(builtin_integrand("one_or_two"), 1000, seed=1, threads=1)
    assert est.backend == "numpy"
    monkeypatch.delenv("QMC_DISABLE_NUMBA")
    assert resolve_backend() == ("numba" if HAVE_NUMBA else "numpy")
    with pytest.raises(ValueError):
        resolve_backend("cuda")


def test_threads_env(monkeypatch):
    monkeypatch.setenv("QMC_THREADS", "3")
    est = integrate_mc(builtin_integrand("one_or_two"), 1000, seed=1)
    assert est.threads == 3


def test_rejections():
    def sometimes_nan(z):
        out = np.ones(z.shape[0]) * fs_density(z)
        out[::5000] = np.nan
        return out

    f = custom_integrand(sometimes_nan, 1)
    with pytest.raises(MonteCarloError):
        integrate_mc(f, 100_000, seed=0, threads=1)

    def rarely_nan(z):
        out = fs_density(z).copy()
        out[:1] = np.inf
        return out

    est = integrate_mc(custom_integrand(rarely_nan, 1), 3 * BLOCK_SIZE, seed=0, threads=1)
    assert est.rejected == 3 and est.mean == 1.0


def test_argument_checks():
    f = builtin_integrand("one_or_two")
    with pytest.raises(ValueError):
        integrate_mc(f, 0)
    with pytest.raises(ValueError):
        integrate_mc(f, 10, threads=0)


def test_single_sample():
    est = integrate_mc(builtin_integrand("one_or_two"), 1, seed=9, threads=1)
    assert est.samples == 1 and est.std_error == 0.0


def test_one_or_two_moderate_accuracy():
    est = integrate_mc(builtin_integrand("one_or_two"), 1_000_000, seed=5, threads=1)
    assert abs(est.mean - 1) < 4 * est.std_error
    assert est.std_error < 0.01


def test_std_error_scaling():
    f = builtin_integrand("one_or_two")
    errs = [integrate_mc(f, BLOCK_SIZE * 2 ** i, seed=17, threads=1).std_error for i in range(6)]
    ratios = [b / a for a, b in zip(errs, errs[1:])]
    assert 0.6 <= sum(ratios) / len(ratios) <= 0.85


def test_report_fields():
    est = integrate_mc(builtin_integrand("one_or_two"), 5000, seed=2, threads=1)
    d = est.to_json()
    for key in ("samples", "mean", "std_error", "seed", "wall_time"):
        assert key in d
    assert "±" in est.format()
