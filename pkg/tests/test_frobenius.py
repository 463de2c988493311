import random
from fractions import Fraction

import pytest

from qmcount.frobenius import (FrobeniusElement, KernelWitnessError, QGeometry, cqp, eta,
                               kernel_witness_check, pairing_matrix, quotient_relation)
from qmcount.quasimap import n_knd

G22 = QGeometry((2,), 2)
CUT = (4,)


def xq(j, q=0, c=1, cut=CUT):
    return FrobeniusElement({(j, (q,)): c}, cut)


def test_eta_images_k2_n2():
    images = {2: 0, 8: 1, 17: 2, 29: 3, 44: 4}
    for j in range(50):
        value = eta(xq(j), G22)
        if j in images:
            assert value == xq(0, images[j])
        else:
            assert value.is_zero()
    assert eta(FrobeniusElement({}, CUT), G22).is_zero()


def test_eta_multi_q():
    n = 2
    g = QGeometry((1, 1), n)
    cut = (3, 3)
    for d1 in range(4):
        for d2 in range(4):
            j = (n + 1) * (d1 + 1) * (d2 + 1) - 1
            value = eta(FrobeniusElement.x_power(j, cut), g)
            assert value.coeffs[(0, (d1, d2))] == 1


def test_eta_linear_and_homogeneous():
    rng = random.Random(5)
    for _ in range(50):
        a = FrobeniusElement({(rng.randint(0, 45), (rng.randint(0, 4),)): rng.randint(-3, 3) for _ in range(4)}, CUT)
        b = FrobeniusElement({(rng.randint(0, 45), (rng.randint(0, 4),)): rng.randint(-3, 3) for _ in range(4)}, CUT)
        assert eta(a + b * 3, G22) == eta(a, G22) + eta(b, G22) * 3


def test_cqp():
    for d in range(4):
        N = n_knd(2, 2, d)
        js, total = [], N
        while total:
            js.append(min(2, total))
            total -= js[-1]
        assert cqp(js, G22) == xq(0, d)
    assert cqp([2, 2, 1], QGeometry((1,), 2)) == xq(0, 1)
    assert cqp([1, 1], G22) == xq(0, 0)
    assert cqp([1], G22).is_zero()
    with pytest.raises(ValueError):
        cqp([3], G22)


def test_cqp_symmetric():
    rng = random.Random(1)
    js = [rng.randint(0, 2) for _ in range(9)]
    ref = cqp(js, G22)
    for _ in range(200):
        rng.shuffle(js)
        assert cqp(js, G22) == ref


def test_pairing_matrix():
    M = pairing_matrix(G22, 2, CUT)
    for a in range(3):
        for b in range(3):
            assert M[a][b] == (xq(0) if a + b == 2 else FrobeniusElement({}, CUT))
    n = 3
    M = pairing_matrix(QGeometry((1,), n), 10, (3,))
    for d in range(3):
        s = (n + 1) * (d + 1) - 1
        assert M[s // 2][s - s // 2] == xq(0, d, cut=(3,))


def test_kernel_witness_examples():
    p = xq(1) - xq(3)
    j = kernel_witness_check(G22, p)
    assert not eta(p * FrobeniusElement.x_power(j, CUT), G22).is_zero()
    for d in range(4):
        assert kernel_witness_check(G22, xq(n_knd(2, 2, d))) == 0
    p = xq(5, 2) + xq(30, 0) - xq(1, 1)
    j = kernel_witness_check(G22, p)
    big = (20,)
    assert not eta(p.with_cutoff(big) * FrobeniusElement.x_power(j, big), G22).is_zero()


def test_kernel_witness_errors():
    with pytest.raises(ValueError):
        kernel_witness_check(G22, FrobeniusElement({}, CUT))
    with pytest.raises(ValueError):
        kernel_witness_check(QGeometry((1,), 2), xq(1))


def test_quotient_relation_k1():
    for n in range(1, 4):
        for j in range(51):
            assert quotient_relation(n, j, 60).is_zero()


def test_rational_coefficients():
    a = FrobeniusElement({(2, (0,)): Fraction(1, 2)}, CUT)
    assert eta(a * 2, G22) == xq(0)
    assert a.to_json()["terms"] == {"x^2 q^0": "1/2"}


def test_truncation():
    a = xq(0, 3) * xq(0, 2)
    assert a.is_zero()
    with pytest.raises(ValueError):
        FrobeniusElement({(0, (0, 0)): 1}, CUT)


def test_kernel_witness_search_exhausted():
    # n(0) = 2 is below the x-degree 100, so degree 0 alone is never admissible
    with pytest.raises(KernelWitnessError):
        kernel_witness_check(G22, xq(100), max_degree=0)
