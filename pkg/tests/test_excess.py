from math import comb

import pytest

from qmcount.cohomology import MissingImageError, NotAUnitError, TruncatedRing
from qmcount.excess import (NON_QUASISTABLE, Stratum, build_ledger, excess_chern, point_stratum,
                            pqm_contribution, product_ring, product_stratum, projective_stratum)
from qmcount.fixtures import fixture_names, fixture_problem
from qmcount.quasimap import CountingData, CyclePair


def problem(k, n, d, *pairs):
    return CountingData(k, n, d, tuple(CyclePair(a, b) for a, b in pairs))


def lines_family(N):
    return problem(1, N, 1, (0, 1), (0, 1), (0, N), (1, N))


@pytest.mark.parametrize("N", range(3, 11))
def test_lines_family_stratum(N):
    D = lines_family(N)
    Z = projective_stratum(N - 2)
    c = excess_chern(D, Z)
    assert c.coefficient((N - 2,)) == N - 1
    assert pqm_contribution(D, Z) == N - 1


def test_conic_stratum_chern_class():
    D = problem(1, 2, 2, (0, 2), (0, 2), (0, 2), (1, 2), (1, 2))
    Z = projective_stratum(1)
    z = Z.intrinsic_ring.gen("z")
    assert excess_chern(D, Z) == 1 + 3 * z
    L = build_ledger(D, 1, [point_stratum()] * 6 + [Z] * 3, quasi_stable=True)
    assert L.pqm == 15 and L.residual == 0


def test_scar_stratum_on_planes():
    D = problem(2, 3, 1, (0, 3), (0, 3), (0, 2), (1, 3), (1, 2))
    Z = projective_stratum(1)
    assert excess_chern(D, Z) == 1 + 3 * Z.intrinsic_ring.gen("z")


def test_point_stratum_is_unit():
    for D in (lines_family(4), problem(2, 3, 1, (0, 3), (0, 3), (0, 2), (1, 3), (1, 2))):
        assert excess_chern(D, point_stratum()) == 1
        assert pqm_contribution(D, point_stratum()) == 1


def test_relabel_invariance():
    D = lines_family(6)
    Z = projective_stratum(4, label="a")
    assert pqm_contribution(D, Z) == pqm_contribution(D, Z.relabel("b"))


def test_running_point_images():
    D = problem(1, 3, 1, (0, 1), (0, 1), (0, 1), (1, 3), (1, 3))
    Zr = projective_stratum(1, h={4: "z", 5: "z"})
    assert pqm_contribution(D, Zr) == 5


def test_missing_restriction():
    D = lines_family(4)
    R = TruncatedRing([("z", 2)])
    Z = Stratum("bare", R, {"H": R.gen("z")}, (1 + R.gen("z")) ** 3)
    with pytest.raises(MissingImageError):
        excess_chern(D, Z)


def test_non_unit_denominator():
    D = lines_family(4)
    R = TruncatedRing([("z", 2)])
    z = R.gen("z")
    Z = Stratum("bad", R, {"H": 1 + z, "h4": R.zero()}, (1 + z) ** 3)
    with pytest.raises(NotAUnitError):
        excess_chern(D, Z)


def test_stratum_validation():
    R = TruncatedRing([("z", 1)])
    with pytest.raises(ValueError):
        Stratum("x", R, {}, 2 + R.gen("z"))
    other = TruncatedRing([("w", 1)])
    with pytest.raises(ValueError):
        Stratum("x", R, {"H": other.gen("w")}, R.one())


def test_product_stratum():
    # Z = P^1 x P^1 with H restricting to the sum of both classes
    D = lines_family(3)
    R = product_ring(1, 1)
    Z = product_stratum(1, 1, H=R.gen("z1") + R.gen("z2"))
    assert Z.dim == 2
    c = excess_chern(D, Z)
    assert c.ring == R


def ledger(name):
    p = fixture_problem(name)
    return build_ledger(p.data, p.km, p.strata, p.quasi_stable)


def test_ledger_examples():
    L = ledger("lines_p2_three_freckles")
    assert (L.qm, L.km, L.residual) == (4, 1, 0)
    L = ledger("lines_p3_colliding_running_points")
    assert L.status == NON_QUASISTABLE and (L.naive_sum, L.residual) == (14, 8) and L.pqm is None
    L = ledger("conics_p2_three_running_points")
    assert L.status == NON_QUASISTABLE and (L.qm, L.naive_sum, L.residual) == (64, 58, 62)
    L = ledger("planes_p3_points_on_lines_c")
    assert L.km is None and L.residual is None and L.km_recovered == 1


def test_quasi_stable_fixtures_balance():
    for name in fixture_names():
        p = fixture_problem(name)
        if p.quasi_stable and p.km is not None:
            assert build_ledger(p.data, p.km, p.strata, True).residual == 0, name


def test_single_class_strata_match_binomial_oracle():
    """With H -> z, all h -> 0 and c(Z) = (1+z)^{m+1}, the contribution is C(T - N + m, m)."""
    checked = 0
    for name in fixture_names():
        p = fixture_problem(name)
        T, N = sum(c.target_codim for c in p.data.cycles), p.data.space_dim
        for Z in p.strata:
            if Z.intrinsic_ring.rank == 1 and set(Z.restriction) == {"H"}:
                m = Z.dim
                assert pqm_contribution(p.data, Z) == comb(T - N + m, m), (name, Z.label)
                checked += 1
    assert checked > 10
