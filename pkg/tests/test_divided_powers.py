import random
from math import comb

import pytest

from loopkt import divided_powers as dp
from loopkt import quotient_rings as qr
from loopkt import tower as tw
from loopkt.errors import IncompatibleTower

g = dp.GammaElt.basis


def test_products():
    assert g(1) * g(1) == dp.GammaElt({2: 2})
    assert g(0) * g(4) == g(4)
    assert g(2) * g(3) == dp.GammaElt({5: 10})


def test_rendering():
    assert str(dp.GammaElt({2: 3, 0: 1})) == "3*g2 + g0"


def test_truncation_images():
    ring = qr.exterior(3)
    assert dp.gamma_to_symmetric(g(1), 3).expand() == sum(
        (qr.MultiElt.generator(ring, j) for j in range(1, 4)), qr.MultiElt.const(ring, 0)
    )
    assert not dp.gamma_to_symmetric(g(3), 2).expand()


@pytest.mark.parametrize("k", range(7))
def test_truncation_is_ring_map(k):
    for i in range(k + 2):
        for j in range(k + 2):
            lhs = dp.gamma_to_symmetric(g(i), k).expand() * dp.gamma_to_symmetric(g(j), k).expand()
            assert dp.gamma_to_symmetric(g(i) * g(j), k).expand() == lhs


def test_trunc_gamma_product():
    a, b = g(1).truncate(3), g(2).truncate(3)
    assert a * b == dp.TruncGamma(3, (0, 0, 0, 3))
    assert (a * a) * a == dp.TruncGamma(3, (0, 0, 0, 6))


def test_specialized_matrices():
    assert dp.specialized_istar_matrix(2, "K") == [[1, 2, 1, 0, 0], [0, 1, 2, 1, 0], [0, 0, 1, 2, 1]]
    assert dp.specialized_istar_matrix(2, "H") == [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]]


@pytest.mark.parametrize("theory", ["K", "H"])
def test_specialize_tower(theory):
    unit = dp.specialize_tower(tw.unit_tower(3, theory))
    assert all(level.coeffs[0] == 1 and not any(level.coeffs[1:]) for level in unit)
    rng = random.Random(theory)
    spec = dp.specialize_tower(tw.random_tower(3, rng, theory))
    for r in range(1, 4):
        assert dp.apply_specialized_istar(spec[r], theory) == spec[r - 1]


def test_specialize_rejects_incompatible():
    bad = tw.TowerElt((qr.SymVec.basis(tw.level_ring(0), 0), qr.SymVec.basis(tw.level_ring(1), 1)))
    with pytest.raises(IncompatibleTower):
        dp.specialize_tower(bad)


def test_binomial_rule_exhaustive():
    for i in range(10):
        for j in range(10):
            assert dp.gamma_mul(g(i), g(j)) == dp.GammaElt({i + j: comb(i + j, i)})
