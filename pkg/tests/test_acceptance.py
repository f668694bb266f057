"""Acceptance criteria, all exact.  Each test is timed against its budget.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary lists
one PASS/FAIL line per criterion.
"""

import random
import time
from contextlib import contextmanager
from math import comb

import pytest

from loopkt import chern
from loopkt import divided_powers as dp
from loopkt import quotient_rings as qr
from loopkt import series as ser
from loopkt import tower as tw
from loopkt.coefficients import B, B_INV, Poly
from loopkt.sampling import random_multi, random_symvec

V = Poly.gen("v")
T = Poly.gen("t")


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def expected_band(r, band):
    rows, cols = 2 * r - 1, 2 * r + 1
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for offset, value in enumerate(band):
            out[i][i + offset] = value
    return out


def as_lists(mat):
    return [list(row) for row in mat.entries]


@pytest.mark.criterion(1, "i* matrix fidelity (K-theory), r = 1..5")
def test_c01_istar_k_matrix():
    tw.istar_matrix.cache_clear()
    with budget(1.0):
        for r in range(1, 6):
            mat = tw.istar_matrix(r, "K")
            assert as_lists(mat) == expected_band(r, (1, V, 1))
            assert tw.istar_matrix_by_substitution(r, "K") == mat


@pytest.mark.criterion(2, "i* matrix fidelity (cohomology), t = 0 truncation")
def test_c02_istar_h_matrix():
    with budget(1.0):
        for r in range(1, 6):
            mat = tw.istar_matrix(r, "H")
            assert as_lists(mat) == expected_band(r, (1, 0, -T))
            assert tw.istar_matrix_by_substitution(r, "H") == mat
            at_zero = mat.specialize(lambda c: c(0))
            assert at_zero == expected_band(r, (1, 0, 0))


@pytest.mark.criterion(3, "symmetric kernel free of rank 2 with canonical basis")
def test_c03_kernel_structure():
    tw.kernel_basis.cache_clear()
    rng = random.Random(3)
    with budget(2.0):
        for r in range(1, 5):
            n = 2 * r
            for theory in ("K", "H"):
                kb = tw.kernel_basis(r, theory)
                assert not tw.apply_istar(kb.k1) and not tw.apply_istar(kb.k2)
                assert (kb.k1.coeffs[n - 1], kb.k1.coeffs[n]) == (1, 0)
                assert (kb.k2.coeffs[n - 1], kb.k2.coeffs[n]) == (0, -1)
                ring = tw.level_ring(r, theory)
                for _ in range(20):
                    u = random_symvec(ring, rng)
                    k = u - tw.section_lift(tw.apply_istar(u))
                    assert not tw.apply_istar(k)
                    a, c = kb.coordinates(k)
                    assert kb.k1.scale(a) + kb.k2.scale(c) == k
            hb = tw.kernel_basis(r, "H")
            assert tw.is_homogeneous(hb.k1, 2 * (2 * r - 1))
            assert tw.is_homogeneous(hb.k2, 4 * r)


@pytest.mark.criterion(4, "series identities")
def test_c04_series_identities():
    ser.series_g.cache_clear()
    with budget(1.0):
        D = 16
        t = ser.TruncSeries.gen(D)
        p, q = ser.series_p(D), ser.series_q(D)
        assert q * q - t * p * p == 1

        D = 12
        t = ser.TruncSeries.gen(D)
        for r in range(1, 5):
            g1, g2 = (g.scale_argument(4) for g in ser.series_g(r, D))
            assert g1 * g1 - 4 * t * g2 * g2 == ser.series_p(D) ** (2 * (2 * r - 1))

            g1, g2 = ser.series_g(r, 12)
            recon = g1.substitute_power(2, 25, "y") + g2.substitute_power(2, 25, "y").shift(1)
            assert recon == ser.series_G(r, 25)


@pytest.mark.criterion(5, "Chern character is a ring homomorphism")
def test_c05_ch_homomorphism():
    rng = random.Random(5)
    D = 8
    with budget(5.0):
        for pair in range(100):
            ring = qr.k_t(1 + pair % 4)
            u, w = random_multi(ring, rng, terms=3), random_multi(ring, rng, terms=3)
            assert chern.ch_element(u * w, D) == chern.ch_element(u, D) * chern.ch_element(w, D)
        for n in range(1, 5):
            ring = qr.k_t(n)
            for j in range(1, n + 1):
                L = qr.MultiElt.generator(ring, j)
                chL = chern.ch_element(L, D)
                v = qr.MultiElt.const(ring, B + B_INV)
                relation = chL * chL - chern.ch_element(v, D) * chL + 1
                assert not relation


@pytest.mark.criterion(6, "naturality: ch after i* equals i*_H after ch")
def test_c06_naturality():
    D = 10
    with budget(2.0):
        for r in range(1, 4):
            ring = qr.k_t(2 * r)
            for j in range(2 * r + 1):
                s = qr.elementary_symmetric(ring, j)
                left = chern.ch_element(tw.istar_on_generators(s), D)
                right = tw.istar_h_on_generators(chern.ch_element(s, D))
                assert left == right, (r, j)


@pytest.mark.criterion(7, "Thom-side lemmas")
def test_c07_thom_lemmas():
    with budget(3.0):
        for r in range(1, 4):
            top = 2 * r - 1
            assert chern.chern_class_beta(r, top) == {(0, top): 1}
            for k in range(1, 2 * r + 1):
                step = chern.bipoly_mul({(0, 1): 1, (1, 0): 2}, chern.chern_class_beta(r, k - 1))
                extra = {(k, 0): comb(top, k) * (-2) ** k} if comb(top, k) else {}
                assert chern.bipoly_add(step, extra) == chern.chern_class_beta(r, k)
            assert chern.verify_barU_todd(r, 12)
        for r in range(1, 5):
            assert chern.compute_ch_U(r, 12) == chern.ch_U_closed_form(r, 12)


@pytest.mark.criterion(8, "matrix chain M, N, ch(Q)")
def test_c08_matrix_chain():
    chern.compute_M.cache_clear()
    chern.compute_N.cache_clear()
    D = 12
    with budget(5.0):
        p, q = ser.series_p(D), ser.series_q(D)
        for r in range(1, 4):
            M, N = chern.compute_M(r, D), chern.compute_N(r, D)
            assert N.is_upper_triangular()
            assert (N.a, N.d) == (p ** (2 * r - 1), p ** (2 * r))
            assert M.det() == p ** (4 * r - 1)
            assert N.det() == p ** (4 * r - 1)
            chq = chern.compute_chQ(r, D)
            assert N * chq == M
            assert chq.det() == 1
        N1 = chern.compute_N(1, D)
        assert (N1.a, N1.b, N1.c, N1.d) == (p, -p * q, 0 * p, p * p)


@pytest.mark.criterion(9, "divided-power bridge")
def test_c09_divided_powers():
    with budget(2.0):
        for k in range(7):
            ring = qr.exterior(k)
            for i in range(k + 1):
                for j in range(k + 1 - i):
                    gi, gj = dp.GammaElt.basis(i), dp.GammaElt.basis(j)
                    assert gi * gj == dp.GammaElt({i + j: comb(i + j, i)})
                    lhs = qr.elementary_symmetric(ring, i) * qr.elementary_symmetric(ring, j)
                    rhs = qr.elementary_symmetric(ring, i + j).scale(comb(i + j, i))
                    assert lhs == rhs
                    assert dp.gamma_to_symmetric(gi * gj, k).expand() == lhs
        basis = [dp.GammaElt.basis(i) for i in range(9)]
        for a in basis:
            for b in basis:
                assert a * b == b * a
                for c in basis:
                    assert (a * b) * c == a * (b * c)


@pytest.mark.criterion(10, "tower and inverse-limit behavior")
def test_c10_tower():
    rng = random.Random(10)
    with budget(5.0):
        for r in range(1, 6):
            for theory in ("K", "H"):
                ring = tw.level_ring(r - 1, theory)
                for _ in range(10):
                    u = random_symvec(ring, rng)
                    assert tw.apply_istar(tw.section_lift(u)) == u
        for _ in range(100):
            a, b = tw.random_tower(4, rng), tw.random_tower(4, rng)
            assert tw.tower_check(tw.tower_mul(a, b))
        for theory in ("K", "H"):
            unit = tw.unit_tower(4, theory)
            for _ in range(10):
                T = tw.random_tower(4, rng, theory)
                assert tw.tower_mul(unit, T) == T
                assert tw.tower_mul(T, unit) == T


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
