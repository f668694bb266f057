import pytest
from hypothesis import given, strategies as st

from loopkt.coefficients import Rational
from loopkt.errors import NonUnitConstantTerm, NonzeroConstantTerm, RingMismatch
from loopkt.series import (
    TruncSeries,
    series_G,
    series_g,
    series_p,
    series_q,
    series_todd,
)


def test_p_and_q_coefficients():
    p, q = series_p(4), series_q(4)
    assert [p[k] for k in range(3)] == [1, Rational(1, 6), Rational(1, 120)]
    assert [q[k] for k in range(3)] == [1, Rational(1, 2), Rational(1, 24)]


def test_todd_coefficients():
    td = series_todd(4)
    assert [td[k] for k in range(3)] == [1, Rational(1, 2), Rational(1, 12)]


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_g_constant_terms(r):
    g1, g2 = series_g(r, 6)
    assert g1[0] == 1
    assert g2[0] == Rational(2 * r - 1, 2)


def test_geometric_series():
    t = TruncSeries.gen(6)
    assert (1 - t).invert() == TruncSeries([1] * 7, 6)


def test_scale_argument():
    assert series_p(5).scale_argument(4)[1] == Rational(2, 3)


def test_errors():
    t = TruncSeries.gen(4)
    with pytest.raises(NonUnitConstantTerm):
        t.invert()
    with pytest.raises(NonzeroConstantTerm):
        (1 + t).exp()
    with pytest.raises(NonzeroConstantTerm):
        t.compose(1 + t)
    with pytest.raises(RingMismatch):
        _ = TruncSeries.gen(3) + TruncSeries.gen(4)


def test_rendering():
    assert str(series_p(2)) == "1 + 1/6*t + 1/120*t^2 + O(t^3)"
    assert str(TruncSeries.const(0, 0)) == "O(t)"


@pytest.mark.parametrize("D", [0, 1, 5, 16])
def test_pythagorean_identity(D):
    t = TruncSeries.gen(D)
    assert series_q(D) ** 2 - t * series_p(D) ** 2 == 1


@pytest.mark.parametrize("r", [1, 2, 3])
def test_reconstruction_of_G(r):
    g1, g2 = series_g(r, 8)
    recon = g1.substitute_power(2, 17, "y") + g2.substitute_power(2, 17, "y").shift(1)
    assert recon == series_G(r, 17)


coeff_lists = st.lists(st.integers(-5, 5).map(Rational), min_size=7, max_size=7)


@given(coeff_lists, coeff_lists)
def test_multiplication_commutes_and_inverts(a, b):
    x, y = TruncSeries(a, 6), TruncSeries(b, 6)
    assert x * y == y * x
    if x[0]:
        assert x * x.invert() == 1
        assert (y / x) * x == y


@given(coeff_lists)
def test_exp_of_sum(a):
    a[0] = 0
    x = TruncSeries(a, 6)
    assert (x + x).exp() == x.exp() * x.exp()


def test_even_odd_split():
    s = TruncSeries(list(range(1, 8)), 6, "y")
    assert s.even_part().substitute_power(2, 6, "y") + s.odd_part().substitute_power(2, 6, "y").shift(1) == s
