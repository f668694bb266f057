import pytest
from hypothesis import given, strategies as st

from loopkt.coefficients import B, B_INV, V, LaurentElt, Poly, augment, invariants_to_g, restrict, weyl
from loopkt.errors import NotInvariant

laurents = st.dictionaries(st.integers(-5, 5), st.integers(-9, 9), max_size=5).map(LaurentElt)
polys = st.lists(st.integers(-9, 9), max_size=6).map(lambda cs: Poly(cs, "v"))


@pytest.mark.parametrize(
    "a, expected",
    [(B, B_INV), (3 + B**2, 3 + B_INV**2), (B + B_INV, B + B_INV)],
)
def test_weyl_examples(a, expected):
    assert weyl(a) == expected


def test_restrict_examples():
    assert restrict(V) == B + B_INV
    assert restrict(V**2) == B**2 + 2 + B_INV**2
    assert restrict(Poly.const(1)) == 1


def test_invariants_to_g_examples():
    assert invariants_to_g(B + B_INV) == V
    assert invariants_to_g(B**2 + B_INV**2) == V**2 - 2
    with pytest.raises(NotInvariant):
        invariants_to_g(B)


def test_augment_examples():
    assert augment(B + B_INV) == 2
    assert augment(LaurentElt.const(1)) == 1
    assert augment(3 * B**2 - B) == 2


def test_rendering():
    assert str(B_INV**2) == "b^-2"
    assert str(V**3) == "v^3"
    assert str(B - 2 + B_INV) == "b - 2 + b^-1"
    assert str(LaurentElt({})) == "0"


@given(laurents, laurents)
def test_weyl_is_ring_involution(x, y):
    assert weyl(weyl(x)) == x
    assert weyl(x * y) == weyl(x) * weyl(y)
    assert weyl(x + y) == weyl(x) + weyl(y)


@given(polys, polys)
def test_restrict_is_injective_homomorphism(p, q):
    assert restrict(p * q) == restrict(p) * restrict(q)
    assert invariants_to_g(restrict(p)) == p


@given(polys)
def test_augment_is_evaluation_at_two(p):
    assert augment(restrict(p)) == p(2)


@given(laurents)
def test_symmetrization_is_invariant(x):
    sym = x + weyl(x)
    assert restrict(invariants_to_g(sym)) == sym


def test_negative_powers():
    assert B**-3 == B_INV**3
    assert (B**2) * (B**-2) == 1
