import pytest
from hypothesis import given, strategies as st

from qwreath import base_alg as ba
from qwreath.coeff import ONE, Q, Scalar, V

FINITE = {
    "KC3": lambda: ba.group_algebra_cyclic(3),
    "cyclotomic2": lambda: ba.cyclotomic_quotient(["q1", "q2"]),
    "cyclotomic3": lambda: ba.cyclotomic_quotient(["q1", "q2", "q3"]),
    "H(S3)": lambda: ba.hecke_symmetric(3, V ** 2),
}


@pytest.mark.parametrize("name", sorted(FINITE))
def test_finite_axioms(name):
    assert FINITE[name]().check_axioms() == []


@pytest.mark.parametrize("make", [lambda: ba.laurent_ring(6), lambda: ba.poly_ring(6)])
def test_windowed_axioms(make):
    assert make().check_axioms(3) == []


def test_cyclotomic_relation():
    B = ba.cyclotomic_quotient(["q1", "q2"])
    q1, q2 = Scalar.var("q1"), Scalar.var("q2")
    # (X - q1)(X - q2) = 0
    x = {1: ONE}
    lhs = B.mul(x, x)
    assert lhs == {1: q1 + q2, 0: -q1 * q2}


def test_cyclic_group_relation():
    B = ba.group_algebra_cyclic(2)
    assert B.mul({1: ONE}, {1: ONE}) == {0: ONE}
    assert B.counit({1: ONE}) == ONE
    assert B.trace({1: ONE}) == Scalar(0)


def test_truncation_overflow():
    B = ba.poly_ring(3)
    with pytest.raises(ba.TruncationOverflow):
        B.mul({3: ONE}, {1: ONE})


def test_laurent_inverse():
    B = ba.laurent_ring(4)
    assert B.mul({2: ONE}, {-2: ONE}) == {0: ONE}


def test_demazure_operator():
    # (X^a ⊗ X^b - X^b ⊗ X^a) / (X ⊗ 1 - 1 ⊗ X)
    assert ba.demazure(1, 0) == {(0, 0): ONE}
    assert ba.demazure(0, 0) == {}


def test_symmetric_algebra_gram():
    assert ba.group_algebra_cyclic(3).gram_determinant_nonzero()
    assert ba.hecke_symmetric(2, V ** 2).gram_determinant_nonzero()


def test_parse_names():
    B = ba.laurent_ring(4)
    assert B.name_of(B.parse_name("X^-2")) == "X^-2"


def test_make_instance_dispatch():
    assert ba.make_instance("group_algebra_cyclic", m=4).dim == 4
    with pytest.raises(ValueError):
        ba.make_instance("nope")


elem = st.dictionaries(st.integers(0, 2), st.integers(-3, 3).map(Scalar), max_size=3)


@given(elem, elem, elem)
def test_cyclotomic3_associative_on_elements(x, y, z):
    B = FINITE["cyclotomic3"]()
    assert B.mul(B.mul(x, y), z) == B.mul(x, B.mul(y, z))


@given(st.lists(st.integers(0, 5), min_size=2, max_size=2), st.lists(st.integers(0, 5), min_size=2, max_size=2))
def test_tensor_mul_is_slotwise(a, b):
    B = ba.hecke_symmetric(3, Q)
    x = {tuple(a): ONE}
    y = {tuple(b): ONE}
    got = B.tensor_mul(x, y)
    want = {}
    for i, ci in B.mul({a[0]: ONE}, {b[0]: ONE}).items():
        for j, cj in B.mul({a[1]: ONE}, {b[1]: ONE}).items():
            want[(i, j)] = ci * cj
    assert got == {k: c for k, c in want.items() if c}
