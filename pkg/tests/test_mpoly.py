from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qkz.mpoly import FRACTION_DOMAIN, LAURENT_DOMAIN, MPoly, RATIONAL_DOMAIN
from qkz.qarith import LaurentQ, q_int


def gens3():
    return MPoly.gens(3, LAURENT_DOMAIN)


def test_basic_ring_ops():
    x, y, z = gens3()
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p - p == MPoly.zero(3, LAURENT_DOMAIN)
    assert (x + 1) ** 2 == x * x + 2 * x + 1


def test_laurent_exponents_allowed():
    x, y, _ = gens3()
    inv = MPoly.monomial(3, LAURENT_DOMAIN, (-1, 0, 0))
    assert x * inv == MPoly.const(3, LAURENT_DOMAIN, 1)
    p = x * y + inv
    assert p.min_exponents() == (-1, 0, 0)


def test_scale_by_laurent_coeff():
    x, _, _ = gens3()
    p = x.scale(q_int(2))
    assert p.coeff((1, 0, 0)) == q_int(2)


def test_exact_div_binomial():
    x, y, z = gens3()
    p = (x - y) * (y - z) * (x + y + z)
    q = p.exact_div_binomial((1, 0, 0), 1, (0, 1, 0), -1)
    assert q == (y - z) * (x + y + z)
    with pytest.raises(ValueError):
        (x * x + y).exact_div_binomial((1, 0, 0), 1, (0, 1, 0), -1)


def test_exact_div_binomial_with_q_coeff():
    x, y, _ = gens3()
    b = x - y.scale(LaurentQ.q_power(2))
    p = b * b * (x + y)
    q = p.exact_div_binomial((1, 0, 0), 1, (0, 1, 0), -LaurentQ.q_power(2))
    assert q == b * (x + y)


def test_divide_exact_general():
    x, y, z = gens3()
    a = x * x + y * z + 3
    b = x * y + z
    assert (a * b).divide_exact(b) == a


def test_subst_monomial_swap_and_scale():
    x, y, z = gens3()
    p = x * y**2 + z
    # swap x and y, scale z by q^2
    out = p.subst_monomial(
        [(1, (0, 1, 0)), (1, (1, 0, 0)), (LaurentQ.q_power(2), (0, 0, 1))]
    )
    assert out == y * x**2 + z.scale(LaurentQ.q_power(2))


def test_subst_monomial_collapse_to_constant():
    x, y, _ = gens3()
    p = x * y - y * y
    out = p.subst_monomial([(2, (0, 0, 0)), (2, (0, 0, 0)), (1, (0, 0, 1))])
    assert out == MPoly.zero(3, LAURENT_DOMAIN)


def test_permute_vars():
    x, y, z = gens3()
    p = x**2 * y
    assert p.permute_vars([2, 0, 1]) == z**2 * x


def test_homogeneity_and_degrees():
    x, y, z = gens3()
    p = x * y + z * z
    assert p.is_homogeneous() and p.total_degree() == 2
    assert not (p + x).is_homogeneous()


def test_eval_complex():
    x, y, _ = gens3()
    p = x * y.scale(q_int(2))
    val = p.eval_complex([2.0, 3.0, 1.0], lambda c: c.eval_complex(0.5))
    assert abs(val - 6.0 * (0.5 + 2.0)) < 1e-12


def test_json_roundtrip_laurent():
    x, y, z = gens3()
    p = x * y.scale(q_int(3)) - z.scale(Fraction(1, 2))
    data = p.to_json()
    assert MPoly.from_json(3, LAURENT_DOMAIN, data) == p


def test_json_roundtrip_fraction():
    x, y = MPoly.gens(2, FRACTION_DOMAIN)
    p = x * y.scale(Fraction(3, 7)) + 2
    assert MPoly.from_json(2, FRACTION_DOMAIN, p.to_json()) == p


small_polys = st.lists(
    st.tuples(
        st.tuples(
            st.integers(min_value=-3, max_value=3),
            st.integers(min_value=-3, max_value=3),
        ),
        st.integers(min_value=-4, max_value=4),
    ),
    max_size=5,
).map(
    lambda ts: sum(
        (
            MPoly.monomial(2, FRACTION_DOMAIN, e, Fraction(c))
            for e, c in ts
            if c
        ),
        MPoly.zero(2, FRACTION_DOMAIN),
    )
)


@settings(max_examples=80, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_mpoly_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(small_polys)
def test_mpoly_binomial_roundtrip(p):
    x, y = MPoly.gens(2, FRACTION_DOMAIN)
    b = x - y
    assert (p * b).exact_div_binomial((1, 0), 1, (0, 1), -1) == p
