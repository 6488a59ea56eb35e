import itertools

import pytest
from hypothesis import given, strategies as st

from fqrecip import element_order, eta_of, field_arith, make_field_spec, unity_dlog
from fqrecip.errors import (
    DivisionByZero,
    DNotDividing,
    InvalidGenerator,
    MissingModulus,
    NotOddPrime,
    NotRootOfUnity,
    ReducibleModulus,
    SpecMismatch,
    ZeroElement,
)
from fqrecip.field import divisors

# (p, k, modulus) for every odd prime power up to 25
SMALL_FIELDS = [
    (3, 1, None), (5, 1, None), (7, 1, None), (3, 2, [1, 0, 1]), (11, 1, None), (13, 1, None),
    (17, 1, None), (19, 1, None), (23, 1, None), (5, 2, [2, 0, 1]),
]


def _naive_mul(a, b, modulus, p):
    """Independent F_p[x]/(modulus) product on digit tuples."""
    k = len(modulus) - 1
    prod = [0] * (2 * k)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    for top in range(2 * k - 1, k - 1, -1):
        c = prod[top] % p
        for i in range(k + 1):
            prod[top - k + i] -= c * modulus[i]
    return tuple(v % p for v in prod[:k])


def _naive_order(a, modulus, p):
    one = (1,) + (0,) * (len(modulus) - 2)
    cur, n = a, 1
    while cur != one:
        cur = _naive_mul(cur, a, modulus, p)
        n += 1
    return n


def test_f3_generator():
    F = make_field_spec(3, 1)
    assert F.q == 3
    assert F.g == 2


def test_f9_generator_is_first_lex_primitive():
    # oracle: orders of all 8 nonzero elements by repeated multiplication, in lex order
    mod = (1, 0, 1)
    lex = [d for d in itertools.product(range(3), repeat=2) if any(d)]
    orders = {d: _naive_order(d, mod, 3) for d in lex}
    first = next(d for d in lex if orders[d] == 8)
    assert first == (1, 1)  # frozen: 1 + x
    F = make_field_spec(3, 2, [1, 0, 1])
    assert F.q == 9
    assert F.g.coeffs == (1, 1)


def test_bad_specs():
    with pytest.raises(NotOddPrime):
        make_field_spec(2, 1)
    with pytest.raises(NotOddPrime):
        make_field_spec(9, 1)
    with pytest.raises(ReducibleModulus):
        make_field_spec(3, 2, [2, 0, 1])  # (x-1)(x+1)
    with pytest.raises(MissingModulus):
        make_field_spec(3, 2)
    with pytest.raises(InvalidGenerator):
        make_field_spec(5, 1, generator=4)
    assert make_field_spec(5, 1, generator=3).g == 3


def test_arith_examples(F3, F9):
    assert field_arith("add", F3(2), F3(2)) == 1
    assert field_arith("inv", F3(2)) == 2
    x = F9([0, 1])
    assert field_arith("mul", x, x) == F9(2)
    assert field_arith("neg", F3(1)) == 2
    assert field_arith("pow", F3(2), 5) == 2
    with pytest.raises(DivisionByZero):
        field_arith("div", F3(1), F3(0))
    with pytest.raises(DivisionByZero):
        F3(0).inverse()
    with pytest.raises(SpecMismatch):
        F3(1) + F9(1)


@pytest.mark.parametrize("p,k,mod", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, k, mod):
    F = make_field_spec(p, k, mod)
    els = list(F.elements())
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
        assert (a - b) + b == a
    for a, b, c in itertools.product(els, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in els:
        if a:
            assert a * a.inverse() == F.one
            assert a ** (F.q - 1) == F.one


@pytest.mark.parametrize("p,k,mod", [f for f in SMALL_FIELDS if f[1] > 1])
def test_extension_multiplication_matches_naive(p, k, mod):
    F = make_field_spec(p, k, mod)
    for a, b in itertools.product(F.elements(), repeat=2):
        assert (a * b).coeffs == _naive_mul(a.coeffs, b.coeffs, tuple(F.modulus), p)


def test_element_order_examples(F5):
    assert element_order(F5(1)) == 1
    assert element_order(F5(2)) == 4
    assert element_order(F5(4)) == 2
    with pytest.raises(ZeroElement):
        element_order(F5(0))


@pytest.mark.parametrize("p,k,mod", SMALL_FIELDS)
def test_generator_and_eta_orders(p, k, mod):
    F = make_field_spec(p, k, mod)
    if k > 1:
        assert _naive_order(F.g.coeffs, tuple(F.modulus), p) == F.q - 1
    assert element_order(F.g) == F.q - 1
    for d in divisors(F.q - 1):
        eta = eta_of(F, d)
        assert element_order(eta) == d
        for j in range(d):
            assert unity_dlog(F, eta**j, d) == j


def test_eta_examples(F3, F5):
    assert eta_of(F3, 2) == 2
    assert eta_of(F5, 1) == 1
    assert eta_of(F5, 4) == 2
    with pytest.raises(DNotDividing):
        eta_of(F5, 3)


def test_unity_dlog_examples(F3, F5):
    assert unity_dlog(F5, F5(1), 4) == 0
    assert unity_dlog(F5, F5(4), 4) == 2
    assert unity_dlog(F3, F3(2), 2) == 1
    with pytest.raises(NotRootOfUnity):
        unity_dlog(F5, F5(2), 2)


@given(st.integers(0, 24), st.integers(0, 24), st.integers(0, 200))
def test_pow_matches_repeated_product(a, b, e):
    F = make_field_spec(5, 2, [2, 0, 1])
    x = F([a % 5, a // 5])
    acc = F.one
    for _ in range(e):
        acc = acc * x
    assert x**e == acc
    y = F([b % 5, b // 5])
    if y:
        assert (x / y) * y == x


def test_large_field_without_tables():
    # q = 3^6 exercises the Zech-log path instead of the flat tables
    F = make_field_spec(3, 6, [2, 1, 0, 0, 0, 0, 1])
    assert element_order(F.g) == F.q - 1
    a, b = F([1, 2, 0, 1]), F([0, 0, 2, 2, 1])
    assert (a + b).coeffs == (1, 2, 2, 0, 1, 0)
    assert (a * b) / b == a
