import pickle
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isocharsum.errors import (
    CharTooSmall,
    DivisionByZero,
    NoEmbedding,
    NonResidue,
    NoSuchRoot,
    NotCoprime,
    NotPrime,
    ReducibleModulus,
)
from isocharsum.finite_field import (
    GF,
    canonical_modulus,
    embed,
    ff_inv,
    ff_sqrt,
    field_make,
    is_irreducible,
    min_ext_degree,
    primitive_root_of_unity,
    quadratic_character,
    restrict,
)

SMALL = [(5, 1), (7, 1), (11, 1), (5, 2), (7, 2)]


def test_prime_field():
    F = field_make(7)
    assert F.q == 7 and F.n == 1
    assert [int(a) for a in F.elements()] == list(range(7))


def test_canonical_quadratic_over_7():
    F = field_make(7, 2)
    # scan monic x^2 + b x + c in canonical order: the first with no root
    expected = None
    for b, c in product(range(7), repeat=2):
        if all((x * x + b * x + c) % 7 for x in range(7)):
            expected = (c, b, 1)
            break
    assert F.modulus == expected == (1, 0, 1)


def test_reducible_modulus():
    with pytest.raises(ReducibleModulus):
        field_make(7, 2, [-1, 0, 1])


@pytest.mark.parametrize("p, exc", [(9, NotPrime), (1, NotPrime), (3, CharTooSmall), (2, CharTooSmall)])
def test_bad_characteristic(p, exc):
    with pytest.raises(exc):
        field_make(p)


def test_fields_are_interned():
    assert field_make(7, 2) is field_make(7, 2)
    assert GF(13, 3).modulus == canonical_modulus(13, 3)
    F = GF(5, 2)
    assert pickle.loads(pickle.dumps(F)) is F


@pytest.mark.parametrize("p, n", [(5, 3), (7, 4), (11, 2), (5, 4)])
def test_canonical_modulus_irreducible(p, n):
    f = canonical_modulus(p, n)
    assert len(f) == n + 1 and f[-1] == 1
    assert is_irreducible(f, p)


def test_inverse_examples():
    F = GF(11)
    assert ff_inv(F(1)) == 1
    assert ff_inv(F(9)) == 5
    with pytest.raises(DivisionByZero):
        ff_inv(F(0))
    with pytest.raises(ZeroDivisionError):
        F(1) / F(0)


@pytest.mark.parametrize("p, n", SMALL)
def test_inverses_exhaustive(p, n):
    F = GF(p, n)
    for a in F.elements():
        if a:
            assert a * ff_inv(a) == 1


@pytest.mark.parametrize("p, n", [(5, 1), (7, 2), (11, 2), (5, 3)])
def test_quadratic_character_exhaustive(p, n):
    F = GF(p, n)
    squares = {(b * b).c for b in F.elements() if b}
    for a in F.elements():
        chi = quadratic_character(a)
        if not a:
            assert chi == 0
        else:
            assert (chi == 1) == (a.c in squares)


def test_quadratic_character_examples():
    F = GF(7)
    assert quadratic_character(F(0)) == 0
    assert quadratic_character(F(3)) == -1
    assert quadratic_character(F(2)) == 1


def test_sqrt_examples():
    F = GF(7)
    assert ff_sqrt(F(0)) == 0
    assert ff_sqrt(F(2)) == 3
    with pytest.raises(NonResidue):
        ff_sqrt(F(3))


@pytest.mark.parametrize("p, n", [(13, 1), (17, 1), (7, 2), (5, 3), (41, 1)])
def test_sqrt_is_smaller_root(p, n):
    F = GF(p, n)
    for a in F.elements():
        if quadratic_character(a) >= 0:
            r = ff_sqrt(a)
            assert r * r == a
            assert not (-r < r)


def test_min_ext_degree():
    assert min_ext_degree(11, 5) == 1
    assert min_ext_degree(7, 5) == 4
    assert min_ext_degree(7, 4) == 2
    with pytest.raises(NotCoprime):
        min_ext_degree(7, 14)


def test_primitive_roots():
    assert primitive_root_of_unity(GF(7), 2) == 6
    assert primitive_root_of_unity(GF(11), 5) == 3
    with pytest.raises(NoSuchRoot):
        primitive_root_of_unity(GF(7), 5)


@pytest.mark.parametrize("p, n, m", [(7, 4, 5), (11, 1, 10), (7, 2, 8), (13, 1, 12), (5, 2, 6)])
def test_primitive_root_is_first_of_exact_order(p, n, m):
    F = GF(p, n)
    z = primitive_root_of_unity(F, m)
    assert z**m == 1
    assert all(z**k != 1 for k in range(1, m))
    first = next(a for a in F.elements() if a and a**m == 1 and all(a**k != 1 for k in range(1, m)))
    assert z == first


def test_canonical_order_from_high_coefficient():
    F = GF(5, 2)
    elems = list(F.elements())
    assert elems[:3] == [F([0, 0]), F([1, 0]), F([2, 0])]
    assert elems[5] == F([0, 1])
    assert sorted(elems, key=lambda a: a.sort_key()) == elems


def test_embed_examples():
    F, K = GF(7), GF(7, 2)
    assert embed(F(5), K) == K(5)
    assert embed(F(0), GF(7, 4)) == 0
    g = K.gen()
    L = GF(7, 4)
    r = embed(g, L)
    # r is a root of K's modulus, and the smallest such
    c0, c1, _ = K.modulus
    assert r * r + c1 * r + c0 == 0
    roots = [a for a in L.elements() if a * a + c1 * a + c0 == 0]
    assert r == roots[0]


def test_no_embedding():
    with pytest.raises(NoEmbedding):
        embed(GF(7, 2).gen(), GF(7, 3))
    with pytest.raises(NoEmbedding):
        embed(GF(7)(1), GF(11))


@pytest.mark.parametrize("src, dst", [((7, 2), (7, 4)), ((5, 2), (5, 4)), ((5, 1), (5, 3))])
def test_embed_is_injective_homomorphism(src, dst):
    K, L = GF(*src), GF(*dst)
    images = {}
    elems = list(K.elements())
    for a in elems:
        images[a] = embed(a, L)
    assert len(set(images.values())) == len(elems)
    for a, b in zip(elems, elems[3:] + elems[:3]):
        assert embed(a + b, L) == images[a] + images[b]
        assert embed(a * b, L) == images[a] * images[b]
        assert restrict(images[a], K) == a


def test_embedded_root_keeps_order():
    z = primitive_root_of_unity(GF(7, 2), 8)
    w = embed(z, GF(7, 4))
    assert w**8 == 1 and w**4 != 1


def test_json_round_trip():
    F = GF(7, 2)
    assert F.to_json() == {"p": 7, "n": 2, "modulus": [1, 0, 1]}
    a = F([3, 5])
    assert a.to_json() == [3, 5]
    assert F.from_json(F.to_json()) is F
    assert F(a.to_json()) == a
    assert GF(7)(4).to_json() == [4]


FIELDS = st.sampled_from([(5, 1), (101, 1), (7, 2), (13, 2), (5, 3), (3001, 1)])


@st.composite
def triples(draw):
    F = GF(*draw(FIELDS))
    coeff = st.lists(st.integers(0, F.p - 1), min_size=F.n, max_size=F.n)
    return F, F(draw(coeff)), F(draw(coeff)), F(draw(coeff))


@given(triples())
def test_field_axioms(t):
    F, a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0 and a + (-a) == 0
    if b:
        assert (a / b) * b == a
    assert a ** F.q == a


@given(triples())
def test_sqrt_of_square(t):
    _, a, _, _ = t
    r = ff_sqrt(a * a)
    assert r * r == a * a
    assert r in (a, -a)
