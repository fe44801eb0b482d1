import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from k3moduli.errors import DomainError
from k3moduli.lattice_core import discriminant_group, pair, signature
from k3moduli.mukai import (
    MukaiAmbient,
    MukaiVector,
    algebraic_vperp,
    dual_twist,
    mukai_pairing,
    sheaf_mukai_vector,
    square_report,
    times_sqrt_td,
    vperp,
)

small = st.integers(-20, 20)


def test_pairing_examples():
    assert MukaiVector(0, 1, 0, 1).square == 2
    for d in (1, 2, 5):
        assert mukai_pairing(MukaiVector(1, 0, 0, d), MukaiVector(0, 0, 1, d)) == -1
    assert MukaiVector(0, 3, 1, 2).square == 36


def test_pairing_needs_same_surface():
    with pytest.raises(DomainError):
        mukai_pairing(MukaiVector(0, 1, 0, 1), MukaiVector(0, 1, 0, 2))


@pytest.mark.parametrize("m, chi, d, square", [(1, 0, 1, 2), (2, 0, 1, 8), (1, -3, 2, 4)])
def test_sheaf_vectors(m, chi, d, square):
    v = sheaf_mukai_vector(m, chi, d)
    assert v.triple == (0, m, chi)
    assert square_report(v).square == square


def test_sheaf_vector_divisibility():
    with pytest.raises(DomainError):
        sheaf_mukai_vector(2, 1, 1)


def test_twists():
    assert dual_twist(MukaiVector(-1, 0, 0)).triple == (-1, 0, 0)
    assert times_sqrt_td(dual_twist(MukaiVector(-1, 0, 0))).triple == (-1, 0, -1)
    assert times_sqrt_td(dual_twist(MukaiVector(0, 0, 1))).triple == (0, 0, 1)
    assert dual_twist(MukaiVector(2, 3, 5)).triple == (2, -3, 5)


@given(small, small, small, small, small, small, st.integers(1, 6))
def test_embedding_is_isometric(r, c, s, r2, c2, s2, d):
    amb = MukaiAmbient.of(d)
    v, u = MukaiVector(r, c, s, d), MukaiVector(r2, c2, s2, d)
    assert pair(amb.full, amb.embed(v), amb.embed(u)) == mukai_pairing(v, u)
    assert pair(amb.alg, v.triple, u.triple) == mukai_pairing(v, u)


def test_embedding_random_triples():
    rng = random.Random(0)
    for _ in range(100):
        d = rng.randint(1, 6)
        amb = MukaiAmbient.of(d)
        v = MukaiVector(*(rng.randint(-50, 50) for _ in range(3)), d)
        assert pair(amb.full, amb.embed(v), amb.embed(v)) == v.square == 2 * d * v.c**2 - 2 * v.r * v.s


@pytest.mark.parametrize("k", range(1, 7))
def test_vperp_shape(k):
    P = vperp(MukaiVector(0, 1, 0, k))
    L = P.lattice
    assert (L.rank, abs(L.det), signature(L)) == (23, 2 * k, (3, 20))
    assert L.is_even
    assert discriminant_group(L).orders == (2 * k,)


def test_vperp_other_primitive_vectors():
    for w in (MukaiVector(1, 1, 0, 1), MukaiVector(1, 0, -1, 1), MukaiVector(0, 1, 3, 2)):
        L = vperp(w).lattice
        assert abs(L.det) == w.square
        assert discriminant_group(L).orders == (w.square,)


def test_vperp_is_independent_of_m():
    w = MukaiVector(0, 1, 0, 2)
    for m in (2, 3):
        mult, prim = (m * w).primitive_part()
        assert mult == m
        assert vperp(prim).lattice.gram == vperp(w).lattice.gram


def test_vperp_canonical_generator():
    for k in range(1, 5):
        L = vperp(MukaiVector(0, 1, 0, k)).lattice
        grp = discriminant_group(L)
        assert grp.qform((1,)) == Fraction(-1, 2 * k) % 2


def test_vperp_rejects_negative_square():
    with pytest.raises(DomainError):
        vperp(MukaiVector(1, 0, 1))


def test_vperp_rejects_non_primitive():
    with pytest.raises(DomainError):
        vperp(MukaiVector(0, 2, 0))


def test_coords_round_trip():
    P = vperp(MukaiVector(0, 1, 0, 3))
    for x in (MukaiVector(0, 0, 1, 3), MukaiVector(-1, 0, 0, 3)):
        c = P.coords(x)
        assert pair(P.lattice, c, c) == x.square


def test_algebraic_vperp():
    for d, s in [(1, 0), (2, 2), (3, -4)]:
        v = MukaiVector(0, 1, s, d)
        basis = algebraic_vperp(v)
        assert len(basis) == 2
        assert all(mukai_pairing(MukaiVector(*b, d), v) == 0 for b in basis)


def test_validity():
    assert MukaiVector(0, 1, 0).is_valid
    assert not MukaiVector(0, -1, 0).is_valid
    assert not MukaiVector(-1, 0, 0).is_valid
    with pytest.raises(DomainError):
        MukaiVector(0, 0, -1).validated()
    with pytest.raises(DomainError):
        MukaiVector(0, 1, 0, 0)
